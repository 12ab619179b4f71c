#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/evolving_graph.hpp"

namespace evg {

// One hop of a journey: an undirected edge taken at a concrete date.
struct JourneyHop {
  std::string u;
  std::string v;
  double date;
};

// A walk whose hops carry non-decreasing dates, each hop taken while its
// edge is present. The empty journey connects a node to itself.
struct Journey {
  std::vector<JourneyHop> hops;
};

// True iff `j` is a (strict) journey from `from` to `to` in `g`: the hops
// form a walk starting at `from` and ending at `to`, dates never decrease,
// and each hop's edge is present at its date. Strict journeys must advance
// the interval index on every hop. Unknown endpoints raise InputError.
bool validate_journey(const EvolvingGraph& g, const Journey& j, const std::string& from,
                      const std::string& to, bool strict);

// Directed reachability-over-time graph: arc (u,v) iff a (strict) journey
// leads from u to v. Self-arcs are implied, not stored.
class ClosureGraph {
 public:
  ClosureGraph(std::vector<std::string> nodes, bool strict)
      : nodes_(std::move(nodes)), strict_(strict) {}

  const std::vector<std::string>& nodes() const { return nodes_; }
  bool strict() const { return strict_; }

  const std::set<std::pair<NodeIndex, NodeIndex>>& arcs() const { return arcs_; }
  size_t arc_count() const { return arcs_.size(); }

  void add_arc(NodeIndex from, NodeIndex to, Journey witness);

  bool has_arc(NodeIndex from, NodeIndex to) const;  // false for self-pairs
  bool reaches(NodeIndex from, NodeIndex to) const {  // reflexive by convention
    return from == to || has_arc(from, to);
  }

  size_t out_degree(NodeIndex u) const;
  size_t in_degree(NodeIndex u) const;
  bool is_complete() const {
    size_t n = nodes_.size();
    return arcs_.size() == n * (n - 1);
  }

  // Witness journey recorded for an arc; throws InputError for missing arcs.
  const Journey& witness(NodeIndex from, NodeIndex to) const;

  // Byte-stable exports, arcs sorted lexicographically by node name.
  std::string to_tsv() const;
  std::string to_dot() const;

 private:
  std::vector<std::string> nodes_;
  bool strict_;
  std::set<std::pair<NodeIndex, NodeIndex>> arcs_;
  std::map<std::pair<NodeIndex, NodeIndex>, Journey> witnesses_;
};

// True iff some (strict) journey leads from u to v; u reaches itself always.
bool reaches(const EvolvingGraph& g, const std::string& u, const std::string& v, bool strict);

// All nodes reachable from u by a journey, u included.
std::set<std::string> horizon(const EvolvingGraph& g, const std::string& u);

// Earliest-arrival sweep from every source. Within an interval a non-strict
// journey may chain any number of hops; a strict journey takes at most one.
ClosureGraph transitive_closure(const EvolvingGraph& g, bool strict);

}  // namespace evg
