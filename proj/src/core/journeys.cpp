#include "core/journeys.hpp"

#include <algorithm>
#include <deque>

#include "core/error.hpp"

namespace evg {

bool validate_journey(const EvolvingGraph& g, const Journey& j, const std::string& from,
                      const std::string& to, bool strict) {
  NodeIndex current = g.node_index(from);
  NodeIndex target = g.node_index(to);
  if (j.hops.empty()) return current == target;

  double last_date = j.hops.front().date;
  int64_t last_interval = -1;
  for (const JourneyHop& hop : j.hops) {
    NodeIndex u = g.node_index(hop.u);
    NodeIndex v = g.node_index(hop.v);
    if (u == v) throw InputError("self-loop hop on node '" + hop.u + "'");
    Edge e(u, v);
    if (!e.touches(current)) return false;  // not a walk
    if (hop.date < last_date) return false;  // dates must not decrease
    if (hop.date < g.dates().front() || hop.date >= g.dates().back()) return false;
    uint32_t interval = g.interval_of(hop.date);
    if (!g.present_at(e, interval)) return false;
    if (strict && static_cast<int64_t>(interval) <= last_interval) return false;
    last_interval = interval;
    last_date = hop.date;
    current = e.other(current);
  }
  return current == target;
}

void ClosureGraph::add_arc(NodeIndex from, NodeIndex to, Journey witness) {
  if (from == to) return;
  arcs_.insert({from, to});
  witnesses_[{from, to}] = std::move(witness);
}

bool ClosureGraph::has_arc(NodeIndex from, NodeIndex to) const {
  return arcs_.count({from, to}) > 0;
}

size_t ClosureGraph::out_degree(NodeIndex u) const {
  size_t d = 0;
  for (const auto& [from, to] : arcs_)
    if (from == u) ++d;
  return d;
}

size_t ClosureGraph::in_degree(NodeIndex u) const {
  size_t d = 0;
  for (const auto& [from, to] : arcs_)
    if (to == u) ++d;
  return d;
}

const Journey& ClosureGraph::witness(NodeIndex from, NodeIndex to) const {
  auto it = witnesses_.find({from, to});
  if (it == witnesses_.end()) throw InputError("no such closure arc");
  return it->second;
}

std::string ClosureGraph::to_tsv() const {
  std::string out;
  for (const auto& [from, to] : arcs_) {
    out += nodes_[from];
    out += '\t';
    out += nodes_[to];
    out += '\n';
  }
  return out;
}

static std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string ClosureGraph::to_dot() const {
  std::string out = "digraph closure {\n";
  for (const std::string& n : nodes_) out += "  " + dot_quote(n) + ";\n";
  for (const auto& [from, to] : arcs_)
    out += "  " + dot_quote(nodes_[from]) + " -> " + dot_quote(nodes_[to]) + ";\n";
  out += "}\n";
  return out;
}

namespace {

// Neighbour lists of every snapshot, shared by all per-source searches.
struct SnapshotAdjacency {
  std::vector<std::vector<std::vector<NodeIndex>>> at;  // [interval][node] -> neighbours

  explicit SnapshotAdjacency(const EvolvingGraph& g) {
    at.resize(g.interval_count(),
              std::vector<std::vector<NodeIndex>>(g.node_count()));
    for (size_t pos = 0; pos < g.edge_keys().size(); ++pos) {
      const Edge& e = g.edge_keys()[pos];
      for (const IndexInterval& iv : g.edge_intervals(pos))
        for (uint32_t i = iv.begin; i < iv.end; ++i) {
          at[i][e.a].push_back(e.b);
          at[i][e.b].push_back(e.a);
        }
    }
    for (auto& per_interval : at)
      for (auto& nbrs : per_interval) std::sort(nbrs.begin(), nbrs.end());
  }
};

// Per-source earliest-arrival sweep. Arrival at `source` costs nothing; in
// each interval, non-strict search saturates the snapshot component around
// the reached set, strict search adds exactly one adjacency layer.
struct SourceSearch {
  std::vector<char> reached;
  // Predecessor hop used to reach each node, for witness reconstruction.
  std::vector<NodeIndex> parent;
  std::vector<uint32_t> parent_interval;

  SourceSearch(const SnapshotAdjacency& adj, size_t node_count, NodeIndex source, bool strict)
      : reached(node_count, 0), parent(node_count, 0), parent_interval(node_count, 0) {
    reached[source] = 1;
    for (uint32_t i = 0; i < adj.at.size(); ++i) {
      const auto& nbrs = adj.at[i];
      if (strict) {
        std::vector<NodeIndex> added;
        for (NodeIndex x = 0; x < node_count; ++x) {
          if (!reached[x]) continue;
          for (NodeIndex y : nbrs[x])
            if (!reached[y]) {
              added.push_back(y);
              parent[y] = x;
              parent_interval[y] = i;
            }
        }
        for (NodeIndex y : added) reached[y] = 1;
      } else {
        std::deque<NodeIndex> frontier;
        for (NodeIndex x = 0; x < node_count; ++x)
          if (reached[x]) frontier.push_back(x);
        while (!frontier.empty()) {
          NodeIndex x = frontier.front();
          frontier.pop_front();
          for (NodeIndex y : nbrs[x])
            if (!reached[y]) {
              reached[y] = 1;
              parent[y] = x;
              parent_interval[y] = i;
              frontier.push_back(y);
            }
        }
      }
    }
  }

  Journey witness_to(const EvolvingGraph& g, NodeIndex source, NodeIndex target) const {
    Journey j;
    NodeIndex cur = target;
    while (cur != source) {
      NodeIndex prev = parent[cur];
      // Hop dates resolve to the left endpoint of the hop's interval.
      j.hops.push_back({g.node_name(prev), g.node_name(cur), g.dates()[parent_interval[cur]]});
      cur = prev;
    }
    std::reverse(j.hops.begin(), j.hops.end());
    return j;
  }
};

}  // namespace

bool reaches(const EvolvingGraph& g, const std::string& u, const std::string& v, bool strict) {
  NodeIndex ui = g.node_index(u);
  NodeIndex vi = g.node_index(v);
  if (ui == vi) return true;
  SnapshotAdjacency adj(g);
  SourceSearch s(adj, g.node_count(), ui, strict);
  return s.reached[vi] != 0;
}

std::set<std::string> horizon(const EvolvingGraph& g, const std::string& u) {
  NodeIndex ui = g.node_index(u);
  SnapshotAdjacency adj(g);
  SourceSearch s(adj, g.node_count(), ui, /*strict=*/false);
  std::set<std::string> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    if (s.reached[v]) out.insert(g.node_name(v));
  return out;
}

ClosureGraph transitive_closure(const EvolvingGraph& g, bool strict) {
  ClosureGraph closure(g.nodes(), strict);
  SnapshotAdjacency adj(g);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    SourceSearch s(adj, g.node_count(), u, strict);
    for (NodeIndex v = 0; v < g.node_count(); ++v)
      if (v != u && s.reached[v]) closure.add_arc(u, v, s.witness_to(g, u, v));
  }
  return closure;
}

}  // namespace evg
