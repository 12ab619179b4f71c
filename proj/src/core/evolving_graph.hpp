#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace evg {

using NodeIndex = uint32_t;

// Unordered node pair, stored with first < second.
struct Edge {
  NodeIndex a;
  NodeIndex b;

  Edge(NodeIndex u, NodeIndex v) : a(u < v ? u : v), b(u < v ? v : u) {}
  bool operator==(const Edge& o) const { return a == o.a && b == o.b; }
  bool operator<(const Edge& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool touches(NodeIndex n) const { return a == n || b == n; }
  NodeIndex other(NodeIndex n) const { return a == n ? b : a; }
};

// Half-open run of interval indices [begin, end) during which an edge is present.
struct IndexInterval {
  uint32_t begin;
  uint32_t end;

  bool operator==(const IndexInterval& o) const { return begin == o.begin && end == o.end; }
  bool operator<(const IndexInterval& o) const {
    return begin < o.begin || (begin == o.begin && end < o.end);
  }
};

// One topology: a node set plus undirected edges between them.
class StaticGraph {
 public:
  StaticGraph(std::vector<std::string> nodes, std::vector<Edge> edges);

  size_t node_count() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeIndex u, NodeIndex v) const;
  size_t degree(NodeIndex u) const;
  bool is_complete() const;
  bool is_connected() const;

  bool operator==(const StaticGraph& o) const { return nodes_ == o.nodes_ && edges_ == o.edges_; }

 private:
  std::vector<std::string> nodes_;  // sorted
  std::vector<Edge> edges_;         // sorted, deduplicated
};

// A finite trace of network topology: a strictly increasing date sequence
// t_0 < ... < t_k and, per undirected edge, the disjoint maximal runs of
// interval indices during which the edge is present. Immutable once built.
class EvolvingGraph {
 public:
  size_t node_count() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<double>& dates() const { return dates_; }

  // Number of intervals [t_i, t_{i+1}); one less than the number of dates.
  size_t interval_count() const { return dates_.size() - 1; }

  const std::string& node_name(NodeIndex i) const { return nodes_[i]; }
  std::optional<NodeIndex> find_node(const std::string& name) const;
  NodeIndex node_index(const std::string& name) const;  // throws InputError if unknown

  const std::vector<Edge>& edge_keys() const { return edges_; }
  const std::vector<IndexInterval>& edge_intervals(size_t edge_pos) const {
    return intervals_[edge_pos];
  }

  bool present_at(const Edge& e, uint32_t interval_index) const;
  bool present_at(NodeIndex u, NodeIndex v, uint32_t interval_index) const {
    return present_at(Edge(u, v), interval_index);
  }

  // Presence of edge (u,v) at date t. Throws DomainError when t is outside
  // [t_0, t_k), InputError when an endpoint is unknown.
  bool presence(const std::string& u, const std::string& v, double t) const;

  // Interval index i with t in [t_i, t_{i+1}). Throws DomainError outside [t_0, t_k).
  uint32_t interval_of(double t) const;

  StaticGraph snapshot(uint32_t interval_index) const;  // throws InputError on bad index
  StaticGraph underlying() const;

  // Restriction of dates and presence to [from, to); node set unchanged.
  // The window bounds become the first and last date of the result.
  EvolvingGraph temporal_subgraph(double from, double to) const;

  bool operator==(const EvolvingGraph& o) const {
    return nodes_ == o.nodes_ && dates_ == o.dates_ && edges_ == o.edges_ &&
           intervals_ == o.intervals_;
  }

 private:
  friend class EvolvingGraphBuilder;
  EvolvingGraph() = default;

  std::vector<std::string> nodes_;                   // sorted lexicographically
  std::vector<double> dates_;                        // strictly increasing, size >= 2
  std::vector<Edge> edges_;                          // sorted
  std::vector<std::vector<IndexInterval>> intervals_;  // per edge, sorted, disjoint, merged
};

// Accumulates nodes, dates and per-edge presence runs, then validates and
// canonicalizes. Adjacent runs are merged; overlapping runs are rejected.
class EvolvingGraphBuilder {
 public:
  EvolvingGraphBuilder& add_node(const std::string& name);
  EvolvingGraphBuilder& set_dates(std::vector<double> dates);
  EvolvingGraphBuilder& add_presence(const std::string& u, const std::string& v,
                                     uint32_t begin, uint32_t end);
  EvolvingGraph build();

 private:
  struct PendingEdge {
    std::string u, v;
    uint32_t begin, end;
  };
  std::vector<std::string> nodes_;
  std::vector<double> dates_;
  std::vector<PendingEdge> pending_;
};

// Builds the graph whose snapshot sequence is exactly `snapshots`; each
// snapshot is an edge list over `nodes` given as name pairs.
EvolvingGraph from_snapshots(const std::vector<std::string>& nodes,
                             const std::vector<double>& dates,
                             const std::vector<std::vector<std::pair<std::string, std::string>>>&
                                 snapshots);

}  // namespace evg
