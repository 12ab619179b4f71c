#include "core/evolving_graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "core/error.hpp"

namespace evg {

StaticGraph::StaticGraph(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    if (e.b >= nodes_.size()) throw InputError("edge endpoint out of range");
    if (e.a == e.b) throw InputError("self-loop edge on node '" + nodes_[e.a] + "'");
  }
}

bool StaticGraph::has_edge(NodeIndex u, NodeIndex v) const {
  if (u == v) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Edge(u, v));
}

size_t StaticGraph::degree(NodeIndex u) const {
  size_t d = 0;
  for (const Edge& e : edges_)
    if (e.touches(u)) ++d;
  return d;
}

bool StaticGraph::is_complete() const {
  size_t n = nodes_.size();
  return edges_.size() == n * (n - 1) / 2;
}

bool StaticGraph::is_connected() const {
  size_t n = nodes_.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  size_t count = 1;
  while (!stack.empty()) {
    NodeIndex x = stack.back();
    stack.pop_back();
    for (const Edge& e : edges_) {
      if (!e.touches(x)) continue;
      NodeIndex y = e.other(x);
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

std::optional<NodeIndex> EvolvingGraph::find_node(const std::string& name) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes_.begin());
}

NodeIndex EvolvingGraph::node_index(const std::string& name) const {
  auto idx = find_node(name);
  if (!idx) throw InputError("unknown node '" + name + "'");
  return *idx;
}

bool EvolvingGraph::present_at(const Edge& e, uint32_t interval_index) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return false;
  for (const IndexInterval& iv : intervals_[it - edges_.begin()])
    if (iv.begin <= interval_index && interval_index < iv.end) return true;
  return false;
}

uint32_t EvolvingGraph::interval_of(double t) const {
  if (t < dates_.front() || t >= dates_.back())
    throw DomainError("date " + std::to_string(t) + " outside the trace window");
  auto it = std::upper_bound(dates_.begin(), dates_.end(), t);
  return static_cast<uint32_t>(it - dates_.begin() - 1);
}

bool EvolvingGraph::presence(const std::string& u, const std::string& v, double t) const {
  NodeIndex ui = node_index(u);
  NodeIndex vi = node_index(v);
  if (ui == vi) throw InputError("self-loop query on node '" + u + "'");
  return present_at(Edge(ui, vi), interval_of(t));
}

StaticGraph EvolvingGraph::snapshot(uint32_t interval_index) const {
  if (interval_index >= interval_count())
    throw InputError("interval index " + std::to_string(interval_index) + " out of range");
  std::vector<Edge> edges;
  for (size_t i = 0; i < edges_.size(); ++i)
    for (const IndexInterval& iv : intervals_[i])
      if (iv.begin <= interval_index && interval_index < iv.end) {
        edges.push_back(edges_[i]);
        break;
      }
  return StaticGraph(nodes_, std::move(edges));
}

StaticGraph EvolvingGraph::underlying() const {
  std::vector<Edge> edges;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (!intervals_[i].empty()) edges.push_back(edges_[i]);
  return StaticGraph(nodes_, std::move(edges));
}

EvolvingGraph EvolvingGraph::temporal_subgraph(double from, double to) const {
  if (from >= to) throw InputError("temporal window is empty or inverted");
  if (from < dates_.front() || to > dates_.back())
    throw DomainError("temporal window outside the trace");

  std::vector<double> dates{from};
  for (double t : dates_)
    if (t > from && t < to) dates.push_back(t);
  dates.push_back(to);

  auto index_of = [&dates](double t) {
    return static_cast<uint32_t>(
        std::lower_bound(dates.begin(), dates.end(), t) - dates.begin());
  };

  EvolvingGraphBuilder b;
  for (const std::string& n : nodes_) b.add_node(n);
  b.set_dates(dates);
  for (size_t i = 0; i < edges_.size(); ++i) {
    for (const IndexInterval& iv : intervals_[i]) {
      double lo = std::max(dates_[iv.begin], from);
      double hi = std::min(dates_[iv.end], to);
      if (lo >= hi) continue;
      b.add_presence(nodes_[edges_[i].a], nodes_[edges_[i].b], index_of(lo), index_of(hi));
    }
  }
  return b.build();
}

EvolvingGraphBuilder& EvolvingGraphBuilder::add_node(const std::string& name) {
  nodes_.push_back(name);
  return *this;
}

EvolvingGraphBuilder& EvolvingGraphBuilder::set_dates(std::vector<double> dates) {
  dates_ = std::move(dates);
  return *this;
}

EvolvingGraphBuilder& EvolvingGraphBuilder::add_presence(const std::string& u,
                                                         const std::string& v,
                                                         uint32_t begin, uint32_t end) {
  pending_.push_back({u, v, begin, end});
  return *this;
}

EvolvingGraph EvolvingGraphBuilder::build() {
  EvolvingGraph g;

  if (nodes_.empty()) throw InputError("node set is empty");
  g.nodes_ = nodes_;
  std::sort(g.nodes_.begin(), g.nodes_.end());
  if (std::adjacent_find(g.nodes_.begin(), g.nodes_.end()) != g.nodes_.end())
    throw InputError("duplicate node name");
  for (const std::string& n : g.nodes_) {
    if (n.empty()) throw InputError("empty node name");
    // Names must survive the whitespace-delimited, '#'-commented text format.
    for (char c : n)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
        throw InputError("node name '" + n + "' contains whitespace or '#'");
  }

  if (dates_.size() < 2) throw InputError("need at least two dates (one interval)");
  for (size_t i = 1; i < dates_.size(); ++i)
    if (!(dates_[i - 1] < dates_[i])) throw InputError("dates not strictly increasing");
  g.dates_ = dates_;

  uint32_t k = static_cast<uint32_t>(dates_.size() - 1);
  std::map<Edge, std::vector<IndexInterval>> by_edge;
  for (const PendingEdge& p : pending_) {
    NodeIndex u = g.node_index(p.u);
    NodeIndex v = g.node_index(p.v);
    if (u == v) throw InputError("self-loop edge on node '" + p.u + "'");
    if (p.begin >= p.end)
      throw InputError("empty or inverted interval on edge (" + p.u + "," + p.v + ")");
    if (p.end > k)
      throw InputError("interval index out of range on edge (" + p.u + "," + p.v + ")");
    by_edge[Edge(u, v)].push_back({p.begin, p.end});
  }

  for (auto& [edge, ivs] : by_edge) {
    std::sort(ivs.begin(), ivs.end());
    std::vector<IndexInterval> merged;
    for (const IndexInterval& iv : ivs) {
      if (!merged.empty() && iv.begin < merged.back().end)
        throw InputError("overlapping intervals on edge (" + g.nodes_[edge.a] + "," +
                         g.nodes_[edge.b] + ")");
      if (!merged.empty() && iv.begin == merged.back().end)
        merged.back().end = iv.end;  // adjacent runs merge
      else
        merged.push_back(iv);
    }
    g.edges_.push_back(edge);
    g.intervals_.push_back(std::move(merged));
  }
  return g;
}

EvolvingGraph from_snapshots(
    const std::vector<std::string>& nodes, const std::vector<double>& dates,
    const std::vector<std::vector<std::pair<std::string, std::string>>>& snapshots) {
  if (dates.size() != snapshots.size() + 1)
    throw InputError("need exactly one more date than snapshots");
  EvolvingGraphBuilder b;
  for (const std::string& n : nodes) b.add_node(n);
  b.set_dates(dates);
  // One run per (edge, snapshot); build() merges adjacent runs.
  for (uint32_t i = 0; i < snapshots.size(); ++i) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [u, v] : snapshots[i]) {
      auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
      if (seen.insert(key).second) b.add_presence(u, v, i, i + 1);
    }
  }
  return b.build();
}

}  // namespace evg
