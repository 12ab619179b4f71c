#include "core/relabeling.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace evg {

bool EnumerationResult::any_objective_met() const {
  return std::any_of(finals.begin(), finals.end(),
                     [](const FinalState& f) { return f.objective_met; });
}

bool EnumerationResult::all_objectives_met() const {
  return std::all_of(finals.begin(), finals.end(),
                     [](const FinalState& f) { return f.objective_met; });
}

std::vector<std::pair<uint32_t, OrientedEdge>> applicable(const LabeledState& state,
                                                          const EvolvingGraph& g,
                                                          const RelabelingAlgorithm& algo) {
  std::vector<std::pair<uint32_t, OrientedEdge>> out;
  const auto& labels = state.vertex_labels;
  for (uint32_t r = 0; r < algo.rules.size(); ++r) {
    const Rule& rule = algo.rules[r];
    for (size_t pos = 0; pos < g.edge_keys().size(); ++pos) {
      const Edge& e = g.edge_keys()[pos];
      if (!g.present_at(e, state.interval_index)) continue;
      bool forward = rule.guard(labels[e.a], labels[e.b]);
      bool backward =
          rule.orientation_symmetric ? forward : rule.guard(labels[e.b], labels[e.a]);
      if (forward) out.push_back({r, {e.a, e.b}});
      if (backward) out.push_back({r, {e.b, e.a}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LabeledState apply_rule(const LabeledState& state, const EvolvingGraph& g,
                        const RelabelingAlgorithm& algo, uint32_t rule_index, OrientedEdge e) {
  if (rule_index >= algo.rules.size()) throw ContractViolation("rule index out of range");
  const Rule& rule = algo.rules[rule_index];
  if (!g.present_at(e.from, e.to, state.interval_index))
    throw ContractViolation("rule applied on an edge absent from the current snapshot");
  if (!rule.guard(state.vertex_labels[e.from], state.vertex_labels[e.to]))
    throw ContractViolation("rule applied with unsatisfied guard");

  LabeledState next = state;
  auto [l0, l1] = rule.action(state.vertex_labels[e.from], state.vertex_labels[e.to]);
  next.vertex_labels[e.from] = std::move(l0);
  next.vertex_labels[e.to] = std::move(l1);
  next.step_count = state.step_count + 1;
  return next;
}

SchedulerId scheduler_from_token(const std::string& token) {
  if (token == "ph1-greedy") return SchedulerId::Ph1Greedy;
  if (token == "random") return SchedulerId::Random;
  throw InputError("unknown scheduler '" + token + "'");
}

std::vector<Label> initial_labels(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                                  const std::optional<std::string>& start) {
  std::optional<NodeIndex> idx;
  if (start) idx = g.node_index(*start);
  if (algo.needs_start && !idx)
    throw InputError("algorithm " + algo.name + " needs a start node");
  return algo.initial(g.node_count(), algo.needs_start ? idx : std::nullopt);
}

namespace {
constexpr uint64_t kRunStepBudget = 1ull << 22;
}

ExecutionTrace run(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                   const std::optional<std::string>& start, SchedulerId scheduler,
                   uint64_t seed) {
  ExecutionTrace trace;
  LabeledState state;
  state.vertex_labels = initial_labels(g, algo, start);

  SplitMix64 rng(seed);
  uint64_t budget = kRunStepBudget;
  for (uint32_t i = 0; i < g.interval_count(); ++i) {
    if (i > 0) {
      trace.steps.push_back({TraceStep::Kind::Event, 0, {0, 0}, i});
      state.interval_index = i;
      state.step_count = 0;
    }
    for (;;) {
      auto pairs = applicable(state, g, algo);
      if (pairs.empty()) break;
      size_t pick = 0;
      if (scheduler == SchedulerId::Random) {
        uint64_t x = rng.next();
        if ((x & 3) == 0) break;  // leave the interval early
        pick = static_cast<size_t>((x >> 2) % pairs.size());
      }
      auto [r, e] = pairs[pick];
      state = apply_rule(state, g, algo, r, e);
      trace.steps.push_back({TraceStep::Kind::Apply, r, e, i});
      if (--budget == 0) throw std::runtime_error("relabeling step budget exhausted");
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

namespace {

struct StateKey {
  uint32_t interval;
  uint32_t labels_id;
  uint32_t start_id;   // id of the start-enabled pair set (Ph1Only), else 0
  uint32_t applied;    // bitmask over the start-relevant edges (Ph1Only), else 0

  bool operator==(const StateKey& o) const {
    return interval == o.interval && labels_id == o.labels_id && start_id == o.start_id &&
           applied == o.applied;
  }
};

struct StateKeyHash {
  size_t operator()(const StateKey& k) const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t v : {uint64_t(k.interval), uint64_t(k.labels_id), uint64_t(k.start_id),
                       uint64_t(k.applied)}) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

using EnabledPair = std::pair<uint32_t, OrientedEdge>;

// What an interval demands under the progression hypothesis: the pairs whose
// guards held when the interval began, and the edges those pairs live on.
struct IntervalObligations {
  std::vector<EnabledPair> pairs;
  std::vector<Edge> edges;  // sorted, deduplicated; bit positions for `applied`
};

struct Interner {
  std::map<std::vector<Label>, uint32_t> label_ids;
  std::deque<std::vector<Label>> labels_by_id;
  std::map<std::vector<EnabledPair>, uint32_t> start_ids;
  std::deque<IntervalObligations> obligations_by_id;

  uint32_t intern_labels(const std::vector<Label>& labels) {
    auto [it, inserted] = label_ids.try_emplace(labels, label_ids.size());
    if (inserted) labels_by_id.push_back(labels);
    return it->second;
  }

  uint32_t intern_start(std::vector<EnabledPair> pairs) {
    auto [it, inserted] = start_ids.try_emplace(pairs, start_ids.size());
    if (inserted) {
      IntervalObligations ob;
      ob.pairs = std::move(pairs);
      for (const auto& [r, e] : ob.pairs) ob.edges.emplace_back(e.from, e.to);
      std::sort(ob.edges.begin(), ob.edges.end());
      ob.edges.erase(std::unique(ob.edges.begin(), ob.edges.end()), ob.edges.end());
      if (ob.edges.size() > 32)
        throw InputError("instance too large: more than 32 obligated edges in one interval");
      obligations_by_id.push_back(std::move(ob));
    }
    return it->second;
  }
};

struct Discovery {
  StateKey parent;
  TraceStep step;
  bool is_root;
};

}  // namespace

EnumerationResult enumerate_executions(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                                       const std::optional<std::string>& start,
                                       EnumerationMode mode, const EnumerationLimits& limits,
                                       const std::function<void(const LabeledState&)>& visit) {
  if (limits.max_states == 0 || limits.max_transitions == 0)
    throw InputError("enumeration limits must be positive");

  const bool ph1 = mode == EnumerationMode::Ph1Only;
  const uint32_t last_interval = static_cast<uint32_t>(g.interval_count() - 1);

  EnumerationResult result;
  Interner intern;
  std::unordered_map<StateKey, Discovery, StateKeyHash> seen;
  std::deque<StateKey> frontier;

  auto state_of = [&](const StateKey& key) {
    LabeledState s;
    s.vertex_labels = intern.labels_by_id[key.labels_id];
    s.interval_index = key.interval;
    return s;
  };

  auto start_id_for = [&](uint32_t interval, const std::vector<Label>& labels) -> uint32_t {
    if (!ph1) return 0;
    LabeledState s;
    s.vertex_labels = labels;
    s.interval_index = interval;
    return intern.intern_start(applicable(s, g, algo));
  };

  // The interval's obligations are met iff every start-enabled pair either
  // saw an application on its edge or no longer has its guard satisfied.
  auto compliant = [&](const StateKey& key) {
    if (!ph1) return true;
    const IntervalObligations& ob = intern.obligations_by_id[key.start_id];
    const std::vector<Label>& labels = intern.labels_by_id[key.labels_id];
    for (const auto& [r, e] : ob.pairs) {
      Edge edge(e.from, e.to);
      size_t bit = std::lower_bound(ob.edges.begin(), ob.edges.end(), edge) - ob.edges.begin();
      if (key.applied & (1u << bit)) continue;
      if (algo.rules[r].guard(labels[e.from], labels[e.to])) return false;
    }
    return true;
  };

  auto discover = [&](const StateKey& key, const Discovery& how) -> bool {
    auto [it, inserted] = seen.try_emplace(key, how);
    if (!inserted) return true;
    if (seen.size() > limits.max_states) {
      result.truncated = true;
      return false;
    }
    frontier.push_back(key);
    if (visit) visit(state_of(key));
    return true;
  };

  std::vector<Label> init = initial_labels(g, algo, start);
  StateKey root{0, intern.intern_labels(init), start_id_for(0, init), 0};
  discover(root, {root, {}, true});

  std::map<uint32_t, StateKey> finals;  // labels_id -> first key observed final
  std::vector<uint32_t> final_order;

  while (!frontier.empty() && !result.truncated) {
    StateKey key = frontier.front();
    frontier.pop_front();
    ++result.states_explored;

    LabeledState state = state_of(key);
    const IntervalObligations* ob = ph1 ? &intern.obligations_by_id[key.start_id] : nullptr;

    // Rule applications stay inside the interval.
    for (const auto& [r, e] : applicable(state, g, algo)) {
      if (++result.transitions > limits.max_transitions) {
        result.truncated = true;
        break;
      }
      LabeledState next = apply_rule(state, g, algo, r, e);
      uint32_t applied = key.applied;
      if (ph1) {
        Edge edge(e.from, e.to);
        auto it = std::lower_bound(ob->edges.begin(), ob->edges.end(), edge);
        if (it != ob->edges.end() && *it == edge)
          applied |= 1u << (it - ob->edges.begin());
      }
      StateKey nk{key.interval, intern.intern_labels(next.vertex_labels), key.start_id, applied};
      if (!discover(nk, {key, {TraceStep::Kind::Apply, r, e, key.interval}, false})) break;
    }
    if (result.truncated) break;

    // Interval completion: a topological event, or the end of the trace.
    if (!compliant(key)) continue;
    if (key.interval < last_interval) {
      if (++result.transitions > limits.max_transitions) {
        result.truncated = true;
        break;
      }
      uint32_t next_interval = key.interval + 1;
      StateKey nk{next_interval, key.labels_id,
                  start_id_for(next_interval, intern.labels_by_id[key.labels_id]), 0};
      if (!discover(nk, {key, {TraceStep::Kind::Event, 0, {0, 0}, next_interval}, false}))
        break;
    } else {
      if (finals.try_emplace(key.labels_id, key).second) final_order.push_back(key.labels_id);
    }
  }

  for (uint32_t labels_id : final_order) {
    const StateKey& key = finals.at(labels_id);
    FinalState f;
    f.labels = intern.labels_by_id[labels_id];

    ExecutionTrace trace;
    StateKey cur = key;
    for (;;) {
      const Discovery& d = seen.at(cur);
      if (d.is_root) break;
      trace.steps.push_back(d.step);
      cur = d.parent;
    }
    std::reverse(trace.steps.begin(), trace.steps.end());
    trace.final_state.vertex_labels = f.labels;
    trace.final_state.interval_index = key.interval;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
      if (it->kind != TraceStep::Kind::Apply) break;
      ++trace.final_state.step_count;
    }
    f.objective_met = algo.objective(trace.final_state);
    f.example = std::move(trace);
    result.finals.push_back(std::move(f));
  }
  return result;
}

std::string trace_to_log(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                         const ExecutionTrace& trace) {
  std::ostringstream out;
  for (const TraceStep& s : trace.steps) {
    if (s.kind == TraceStep::Kind::Apply) {
      out << "APPLY " << algo.rules[s.rule_index].name << " " << g.node_name(s.edge.from) << " "
          << g.node_name(s.edge.to) << " @interval=" << s.interval << "\n";
    } else {
      out << "EVENT -> interval " << s.interval << "\n";
    }
  }
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    out << "LABEL " << g.node_name(v) << " " << trace.final_state.vertex_labels[v].to_string()
        << "\n";
  return out.str();
}

LabeledState replay(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                    const std::optional<std::string>& start, const ExecutionTrace& trace) {
  LabeledState state;
  state.vertex_labels = initial_labels(g, algo, start);
  for (const TraceStep& s : trace.steps) {
    if (s.kind == TraceStep::Kind::Event) {
      if (s.interval != state.interval_index + 1)
        throw ContractViolation("trace events must advance the interval by one");
      if (s.interval >= g.interval_count())
        throw ContractViolation("trace event beyond the last interval");
      state.interval_index = s.interval;
      state.step_count = 0;
    } else {
      if (s.interval != state.interval_index)
        throw ContractViolation("trace apply step outside its interval");
      state = apply_rule(state, g, algo, s.rule_index, s.edge);
    }
  }
  return state;
}

LabeledState replay_log(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                        const std::optional<std::string>& start, const std::string& log) {
  ExecutionTrace trace;
  std::vector<std::pair<std::string, Label>> expected_labels;

  std::istringstream in(log);
  std::string line;
  int line_no = 0;
  auto parse_u32 = [&](const std::string& s) {
    try {
      return static_cast<uint32_t>(std::stoul(s));
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + s + "'", line_no);
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "APPLY") {
      std::string rule, u, v, at;
      if (!(ls >> rule >> u >> v >> at) || at.rfind("@interval=", 0) != 0)
        throw ParseError("malformed APPLY line", line_no);
      uint32_t interval = parse_u32(at.substr(10));
      uint32_t rule_index = UINT32_MAX;
      for (uint32_t r = 0; r < algo.rules.size(); ++r)
        if (algo.rules[r].name == rule) rule_index = r;
      if (rule_index == UINT32_MAX) throw ParseError("unknown rule '" + rule + "'", line_no);
      trace.steps.push_back({TraceStep::Kind::Apply, rule_index,
                             {g.node_index(u), g.node_index(v)}, interval});
    } else if (word == "EVENT") {
      std::string arrow, kw;
      uint32_t interval;
      if (!(ls >> arrow >> kw >> interval) || arrow != "->" || kw != "interval")
        throw ParseError("malformed EVENT line", line_no);
      trace.steps.push_back({TraceStep::Kind::Event, 0, {0, 0}, interval});
    } else if (word == "LABEL") {
      std::string node, tag;
      if (!(ls >> node >> tag)) throw ParseError("malformed LABEL line", line_no);
      Label label;
      auto colon = tag.find(':');
      if (colon == std::string::npos) {
        label.tag = tag;
      } else {
        label.tag = tag.substr(0, colon);
        try {
          label.payload = std::stoll(tag.substr(colon + 1));
        } catch (const std::exception&) {
          throw ParseError("malformed label payload '" + tag + "'", line_no);
        }
      }
      expected_labels.emplace_back(node, label);
    } else {
      throw ParseError("unknown log directive '" + word + "'", line_no);
    }
  }

  LabeledState state = replay(g, algo, start, trace);
  for (const auto& [node, label] : expected_labels) {
    if (!(state.vertex_labels[g.node_index(node)] == label))
      throw ContractViolation("replayed label of node '" + node +
                              "' differs from the logged label");
  }
  return state;
}

}  // namespace evg
