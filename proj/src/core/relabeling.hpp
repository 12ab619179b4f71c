#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/evolving_graph.hpp"

namespace evg {

// Algorithmic state of one vertex: an alphabet tag plus an optional counter.
struct Label {
  std::string tag;
  std::optional<int64_t> payload;

  bool operator==(const Label& o) const { return tag == o.tag && payload == o.payload; }
  bool operator<(const Label& o) const {
    if (tag != o.tag) return tag < o.tag;
    return payload < o.payload;
  }
  std::string to_string() const {  // "C:3" or "I"
    return payload ? tag + ":" + std::to_string(*payload) : tag;
  }
};

// Network state at a logical instant: one label per vertex, the interval the
// execution is in, and how many rules fired in that interval so far.
struct LabeledState {
  std::vector<Label> vertex_labels;
  uint32_t interval_index = 0;
  uint32_t step_count = 0;
};

// Rule patterns name their endpoints (v0, v1); an oriented edge binds them.
struct OrientedEdge {
  NodeIndex from;
  NodeIndex to;

  bool operator==(const OrientedEdge& o) const { return from == o.from && to == o.to; }
  bool operator<(const OrientedEdge& o) const {
    return from < o.from || (from == o.from && to < o.to);
  }
};

// A pairwise rewrite: guard over the two endpoint labels, action producing
// their replacements. Guard and action never see any other vertex.
struct Rule {
  std::string name;
  std::function<bool(const Label& v0, const Label& v1)> guard;
  std::function<std::pair<Label, Label>(const Label& v0, const Label& v1)> action;
  bool orientation_symmetric = false;  // guard(x,y) == guard(y,x) for all labels
};

struct RelabelingAlgorithm {
  std::string name;
  std::vector<std::string> alphabet;
  bool needs_start = false;  // requires a distinguished vertex at t_0
  std::function<std::vector<Label>(size_t node_count, std::optional<NodeIndex> start)> initial;
  std::vector<Rule> rules;
  std::function<bool(const LabeledState&)> objective;
  std::string objective_text;
};

struct TraceStep {
  enum class Kind { Apply, Event };
  Kind kind = Kind::Event;
  uint32_t rule_index = 0;  // Apply only
  OrientedEdge edge{0, 0};  // Apply only
  uint32_t interval = 0;    // Apply: where it fired; Event: the interval entered
};

// Alternated sequence of rule applications and topological events, plus the
// state the execution ends in.
struct ExecutionTrace {
  std::vector<TraceStep> steps;
  LabeledState final_state;
};

// All (rule, oriented edge) pairs firable in the current snapshot, sorted by
// (rule index, from, to). Both orientations appear when both guards hold.
std::vector<std::pair<uint32_t, OrientedEdge>> applicable(const LabeledState& state,
                                                          const EvolvingGraph& g,
                                                          const RelabelingAlgorithm& algo);

// Rewrites exactly the two endpoint labels. Throws ContractViolation when the
// pair is not applicable in `state`.
LabeledState apply_rule(const LabeledState& state, const EvolvingGraph& g,
                        const RelabelingAlgorithm& algo, uint32_t rule_index, OrientedEdge e);

enum class SchedulerId { Ph1Greedy, Random };
SchedulerId scheduler_from_token(const std::string& token);  // "ph1-greedy" | "random"

std::vector<Label> initial_labels(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                                  const std::optional<std::string>& start);

// Samples one execution. Deterministic in (g, algo, start, scheduler, seed).
ExecutionTrace run(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                   const std::optional<std::string>& start, SchedulerId scheduler,
                   uint64_t seed);

enum class EnumerationMode { All, Ph1Only };

struct EnumerationLimits {
  uint64_t max_states = 1'000'000;
  uint64_t max_transitions = 10'000'000;
};

struct FinalState {
  std::vector<Label> labels;
  bool objective_met;
  ExecutionTrace example;
};

struct EnumerationResult {
  std::vector<FinalState> finals;  // deduplicated by labels, discovery order
  bool truncated = false;
  uint64_t states_explored = 0;
  uint64_t transitions = 0;

  bool any_objective_met() const;
  bool all_objectives_met() const;
};

// Breadth-first search over canonical execution states. Mode All admits any
// interval completion (including none of the enabled rules firing); mode
// Ph1Only admits only completions where every pair enabled at the interval
// start either fired on its edge or had its guard invalidated by the end.
// `visit` is called once per newly discovered state.
EnumerationResult enumerate_executions(
    const EvolvingGraph& g, const RelabelingAlgorithm& algo,
    const std::optional<std::string>& start, EnumerationMode mode,
    const EnumerationLimits& limits = {},
    const std::function<void(const LabeledState&)>& visit = nullptr);

// Line-oriented log: APPLY <rule> <u> <v> @interval=<i> / EVENT -> interval <i>
// followed by LABEL <node> <tag>[:<payload>] lines for the final state.
std::string trace_to_log(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                         const ExecutionTrace& trace);

// Re-executes a trace from the initial labeling; returns the resulting state.
// Throws when a step is not applicable where the trace claims it fired.
LabeledState replay(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                    const std::optional<std::string>& start, const ExecutionTrace& trace);

// Replays a serialized log. LABEL lines, when present, are checked against
// the replayed final state.
LabeledState replay_log(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                        const std::optional<std::string>& start, const std::string& log);

}  // namespace evg
