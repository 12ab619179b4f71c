#include "core/algorithms.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/journeys.hpp"

namespace evg {

namespace {
const Label kInformed{"I", std::nullopt};
const Label kNotInformed{"N", std::nullopt};
const Label kCounted{"F", std::nullopt};

bool is_counter(const Label& l) { return l.tag == "C"; }
}  // namespace

RelabelingAlgorithm algo_a1() {
  RelabelingAlgorithm a;
  a.name = "a1";
  a.alphabet = {"I", "N"};
  a.needs_start = true;
  a.initial = [](size_t n, std::optional<NodeIndex> start) {
    std::vector<Label> labels(n, kNotInformed);
    labels[*start] = kInformed;
    return labels;
  };
  Rule r1;
  r1.name = "r1";
  r1.guard = [](const Label& v0, const Label& v1) {
    return v0 == kInformed && v1 == kNotInformed;
  };
  r1.action = [](const Label&, const Label&) { return std::make_pair(kInformed, kInformed); };
  a.rules = {r1};
  a.objective = [](const LabeledState& s) {
    return std::all_of(s.vertex_labels.begin(), s.vertex_labels.end(),
                       [](const Label& l) { return l == kInformed; });
  };
  a.objective_text = "every vertex informed";
  return a;
}

RelabelingAlgorithm algo_a2() {
  RelabelingAlgorithm a;
  a.name = "a2";
  a.alphabet = {"C", "N", "F"};
  a.needs_start = true;
  a.initial = [](size_t n, std::optional<NodeIndex> start) {
    std::vector<Label> labels(n, kNotInformed);
    labels[*start] = Label{"C", 1};
    return labels;
  };
  Rule r1;
  r1.name = "r1";
  r1.guard = [](const Label& v0, const Label& v1) {
    return is_counter(v0) && v1 == kNotInformed;
  };
  r1.action = [](const Label& v0, const Label&) {
    return std::make_pair(Label{"C", *v0.payload + 1}, kCounted);
  };
  a.rules = {r1};
  a.objective = [](const LabeledState& s) {
    return std::none_of(s.vertex_labels.begin(), s.vertex_labels.end(),
                        [](const Label& l) { return l == kNotInformed; });
  };
  a.objective_text = "no vertex left uncounted";
  return a;
}

RelabelingAlgorithm algo_a3() {
  RelabelingAlgorithm a;
  a.name = "a3";
  a.alphabet = {"C", "F"};
  a.needs_start = false;
  a.initial = [](size_t n, std::optional<NodeIndex>) {
    return std::vector<Label>(n, Label{"C", 1});
  };
  Rule r1;
  r1.name = "r1";
  r1.guard = [](const Label& v0, const Label& v1) { return is_counter(v0) && is_counter(v1); };
  r1.action = [](const Label& v0, const Label& v1) {
    return std::make_pair(Label{"C", *v0.payload + *v1.payload}, kCounted);
  };
  r1.orientation_symmetric = true;
  a.rules = {r1};
  a.objective = [](const LabeledState& s) {
    return std::count_if(s.vertex_labels.begin(), s.vertex_labels.end(), is_counter) == 1;
  };
  a.objective_text = "exactly one counter remains";
  return a;
}

RelabelingAlgorithm algorithm_from_token(const std::string& token) {
  if (token == "a1") return algo_a1();
  if (token == "a2") return algo_a2();
  if (token == "a3") return algo_a3();
  throw InputError("unknown algorithm '" + token + "'");
}

ConditionId condition_from_token(const std::string& token) {
  if (token == "c1") return ConditionId::C1;
  if (token == "c2") return ConditionId::C2;
  if (token == "c3") return ConditionId::C3;
  if (token == "c4") return ConditionId::C4;
  throw InputError("unknown condition '" + token + "'");
}

std::string condition_token(ConditionId c) {
  switch (c) {
    case ConditionId::C1: return "c1";
    case ConditionId::C2: return "c2";
    case ConditionId::C3: return "c3";
    case ConditionId::C4: return "c4";
  }
  return {};
}

bool condition_needs_distinguished(ConditionId c) { return c != ConditionId::C4; }

bool condition_matches_algorithm(ConditionId c, const std::string& algo_name) {
  switch (c) {
    case ConditionId::C1:
    case ConditionId::C2: return algo_name == "a1";
    case ConditionId::C3: return algo_name == "a2";
    case ConditionId::C4: return algo_name == "a3";
  }
  return false;
}

ConditionResult eval_condition(const EvolvingGraph& g, ConditionId c,
                               const std::optional<std::string>& distinguished) {
  if (condition_needs_distinguished(c) && !distinguished)
    throw InputError("condition " + condition_token(c) + " needs a distinguished node");

  ConditionResult res{true, {}, {}};
  switch (c) {
    case ConditionId::C1:
    case ConditionId::C2: {
      NodeIndex u = g.node_index(*distinguished);
      ClosureGraph closure = transitive_closure(g, c == ConditionId::C2);
      for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (!closure.reaches(u, v)) res.counterexamples.push_back(g.node_name(v));
      res.holds = res.counterexamples.empty();
      if (res.holds) res.witnesses.push_back(*distinguished);
      break;
    }
    case ConditionId::C3: {
      NodeIndex u = g.node_index(*distinguished);
      StaticGraph under = g.underlying();
      for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (v != u && !under.has_edge(u, v)) res.counterexamples.push_back(g.node_name(v));
      res.holds = res.counterexamples.empty();
      if (res.holds) res.witnesses.push_back(*distinguished);
      break;
    }
    case ConditionId::C4: {
      ClosureGraph closure = transitive_closure(g, /*strict=*/false);
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        bool sink = true;
        for (NodeIndex u = 0; u < g.node_count(); ++u)
          if (!closure.reaches(u, v)) {
            sink = false;
            break;
          }
        if (sink)
          res.witnesses.push_back(g.node_name(v));
        else
          res.counterexamples.push_back(g.node_name(v));
      }
      res.holds = !res.witnesses.empty();
      if (res.holds) res.counterexamples.clear();
      break;
    }
  }
  return res;
}

}  // namespace evg
