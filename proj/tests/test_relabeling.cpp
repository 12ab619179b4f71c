#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/algorithms.hpp"
#include "core/error.hpp"
#include "core/journeys.hpp"
#include "core/relabeling.hpp"
#include "core/trace_io.hpp"
#include "support/fixtures.hpp"

using namespace evg;

namespace {

LabeledState state_of(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                      const std::optional<std::string>& start, uint32_t interval = 0) {
  LabeledState s;
  s.vertex_labels = initial_labels(g, algo, start);
  s.interval_index = interval;
  return s;
}

std::set<std::pair<std::string, std::string>> applicable_names(
    const EvolvingGraph& g, const std::vector<std::pair<uint32_t, OrientedEdge>>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [r, e] : pairs) out.insert({g.node_name(e.from), g.node_name(e.to)});
  return out;
}

Label label_of(const EvolvingGraph& g, const LabeledState& s, const std::string& node) {
  return s.vertex_labels[g.node_index(node)];
}

int count_tag(const LabeledState& s, const std::string& tag) {
  int n = 0;
  for (const Label& l : s.vertex_labels)
    if (l.tag == tag) ++n;
  return n;
}

}  // namespace

TEST_CASE("applicable pairs respect guards, presence and orientation") {
  EvolvingGraph g1 = testsupport::eg1();
  RelabelingAlgorithm a1 = algo_a1();

  auto pairs = applicable(state_of(g1, a1, "a"), g1, a1);
  CHECK(applicable_names(g1, pairs) ==
        std::set<std::pair<std::string, std::string>>{{"a", "b"}});

  LabeledState all_informed = state_of(g1, a1, "a");
  for (Label& l : all_informed.vertex_labels) l = Label{"I", std::nullopt};
  CHECK(applicable(all_informed, g1, a1).empty());

  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a3 = algo_a3();
  auto a3_pairs = applicable(state_of(g5, a3, std::nullopt), g5, a3);
  CHECK(applicable_names(g5, a3_pairs) ==
        std::set<std::pair<std::string, std::string>>{
            {"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}});
  // Deterministic order: (rule, from, to).
  CHECK(a3_pairs.size() == 4);
  CHECK(a3_pairs[0].second == OrientedEdge{g5.node_index("a"), g5.node_index("b")});
  CHECK(a3_pairs[1].second == OrientedEdge{g5.node_index("a"), g5.node_index("c")});
}

TEST_CASE("apply rewrites exactly the endpoint pair") {
  EvolvingGraph g1 = testsupport::eg1();

  SUBCASE("propagation") {
    RelabelingAlgorithm a1 = algo_a1();
    LabeledState s = state_of(g1, a1, "a");
    LabeledState next =
        apply_rule(s, g1, a1, 0, {g1.node_index("a"), g1.node_index("b")});
    CHECK(label_of(g1, next, "a") == Label{"I", std::nullopt});
    CHECK(label_of(g1, next, "b") == Label{"I", std::nullopt});
    CHECK(label_of(g1, next, "c") == Label{"N", std::nullopt});
    CHECK(next.step_count == 1);
  }
  SUBCASE("central counting increments the counter") {
    RelabelingAlgorithm a2 = algo_a2();
    LabeledState s = state_of(g1, a2, "a");
    s.vertex_labels[g1.node_index("a")] = Label{"C", 3};
    LabeledState next =
        apply_rule(s, g1, a2, 0, {g1.node_index("a"), g1.node_index("b")});
    CHECK(label_of(g1, next, "a") == Label{"C", 4});
    CHECK(label_of(g1, next, "b") == Label{"F", std::nullopt});
  }
  SUBCASE("decentralized counting sums the payloads") {
    RelabelingAlgorithm a3 = algo_a3();
    LabeledState s = state_of(g1, a3, std::nullopt);
    s.vertex_labels[g1.node_index("a")] = Label{"C", 2};
    s.vertex_labels[g1.node_index("b")] = Label{"C", 3};
    LabeledState next =
        apply_rule(s, g1, a3, 0, {g1.node_index("a"), g1.node_index("b")});
    CHECK(label_of(g1, next, "a") == Label{"C", 5});
    CHECK(label_of(g1, next, "b") == Label{"F", std::nullopt});
  }
}

TEST_CASE("apply rejects non-applicable pairs") {
  EvolvingGraph g1 = testsupport::eg1();
  RelabelingAlgorithm a1 = algo_a1();
  LabeledState s = state_of(g1, a1, "a");

  // Guard fails on the (b,a) orientation.
  CHECK_THROWS_AS(apply_rule(s, g1, a1, 0, {g1.node_index("b"), g1.node_index("a")}),
                  ContractViolation);
  // Edge b-c is not in the first snapshot.
  CHECK_THROWS_AS(apply_rule(s, g1, a1, 0, {g1.node_index("b"), g1.node_index("c")}),
                  ContractViolation);
  CHECK_THROWS_AS(apply_rule(s, g1, a1, 7, {0, 1}), ContractViolation);
}

TEST_CASE("greedy runs match the worked examples") {
  EvolvingGraph g1 = testsupport::eg1();
  RelabelingAlgorithm a1 = algo_a1();

  ExecutionTrace from_a = run(g1, a1, "a", SchedulerId::Ph1Greedy, 0);
  CHECK(a1.objective(from_a.final_state));
  CHECK(count_tag(from_a.final_state, "I") == 3);

  ExecutionTrace from_c = run(g1, a1, "c", SchedulerId::Ph1Greedy, 0);
  CHECK_FALSE(a1.objective(from_c.final_state));
  CHECK(label_of(g1, from_c.final_state, "a") == Label{"N", std::nullopt});

  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a2 = algo_a2();
  ExecutionTrace counted = run(g5, a2, "c", SchedulerId::Ph1Greedy, 0);
  CHECK(a2.objective(counted.final_state));
  CHECK(label_of(g5, counted.final_state, "c") == Label{"C", 5});
  for (const char* other : {"a", "b", "d", "e"})
    CHECK(label_of(g5, counted.final_state, other) == Label{"F", std::nullopt});
}

TEST_CASE("run needs a start node exactly when the algorithm says so") {
  EvolvingGraph g1 = testsupport::eg1();
  CHECK_THROWS_AS(run(g1, algo_a1(), std::nullopt, SchedulerId::Ph1Greedy, 0), InputError);
  CHECK_THROWS_AS(run(g1, algo_a2(), "nope", SchedulerId::Ph1Greedy, 0), InputError);
  CHECK_NOTHROW(run(g1, algo_a3(), std::nullopt, SchedulerId::Ph1Greedy, 0));
}

TEST_CASE("traces alternate applies with one event per boundary and replay") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a2 = algo_a2();
  ExecutionTrace trace = run(g5, a2, "c", SchedulerId::Ph1Greedy, 0);

  int events = 0;
  uint32_t last_interval = 0;
  for (const TraceStep& s : trace.steps) {
    if (s.kind == TraceStep::Kind::Event) {
      ++events;
      CHECK(s.interval == last_interval + 1);
      last_interval = s.interval;
    } else {
      CHECK(s.interval == last_interval);
    }
  }
  CHECK(events == 3);  // boundaries t_1..t_3 of the four-interval trace

  LabeledState replayed = replay(g5, a2, "c", trace);
  CHECK(replayed.vertex_labels == trace.final_state.vertex_labels);
}

TEST_CASE("random-scheduler runs are reproducible and replayable") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a3 = algo_a3();

  ExecutionTrace t1 = run(g5, a3, std::nullopt, SchedulerId::Random, 42);
  ExecutionTrace t2 = run(g5, a3, std::nullopt, SchedulerId::Random, 42);
  CHECK(trace_to_log(g5, a3, t1) == trace_to_log(g5, a3, t2));

  ExecutionTrace other_seed = run(g5, a3, std::nullopt, SchedulerId::Random, 43);
  // Not asserting inequality (two seeds may coincide); both must replay.
  CHECK(replay(g5, a3, std::nullopt, t1).vertex_labels == t1.final_state.vertex_labels);
  CHECK(replay(g5, a3, std::nullopt, other_seed).vertex_labels ==
        other_seed.final_state.vertex_labels);
}

TEST_CASE("the frame rule holds along greedy and random executions") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 5, 4);
    RelabelingAlgorithm a3 = algo_a3();
    LabeledState state = state_of(g, a3, std::nullopt);
    for (uint32_t i = 0; i < g.interval_count(); ++i) {
      state.interval_index = i;
      for (;;) {
        auto pairs = applicable(state, g, a3);
        if (pairs.empty()) break;
        auto [r, e] = pairs[seed % pairs.size()];
        LabeledState next = apply_rule(state, g, a3, r, e);
        for (NodeIndex v = 0; v < g.node_count(); ++v)
          if (v != e.from && v != e.to)
            CHECK(next.vertex_labels[v] == state.vertex_labels[v]);
        state = next;
      }
    }
  }
}

TEST_CASE("exhaustive search on the moving-link example") {
  EvolvingGraph g1 = testsupport::eg1();
  RelabelingAlgorithm a1 = algo_a1();

  SUBCASE("no interleaving informs everyone from the late node") {
    EnumerationResult all = enumerate_executions(g1, a1, "c", EnumerationMode::All);
    CHECK_FALSE(all.truncated);
    CHECK(all.states_explored < 100);
    CHECK_FALSE(all.any_objective_met());
  }
  SUBCASE("every compliant execution informs everyone from the early node") {
    EnumerationResult ph1 = enumerate_executions(g1, a1, "a", EnumerationMode::Ph1Only);
    CHECK_FALSE(ph1.truncated);
    REQUIRE_FALSE(ph1.finals.empty());
    CHECK(ph1.all_objectives_met());
    CHECK(ph1.finals.size() == 1);  // the progression pins the outcome here
  }
  SUBCASE("unconstrained finals from the early node") {
    EnumerationResult all = enumerate_executions(g1, a1, "a", EnumerationMode::All);
    CHECK(all.finals.size() == 3);  // stall, inform b only, inform b then c
    CHECK(all.any_objective_met());
    CHECK_FALSE(all.all_objectives_met());
  }
}

TEST_CASE("every enumerated final carries a replaying example trace") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a3 = algo_a3();
  EnumerationResult res = enumerate_executions(g5, a3, std::nullopt, EnumerationMode::All);
  CHECK_FALSE(res.truncated);
  for (const FinalState& f : res.finals) {
    LabeledState replayed = replay(g5, a3, std::nullopt, f.example);
    CHECK(replayed.vertex_labels == f.labels);
  }
}

TEST_CASE("disjoint components keep at least two counters") {
  EvolvingGraph dg = testsupport::dg();
  RelabelingAlgorithm a3 = algo_a3();
  EnumerationResult all = enumerate_executions(dg, a3, std::nullopt, EnumerationMode::All);
  CHECK_FALSE(all.truncated);
  CHECK(all.finals.size() == 9);  // three outcomes per persistent pair
  for (const FinalState& f : all.finals) {
    int counters = 0;
    for (const Label& l : f.labels)
      if (l.tag == "C") ++counters;
    CHECK(counters >= 2);
  }
  CHECK_FALSE(all.any_objective_met());
}

TEST_CASE("progression-compliant finals are a subset of unconstrained finals") {
  for (uint64_t seed = 40; seed < 60; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 4, 3);
    for (const char* token : {"a1", "a3"}) {
      RelabelingAlgorithm algo = algorithm_from_token(token);
      std::optional<std::string> start;
      if (algo.needs_start) start = g.node_name(0);
      EnumerationResult all = enumerate_executions(g, algo, start, EnumerationMode::All);
      EnumerationResult ph1 = enumerate_executions(g, algo, start, EnumerationMode::Ph1Only);
      REQUIRE_FALSE(all.truncated);
      REQUIRE_FALSE(ph1.truncated);

      std::set<std::vector<Label>> all_labels;
      for (const FinalState& f : all.finals) all_labels.insert(f.labels);
      for (const FinalState& f : ph1.finals) CHECK(all_labels.count(f.labels));
    }
  }
}

TEST_CASE("progression forces a single counter on a persistent complete graph") {
  EvolvingGraph g = testsupport::load_fixture("complete3.evg");
  RelabelingAlgorithm a3 = algo_a3();
  EnumerationResult ph1 = enumerate_executions(g, a3, std::nullopt, EnumerationMode::Ph1Only);
  CHECK_FALSE(ph1.truncated);
  REQUIRE_FALSE(ph1.finals.empty());
  CHECK(ph1.all_objectives_met());
}

TEST_CASE("counter payloads always sum to the node count") {
  for (uint64_t seed = 80; seed < 100; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 5, 4);
    RelabelingAlgorithm a3 = algo_a3();
    enumerate_executions(g, a3, std::nullopt, EnumerationMode::All, {},
                         [&](const LabeledState& s) {
                           int64_t sum = 0;
                           for (const Label& l : s.vertex_labels)
                             if (l.tag == "C") sum += *l.payload;
                           CHECK(sum == static_cast<int64_t>(g.node_count()));
                         });
  }
}

TEST_CASE("the informed set only grows along propagation traces") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a1 = algo_a1();
  ExecutionTrace trace = run(g5, a1, "b", SchedulerId::Random, 7);

  LabeledState state = state_of(g5, a1, "b");
  int informed = count_tag(state, "I");
  for (const TraceStep& s : trace.steps) {
    if (s.kind == TraceStep::Kind::Event) {
      state.interval_index = s.interval;
      continue;
    }
    state = apply_rule(state, g5, a1, s.rule_index, s.edge);
    CHECK(count_tag(state, "I") >= informed);
    informed = count_tag(state, "I");
  }
}

TEST_CASE("counters never leave their own horizon") {
  for (uint64_t seed = 120; seed < 140; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 5, 4);
    RelabelingAlgorithm a3 = algo_a3();
    ClosureGraph closure = transitive_closure(g, false);
    EnumerationResult all = enumerate_executions(g, a3, std::nullopt, EnumerationMode::All);
    REQUIRE_FALSE(all.truncated);
    for (const FinalState& f : all.finals) {
      for (NodeIndex u = 0; u < g.node_count(); ++u) {
        bool counter_in_horizon = false;
        for (NodeIndex v = 0; v < g.node_count() && !counter_in_horizon; ++v)
          if (closure.reaches(u, v) && f.labels[v].tag == "C") counter_in_horizon = true;
        CHECK(counter_in_horizon);
      }
    }
  }
}

TEST_CASE("tiny limits yield an explicit truncation, never a silent cut") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a3 = algo_a3();
  EnumerationLimits limits;
  limits.max_states = 3;
  EnumerationResult res = enumerate_executions(g5, a3, std::nullopt, EnumerationMode::All,
                                               limits);
  CHECK(res.truncated);

  EnumerationLimits few_moves;
  few_moves.max_transitions = 5;
  EnumerationResult capped = enumerate_executions(g5, a3, std::nullopt,
                                                  EnumerationMode::All, few_moves);
  CHECK(capped.truncated);
  CHECK(capped.transitions <= 6);

  EnumerationLimits zero;
  zero.max_states = 0;
  CHECK_THROWS_AS(enumerate_executions(g5, a3, std::nullopt, EnumerationMode::All, zero),
                  InputError);
}

namespace {

// Sequence-level reference enumerator: walks every application sequence
// explicitly, tracking per-interval start labels and fired edges, and
// re-derives compliance from those raw records. No state canonicalization,
// no obligation precomputation; exists to cross-check enumerate_executions.
struct SequenceEnumerator {
  const EvolvingGraph& g;
  const RelabelingAlgorithm& algo;
  bool ph1;
  std::set<std::vector<Label>> finals;
  long budget = 2'000'000;

  bool compliant(const LabeledState& interval_start, const LabeledState& now,
                 const std::set<Edge>& fired) const {
    for (const auto& [r, e] : applicable(interval_start, g, algo)) {
      if (fired.count(Edge(e.from, e.to))) continue;
      if (algo.rules[r].guard(now.vertex_labels[e.from], now.vertex_labels[e.to]))
        return false;
    }
    return true;
  }

  void walk(LabeledState state, LabeledState interval_start, std::set<Edge> fired) {
    REQUIRE(--budget > 0);
    bool may_close = !ph1 || compliant(interval_start, state, fired);
    if (may_close) {
      if (state.interval_index + 1 == g.interval_count()) {
        finals.insert(state.vertex_labels);
      } else {
        LabeledState next = state;
        next.interval_index++;
        next.step_count = 0;
        walk(next, next, {});
      }
    }
    for (const auto& [r, e] : applicable(state, g, algo)) {
      std::set<Edge> fired_next = fired;
      fired_next.insert(Edge(e.from, e.to));
      walk(apply_rule(state, g, algo, r, e), interval_start, std::move(fired_next));
    }
  }

  std::set<std::vector<Label>> run(const std::optional<std::string>& start) {
    LabeledState init;
    init.vertex_labels = initial_labels(g, algo, start);
    walk(init, init, {});
    return finals;
  }
};

}  // namespace

TEST_CASE("the greedy scheduler over-satisfies the progression requirement") {
  for (uint64_t seed = 400; seed < 430; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 5, 4);
    for (const char* token : {"a1", "a2", "a3"}) {
      RelabelingAlgorithm algo = algorithm_from_token(token);
      std::optional<std::string> start;
      if (algo.needs_start) start = g.node_name(0);
      ExecutionTrace trace = run(g, algo, start, SchedulerId::Ph1Greedy, 0);

      // Replay the trace interval by interval and re-derive compliance from
      // the raw history, the same way the reference enumerator does.
      SequenceEnumerator reference{g, algo, true};
      LabeledState state;
      state.vertex_labels = initial_labels(g, algo, start);
      LabeledState interval_start = state;
      std::set<Edge> fired;
      for (const TraceStep& s : trace.steps) {
        if (s.kind == TraceStep::Kind::Event) {
          CHECK(reference.compliant(interval_start, state, fired));
          state.interval_index = s.interval;
          state.step_count = 0;
          interval_start = state;
          fired.clear();
        } else {
          state = apply_rule(state, g, algo, s.rule_index, s.edge);
          fired.insert(Edge(s.edge.from, s.edge.to));
        }
      }
      CHECK(reference.compliant(interval_start, state, fired));
    }
  }
}

TEST_CASE("canonicalized search matches a raw sequence enumeration") {
  std::vector<EvolvingGraph> instances;
  instances.push_back(testsupport::eg1());
  instances.push_back(testsupport::load_fixture("complete3.evg"));
  instances.push_back(testsupport::dg());
  for (uint64_t seed = 300; seed < 312; ++seed)
    instances.push_back(testsupport::random_instance(seed, 3, 3));

  for (const EvolvingGraph& g : instances) {
    for (const char* token : {"a1", "a3"}) {
      RelabelingAlgorithm algo = algorithm_from_token(token);
      std::optional<std::string> start;
      if (algo.needs_start) start = g.node_name(0);
      for (bool ph1 : {false, true}) {
        EnumerationMode mode = ph1 ? EnumerationMode::Ph1Only : EnumerationMode::All;
        EnumerationResult fast = enumerate_executions(g, algo, start, mode);
        REQUIRE_FALSE(fast.truncated);
        std::set<std::vector<Label>> fast_finals;
        for (const FinalState& f : fast.finals) fast_finals.insert(f.labels);

        SequenceEnumerator reference{g, algo, ph1};
        CHECK(fast_finals == reference.run(start));
      }
    }
  }
}

TEST_CASE("execution logs round-trip through the parser") {
  EvolvingGraph g5 = testsupport::eg5();
  RelabelingAlgorithm a2 = algo_a2();
  ExecutionTrace trace = run(g5, a2, "c", SchedulerId::Ph1Greedy, 0);
  std::string log = trace_to_log(g5, a2, trace);

  LabeledState replayed = replay_log(g5, a2, "c", log);
  CHECK(replayed.vertex_labels == trace.final_state.vertex_labels);

  SUBCASE("lying LABEL lines are caught") {
    std::string tampered = log;
    auto pos = tampered.find("LABEL c C:5");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 11, "LABEL c C:4");
    CHECK_THROWS_AS(replay_log(g5, a2, "c", tampered), ContractViolation);
  }
  SUBCASE("malformed lines are parse errors with a line number") {
    CHECK_THROWS_AS(replay_log(g5, a2, "c", "APPLY r1 c\n"), ParseError);
    CHECK_THROWS_AS(replay_log(g5, a2, "c", "NONSENSE\n"), ParseError);
    CHECK_THROWS_AS(replay_log(g5, a2, "c", "EVENT -> interval x\n"), ParseError);
  }
  SUBCASE("steps outside their interval are contract violations") {
    CHECK_THROWS_AS(replay_log(g5, a2, "c", "APPLY r1 c a @interval=1\n"),
                    ContractViolation);
    CHECK_THROWS_AS(replay_log(g5, a2, "c", "EVENT -> interval 2\n"), ContractViolation);
  }
}
