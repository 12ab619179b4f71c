#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/classifier.hpp"
#include "core/error.hpp"
#include "core/trace_io.hpp"
#include "support/fixtures.hpp"

using namespace evg;

namespace {

ClassReport report_for(const std::vector<ClassReport>& reports, ClassId c) {
  for (const ClassReport& r : reports)
    if (r.class_id == c) return r;
  REQUIRE(false);
  return {};
}

std::set<std::string> witness_set(const ClassReport& r) {
  return {r.witnesses.begin(), r.witnesses.end()};
}

// Runs the trace backwards: interval i becomes interval k-1-i.
EvolvingGraph reverse_time(const EvolvingGraph& g) {
  uint32_t k = static_cast<uint32_t>(g.interval_count());
  EvolvingGraphBuilder b;
  for (const std::string& n : g.nodes()) b.add_node(n);
  b.set_dates(g.dates());
  for (size_t pos = 0; pos < g.edge_keys().size(); ++pos) {
    const Edge& e = g.edge_keys()[pos];
    for (const IndexInterval& iv : g.edge_intervals(pos))
      b.add_presence(g.node_name(e.a), g.node_name(e.b), k - iv.end, k - iv.begin);
  }
  return b.build();
}

}  // namespace

TEST_CASE("membership table of the five-node closure example") {
  std::vector<ClassReport> reports = classify_all(testsupport::eg5());

  CHECK(report_for(reports, ClassId::F1).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F1)) ==
        std::set<std::string>{"a", "b", "c"});

  ClassReport f2 = report_for(reports, ClassId::F2);
  CHECK_FALSE(f2.verdict);
  CHECK(std::find(f2.counterexamples.begin(), f2.counterexamples.end(),
                  std::make_pair(std::string("e"), std::string("a"))) !=
        f2.counterexamples.end());

  CHECK(report_for(reports, ClassId::F3).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F3)).count("a"));
  CHECK_FALSE(report_for(reports, ClassId::F4).verdict);
  CHECK(report_for(reports, ClassId::F5).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F5)) == std::set<std::string>{"c"});
  CHECK_FALSE(report_for(reports, ClassId::F6).verdict);
  CHECK(report_for(reports, ClassId::F7).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F7)) ==
        std::set<std::string>{"c", "d", "e"});
}

TEST_CASE("membership of the moving-link example") {
  std::vector<ClassReport> reports = classify_all(testsupport::eg1());
  CHECK(report_for(reports, ClassId::F1).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F1)).count("a"));
  CHECK_FALSE(report_for(reports, ClassId::F2).verdict);
  CHECK(report_for(reports, ClassId::F7).verdict);
  CHECK(witness_set(report_for(reports, ClassId::F7)).count("c"));
}

TEST_CASE("degenerate instances") {
  SUBCASE("complete static graph is in every class") {
    EvolvingGraph complete = testsupport::load_fixture("complete3.evg");
    for (ClassId c :
         {ClassId::F1, ClassId::F2, ClassId::F3, ClassId::F4, ClassId::F5, ClassId::F6,
          ClassId::F7})
      CHECK(classify(complete, c).verdict);
  }
  SUBCASE("an edgeless graph is in none") {
    EvolvingGraph none = testsupport::load_fixture("empty.evg");
    for (ClassId c :
         {ClassId::F1, ClassId::F2, ClassId::F3, ClassId::F4, ClassId::F5, ClassId::F6,
          ClassId::F7})
      CHECK_FALSE(classify(none, c).verdict);
  }
  SUBCASE("a single vertex is in every class") {
    EvolvingGraph lone = load("EVG 1\nnodes a\ndates 0 1\n");
    for (ClassId c :
         {ClassId::F1, ClassId::F2, ClassId::F3, ClassId::F4, ClassId::F5, ClassId::F6,
          ClassId::F7})
      CHECK(classify(lone, c).verdict);
  }
}

TEST_CASE("class report order is fixed") {
  std::vector<ClassReport> reports = classify_all(testsupport::eg1(), std::nullopt, 1.0);
  REQUIRE(reports.size() == 9);
  for (size_t i = 0; i < 7; ++i)
    CHECK(reports[i].class_id == static_cast<ClassId>(i));
  CHECK(reports[7].class_id == ClassId::RecurrentB);
  CHECK(reports[8].class_id == ClassId::Periodic);
  CHECK(reports[7].window_only);
  CHECK(reports[8].window_only);
}

TEST_CASE("bounded recurrence measures the largest absence gap") {
  EvolvingGraph g = load(
      "EVG 1\nnodes a b\ndates 0 1 2 3 4\nedge a b 0 1\nedge a b 3 4\n");

  ClassReport minimal = probe_recurrence(g, std::nullopt);
  CHECK(minimal.verdict);
  CHECK(minimal.value == 2.0);  // absent over [1,3)

  CHECK(probe_recurrence(g, 2.0).verdict);
  CHECK_FALSE(probe_recurrence(g, 1.9).verdict);

  SUBCASE("boundary gaps count") {
    EvolvingGraph late = load("EVG 1\nnodes a b\ndates 0 1 2 3 4\nedge a b 3 4\n");
    CHECK(probe_recurrence(late, std::nullopt).value == 3.0);  // silent until t=3
    EvolvingGraph early = load("EVG 1\nnodes a b\ndates 0 1 2 3 4\nedge a b 0 1\n");
    CHECK(probe_recurrence(early, std::nullopt).value == 3.0);  // gone after t=1
  }
}

TEST_CASE("bounded recurrence on trivial shapes") {
  EvolvingGraph always = testsupport::load_fixture("complete3.evg");
  ClassReport r = probe_recurrence(always, std::nullopt);
  CHECK(r.verdict);
  CHECK(r.value == 0.0);

  EvolvingGraph split = testsupport::dg();
  ClassReport disconnected = probe_recurrence(split, std::nullopt);
  CHECK_FALSE(disconnected.verdict);
  CHECK(disconnected.reason == "underlying graph not connected");
}

TEST_CASE("periodicity is a shift test on interval endpoints") {
  EvolvingGraph g = load(
      "EVG 1\nnodes a b\ndates 0 1 2 3 4\nedge a b 0 1\nedge a b 2 3\n");
  CHECK(probe_periodicity(g, 2.0).verdict);
  CHECK_FALSE(probe_periodicity(g, 1.0).verdict);

  EvolvingGraph stat = testsupport::load_fixture("complete3.evg");
  CHECK(probe_periodicity(stat, 0.25).verdict);
  CHECK(probe_periodicity(stat, 100.0).verdict);  // nothing to compare: vacuous

  CHECK_THROWS_AS(probe_periodicity(g, 0.0), InputError);
  CHECK_THROWS_AS(probe_periodicity(g, -1.0), InputError);
}

TEST_CASE("a period that holds keeps holding when doubled inside the window") {
  EvolvingGraph g = load(
      "EVG 1\nnodes a b\ndates 0 1 2 3 4 5 6\nedge a b 0 1\nedge a b 2 3\nedge a b 4 5\n");
  REQUIRE(probe_periodicity(g, 2.0).verdict);
  CHECK(probe_periodicity(g, 4.0).verdict);
}

TEST_CASE("completeness verdicts match arc counts") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 6, 5);
    size_t n = g.node_count();
    ClosureGraph h = transitive_closure(g, false);
    ClosureGraph hs = transitive_closure(g, true);
    CHECK(classify(g, ClassId::F2).verdict == (h.arc_count() == n * (n - 1)));
    CHECK(classify(g, ClassId::F4).verdict == (hs.arc_count() == n * (n - 1)));

    // Dominating underlying vertices are exactly the degree-(n-1) ones.
    StaticGraph under = g.underlying();
    std::set<std::string> by_degree;
    for (NodeIndex u = 0; u < n; ++u)
      if (under.degree(u) == n - 1) by_degree.insert(g.node_name(u));
    CHECK(witness_set(classify(g, ClassId::F5)) == by_degree);
  }
}

TEST_CASE("running the trace backwards swaps sources and sinks") {
  for (uint64_t seed = 60; seed < 90; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 5, 4);
    EvolvingGraph back = reverse_time(g);
    CHECK(witness_set(classify(g, ClassId::F1)) == witness_set(classify(back, ClassId::F7)));
    CHECK(witness_set(classify(g, ClassId::F7)) == witness_set(classify(back, ClassId::F1)));
  }
}

TEST_CASE("per-instance verdict chains follow the hierarchy") {
  for (uint64_t seed = 100; seed < 160; ++seed) {
    EvolvingGraph g = testsupport::random_instance(seed, 6, 4);
    std::array<bool, 7> m = f_class_memberships(g);
    auto in = [&](ClassId c) { return m[static_cast<size_t>(c)]; };
    if (in(ClassId::F4)) CHECK(in(ClassId::F2));
    if (in(ClassId::F2)) CHECK(in(ClassId::F1));
    if (in(ClassId::F4)) CHECK(in(ClassId::F3));
    if (in(ClassId::F3)) CHECK(in(ClassId::F1));
  }
}

TEST_CASE("no instance violates the nine inclusion edges") {
  std::vector<EvolvingGraph> instances;
  instances.push_back(testsupport::eg1());
  instances.push_back(testsupport::eg2());
  instances.push_back(testsupport::eg5());
  instances.push_back(testsupport::dg());
  instances.push_back(testsupport::load_fixture("complete3.evg"));
  for (uint64_t seed = 0; seed < 200; ++seed)
    instances.push_back(testsupport::random_instance(seed, 6, 5));

  CHECK(check_hierarchy(instances).empty());
  CHECK(hierarchy_edges().size() == 9);
}

TEST_CASE("class tokens round-trip") {
  for (ClassId c : all_class_ids()) CHECK(class_from_token(class_token(c)) == c);
  CHECK_THROWS_AS(class_from_token("f9"), InputError);
}
