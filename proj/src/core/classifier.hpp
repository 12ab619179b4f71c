#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/evolving_graph.hpp"
#include "core/journeys.hpp"

namespace evg {

// F1..F7 test the trace against reachability-over-time and underlying-graph
// shapes; the two probes check bounded edge recurrence and event periodicity
// within the observed window only.
enum class ClassId { F1, F2, F3, F4, F5, F6, F7, RecurrentB, Periodic };

std::string class_token(ClassId c);                 // "f1".."f7", "recurrence", "periodic"
ClassId class_from_token(const std::string& token);
const std::vector<ClassId>& all_class_ids();        // fixed report order

struct ClassReport {
  ClassId class_id;
  bool verdict = false;
  std::vector<std::string> witnesses;  // dominating vertices for F1/F3/F5/F7
  std::optional<double> value;         // bound (RecurrentB) or period (Periodic)
  std::vector<std::pair<std::string, std::string>> counterexamples;  // missing pairs
  std::string reason;
  bool window_only = false;  // probes only: verdict is about the observed window
};

// Membership test against precomputed closures; avoids recomputing H and
// H_strict when several classes are checked on one instance.
ClassReport classify_with(ClassId c, const ClosureGraph& closure,
                          const ClosureGraph& strict_closure, const StaticGraph& underlying);

ClassReport classify(const EvolvingGraph& g, ClassId c);

// Every F-class plus the recurrence probe (minimal bound when `bound` is
// absent); the periodicity probe runs only when a period is supplied.
std::vector<ClassReport> classify_all(const EvolvingGraph& g,
                                      std::optional<double> bound = std::nullopt,
                                      std::optional<double> period = std::nullopt);

// Every underlying edge must be absent for at most `bound` time, gaps to the
// trace boundaries included. Without a bound, reports the smallest bound that
// holds. False (with reason) when the underlying graph is disconnected.
ClassReport probe_recurrence(const EvolvingGraph& g, std::optional<double> bound);

// Edge presence must be invariant under a shift of `period` wherever both
// sides of the shift fall inside the trace window.
ClassReport probe_periodicity(const EvolvingGraph& g, double period);

// Verdicts for F1..F7 (index = class number - 1), computed in one pass.
std::array<bool, 7> f_class_memberships(const EvolvingGraph& g);

struct HierarchyViolation {
  size_t instance;
  ClassId subclass;
  ClassId superclass;
};

// Checks the nine inclusion edges of the class hierarchy on each instance:
// F6<F4, F6<F5, F4<F2, F4<F3, F5<F3, F5<F7, F2<F7, F2<F1, F3<F1.
std::vector<HierarchyViolation> check_hierarchy(const std::vector<EvolvingGraph>& instances);

// The (subclass, superclass) pairs checked above, in that order.
const std::vector<std::pair<ClassId, ClassId>>& hierarchy_edges();

}  // namespace evg
