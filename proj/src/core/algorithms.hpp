#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/evolving_graph.hpp"
#include "core/relabeling.hpp"

namespace evg {

// a1: information propagation from a distinguished emitter.
//     I-N -> I-I; succeeds when every vertex is informed.
// a2: counting by a pre-selected counter vertex.
//     (C,i)-N -> (C,i+1)-F; succeeds when no vertex is left N.
// a3: decentralized counting; every vertex starts as a counter.
//     (C,i)-(C,j) -> (C,i+j)-F; succeeds when exactly one counter remains.
RelabelingAlgorithm algo_a1();
RelabelingAlgorithm algo_a2();
RelabelingAlgorithm algo_a3();

RelabelingAlgorithm algorithm_from_token(const std::string& token);  // "a1" | "a2" | "a3"

// Topology conditions tied to the three algorithms. C1/C2 take the emitter,
// C3 the counter, C4 is closed.
enum class ConditionId { C1, C2, C3, C4 };

ConditionId condition_from_token(const std::string& token);  // "c1".."c4"
std::string condition_token(ConditionId c);
bool condition_needs_distinguished(ConditionId c);

// Does `algo` pair with `c` (same distinguished-node role)?
bool condition_matches_algorithm(ConditionId c, const std::string& algo_name);

struct ConditionResult {
  bool holds;
  std::vector<std::string> witnesses;        // vertices establishing the condition
  std::vector<std::string> counterexamples;  // vertices violating it
};

// C1: every vertex lies in the distinguished vertex's horizon.
// C2: as C1 but through strict journeys.
// C3: the distinguished vertex shares an underlying edge with every other.
// C4: some vertex lies in every horizon.
ConditionResult eval_condition(const EvolvingGraph& g, ConditionId c,
                               const std::optional<std::string>& distinguished);

}  // namespace evg
