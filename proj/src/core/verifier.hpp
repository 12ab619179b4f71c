#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/algorithms.hpp"
#include "core/relabeling.hpp"

namespace evg {

enum class ClaimKind { Necessary, Sufficient };
enum class Verdict { Consistent, Violated, InconclusiveTruncated };

std::string claim_kind_token(ClaimKind k);
std::string verdict_token(Verdict v);

struct Claim {
  std::string algo;  // a1 | a2 | a3
  ConditionId condition;
  ClaimKind kind;
};

struct ClaimResult {
  Claim claim;
  std::string instance_id;
  std::optional<std::string> distinguished;
  Verdict verdict = Verdict::Consistent;
  bool condition_holds = false;
  bool vacuous = false;  // the condition's truth value made the claim trivial
  std::optional<ExecutionTrace> evidence;  // a violating execution, replayable
  std::string evidence_log;
  uint64_t states_explored = 0;
  uint64_t executions_counted = 0;  // distinct reachable final states
};

// Checks "no success without the condition": when the condition fails on g,
// exhausts every interleaving (mode All by default, reflecting that the
// definition quantifies over all executions) and reports Violated if any
// reaches the objective. When the condition holds the claim is vacuous.
ClaimResult verify_necessary(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                             ConditionId condition,
                             const std::optional<std::string>& distinguished,
                             const EnumerationLimits& limits = {},
                             EnumerationMode mode = EnumerationMode::All);

// Checks "no failure with the condition": when the condition holds on g,
// exhausts every progression-compliant execution and reports Violated if any
// misses the objective. When the condition fails the claim is vacuous.
ClaimResult verify_sufficient(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                              ConditionId condition,
                              const std::optional<std::string>& distinguished,
                              const EnumerationLimits& limits = {});

struct SweepInstance {
  std::string id;
  EvolvingGraph graph;
};

struct ClaimSummary {
  Claim claim;
  uint64_t checks = 0;
  uint64_t consistent_vacuous = 0;
  uint64_t consistent_substantive = 0;
  uint64_t violated = 0;
  uint64_t truncated = 0;
};

struct SweepResult {
  std::vector<ClaimSummary> summaries;               // one per claim, claim order
  std::vector<ClaimResult> violations;               // violated or truncated checks
  std::vector<std::pair<std::string, std::string>> instance_errors;  // (id, message)

  bool clean() const { return violations.empty() && instance_errors.empty(); }
};

struct SweepOptions {
  EnumerationLimits limits;
  int workers = 1;
};

// Runs every claim against every instance. Claims with a distinguished-node
// role are checked once per vertex. Aggregation is order-insensitive across
// workers; the result depends only on the inputs.
SweepResult sweep(const std::vector<Claim>& claims, const std::vector<SweepInstance>& instances,
                  const SweepOptions& options = {});

// Loads every *.evg file under `path` (sorted by name). Unreadable or
// malformed files land in `errors` instead of stopping the sweep.
std::vector<SweepInstance> instances_from_directory(
    const std::string& path, std::vector<std::pair<std::string, std::string>>& errors);

// The five claims the bundled algorithms justify; the standard sweep set.
const std::vector<Claim>& standard_claims();

// One-line statement of which progression-hypothesis reading the verifier
// enforces; included in reports.
std::string ph1_reading();

}  // namespace evg
