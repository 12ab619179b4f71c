#include "core/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include "core/error.hpp"
#include "core/trace_io.hpp"

namespace evg {

std::string claim_kind_token(ClaimKind k) {
  return k == ClaimKind::Necessary ? "necessary" : "sufficient";
}

std::string verdict_token(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::InconclusiveTruncated: return "inconclusive-truncated";
  }
  return {};
}

std::string ph1_reading() {
  return "progression reading: every pair enabled at interval start must fire on its edge "
         "unless its guard is invalidated by the interval's end";
}

namespace {

void require_role_match(const RelabelingAlgorithm& algo, ConditionId condition) {
  if (!condition_matches_algorithm(condition, algo.name))
    throw InputError("condition " + condition_token(condition) +
                     " does not pair with algorithm " + algo.name);
}

void attach_evidence(ClaimResult& result, const EvolvingGraph& g,
                     const RelabelingAlgorithm& algo,
                     const std::optional<std::string>& distinguished,
                     const FinalState& final) {
  result.evidence = final.example;
  result.evidence_log = trace_to_log(g, algo, final.example);
  // A violation must replay; anything else is an engine defect.
  LabeledState replayed = replay(g, algo, distinguished, final.example);
  if (!(replayed.vertex_labels == final.labels))
    throw ContractViolation("violation evidence does not replay to its final state");
}

}  // namespace

ClaimResult verify_necessary(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                             ConditionId condition,
                             const std::optional<std::string>& distinguished,
                             const EnumerationLimits& limits, EnumerationMode mode) {
  require_role_match(algo, condition);
  ClaimResult result;
  result.claim = {algo.name, condition, ClaimKind::Necessary};
  result.distinguished = distinguished;

  ConditionResult cond = eval_condition(g, condition, distinguished);
  result.condition_holds = cond.holds;
  if (cond.holds) {
    result.verdict = Verdict::Consistent;
    result.vacuous = true;  // the claim constrains only condition-free graphs
    return result;
  }

  EnumerationResult enumeration = enumerate_executions(g, algo, distinguished, mode, limits);
  result.states_explored = enumeration.states_explored;
  result.executions_counted = enumeration.finals.size();
  if (enumeration.truncated) {
    result.verdict = Verdict::InconclusiveTruncated;
    return result;
  }
  for (const FinalState& final : enumeration.finals) {
    if (final.objective_met) {
      result.verdict = Verdict::Violated;
      attach_evidence(result, g, algo, distinguished, final);
      return result;
    }
  }
  result.verdict = Verdict::Consistent;
  return result;
}

ClaimResult verify_sufficient(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                              ConditionId condition,
                              const std::optional<std::string>& distinguished,
                              const EnumerationLimits& limits) {
  require_role_match(algo, condition);
  ClaimResult result;
  result.claim = {algo.name, condition, ClaimKind::Sufficient};
  result.distinguished = distinguished;

  ConditionResult cond = eval_condition(g, condition, distinguished);
  result.condition_holds = cond.holds;
  if (!cond.holds) {
    result.verdict = Verdict::Consistent;
    result.vacuous = true;  // the claim promises nothing without the condition
    return result;
  }

  EnumerationResult enumeration =
      enumerate_executions(g, algo, distinguished, EnumerationMode::Ph1Only, limits);
  result.states_explored = enumeration.states_explored;
  result.executions_counted = enumeration.finals.size();
  if (enumeration.truncated) {
    result.verdict = Verdict::InconclusiveTruncated;
    return result;
  }
  for (const FinalState& final : enumeration.finals) {
    if (!final.objective_met) {
      result.verdict = Verdict::Violated;
      attach_evidence(result, g, algo, distinguished, final);
      return result;
    }
  }
  result.verdict = Verdict::Consistent;
  return result;
}

const std::vector<Claim>& standard_claims() {
  static const std::vector<Claim> claims = {
      {"a1", ConditionId::C1, ClaimKind::Necessary},
      {"a1", ConditionId::C2, ClaimKind::Sufficient},
      {"a2", ConditionId::C3, ClaimKind::Necessary},
      {"a2", ConditionId::C3, ClaimKind::Sufficient},
      {"a3", ConditionId::C4, ClaimKind::Necessary}};
  return claims;
}

SweepResult sweep(const std::vector<Claim>& claims, const std::vector<SweepInstance>& instances,
                  const SweepOptions& options) {
  struct Cell {
    std::vector<ClaimResult> results;
    std::optional<std::pair<std::string, std::string>> error;
  };
  std::vector<Cell> cells(instances.size());

  auto work = [&](size_t index) {
    const SweepInstance& instance = instances[index];
    Cell& cell = cells[index];
    try {
      for (const Claim& claim : claims) {
        RelabelingAlgorithm algo = algorithm_from_token(claim.algo);
        std::vector<std::optional<std::string>> picks;
        if (condition_needs_distinguished(claim.condition)) {
          for (const std::string& node : instance.graph.nodes()) picks.emplace_back(node);
        } else {
          picks.emplace_back(std::nullopt);
        }
        for (const auto& pick : picks) {
          ClaimResult result =
              claim.kind == ClaimKind::Necessary
                  ? verify_necessary(instance.graph, algo, claim.condition, pick,
                                     options.limits)
                  : verify_sufficient(instance.graph, algo, claim.condition, pick,
                                      options.limits);
          result.instance_id = instance.id;
          cell.results.push_back(std::move(result));
        }
      }
    } catch (const std::exception& e) {
      cell.error = {instance.id, e.what()};
      cell.results.clear();
    }
  };

  int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (size_t i = 0; i < instances.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= instances.size()) return;
          work(i);
        }
      });
    for (std::thread& t : pool) t.join();
  }

  SweepResult out;
  for (const Claim& claim : claims) out.summaries.push_back({claim});
  for (Cell& cell : cells) {
    if (cell.error) {
      out.instance_errors.push_back(*cell.error);
      continue;
    }
    for (ClaimResult& result : cell.results) {
      size_t which = 0;
      for (size_t c = 0; c < claims.size(); ++c) {
        const Claim& claim = claims[c];
        if (claim.algo == result.claim.algo && claim.condition == result.claim.condition &&
            claim.kind == result.claim.kind) {
          which = c;
          break;
        }
      }
      ClaimSummary& summary = out.summaries[which];
      ++summary.checks;
      switch (result.verdict) {
        case Verdict::Consistent:
          result.vacuous ? ++summary.consistent_vacuous : ++summary.consistent_substantive;
          break;
        case Verdict::Violated:
          ++summary.violated;
          out.violations.push_back(std::move(result));
          break;
        case Verdict::InconclusiveTruncated:
          ++summary.truncated;
          out.violations.push_back(std::move(result));
          break;
      }
    }
  }
  return out;
}

std::vector<SweepInstance> instances_from_directory(
    const std::string& path, std::vector<std::pair<std::string, std::string>>& errors) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".evg")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<SweepInstance> instances;
  for (const fs::path& file : files) {
    try {
      instances.push_back({file.filename().string(), load_file(file.string())});
    } catch (const std::exception& e) {
      errors.emplace_back(file.filename().string(), e.what());
    }
  }
  return instances;
}

}  // namespace evg
