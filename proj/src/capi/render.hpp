#pragma once

#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/relabeling.hpp"
#include "core/verifier.hpp"

namespace evg {

std::string render_classify_table(const std::vector<ClassReport>& reports);
std::string render_classify_json(const std::vector<ClassReport>& reports);

std::string render_run_report(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                              const ExecutionTrace& trace, bool objective_met);

std::string render_verify_report(const ClaimResult& result);

struct HierarchyStats {
  uint32_t trials = 0;
  uint32_t nodes = 0;
  uint32_t intervals = 0;
  double p_on = 0;
  double p_off = 0;
  uint64_t seed = 0;
  std::array<uint64_t, 7> membership_counts{};
  std::vector<HierarchyViolation> violations;
};

std::string render_hierarchy_report(const HierarchyStats& stats);

}  // namespace evg
