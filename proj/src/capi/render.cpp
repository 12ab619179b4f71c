#include "capi/render.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "core/trace_io.hpp"

namespace evg {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string witness_cell(const ClassReport& r) {
  if (r.class_id == ClassId::RecurrentB)
    return r.value ? "bound=" + format_date(*r.value) : "";
  if (r.class_id == ClassId::Periodic)
    return r.value ? "period=" + format_date(*r.value) : "";
  return join(r.witnesses, ",");
}

std::string note_cell(const ClassReport& r) {
  std::vector<std::string> parts;
  if (r.window_only) parts.push_back("window-only");
  if (!r.reason.empty()) parts.push_back(r.reason);
  if (!r.counterexamples.empty()) {
    std::string missing = "missing:";
    size_t shown = std::min<size_t>(r.counterexamples.size(), 4);
    for (size_t i = 0; i < shown; ++i)
      missing += " (" + r.counterexamples[i].first + "," + r.counterexamples[i].second + ")";
    if (r.counterexamples.size() > shown)
      missing += " +" + std::to_string(r.counterexamples.size() - shown) + " more";
    parts.push_back(missing);
  }
  return join(parts, "; ");
}

}  // namespace

std::string render_classify_table(const std::vector<ClassReport>& reports) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"CLASS", "VERDICT", "WITNESSES", "NOTE"});
  for (const ClassReport& r : reports)
    rows.push_back({class_token(r.class_id), r.verdict ? "yes" : "no", witness_cell(r),
                    note_cell(r)});

  std::array<size_t, 4> width{};
  for (const auto& row : rows)
    for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());

  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < 4; ++c) {
      line += row[c];
      if (c + 1 < 4) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string render_classify_json(const std::vector<ClassReport>& reports) {
  std::string out;
  for (const ClassReport& r : reports) {
    nlohmann::ordered_json record;
    record["id"] = class_token(r.class_id);
    record["verdict"] = r.verdict;
    record["witnesses"] = r.witnesses;
    if (r.value) record["value"] = *r.value;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [u, v] : r.counterexamples) pairs.push_back({u, v});
    record["counterexamples"] = pairs;
    record["window_only"] = r.window_only;
    record["reason"] = r.reason;
    out += record.dump() + "\n";
  }
  return out;
}

std::string render_run_report(const EvolvingGraph& g, const RelabelingAlgorithm& algo,
                              const ExecutionTrace& trace, bool objective_met) {
  std::string out;
  for (NodeIndex v = 0; v < g.node_count(); ++v)
    out += "LABEL " + g.node_name(v) + " " + trace.final_state.vertex_labels[v].to_string() +
           "\n";
  out += "objective: ";
  out += objective_met ? "met" : "missed";
  out += " (" + algo.objective_text + ")\n";
  return out;
}

std::string render_verify_report(const ClaimResult& result) {
  std::ostringstream out;
  out << "claim: " << claim_kind_token(result.claim.kind) << "(" << result.claim.algo << ", "
      << condition_token(result.claim.condition) << ")";
  if (result.distinguished) out << " start=" << *result.distinguished;
  out << "\n";
  out << "condition " << condition_token(result.claim.condition) << ": "
      << (result.condition_holds ? "holds" : "fails") << "\n";
  if (!result.vacuous) {
    if (result.claim.kind == ClaimKind::Sufficient) out << ph1_reading() << "\n";
    out << "search: "
        << (result.claim.kind == ClaimKind::Necessary ? "all interleavings"
                                                      : "progression-compliant executions")
        << ", states=" << result.states_explored
        << ", finals=" << result.executions_counted << "\n";
  }
  out << "verdict: " << verdict_token(result.verdict);
  if (result.vacuous) out << " (vacuous: the claim puts no demand on this instance)";
  if (result.verdict == Verdict::InconclusiveTruncated)
    out << " (search capped before exhausting the executions)";
  out << "\n";
  return out.str();
}

std::string render_hierarchy_report(const HierarchyStats& stats) {
  std::ostringstream out;
  out << "trials: " << stats.trials << "  nodes: " << stats.nodes
      << "  intervals: " << stats.intervals << "  p-on: " << format_date(stats.p_on)
      << "  p-off: " << format_date(stats.p_off) << "  seed: " << stats.seed << "\n";
  for (size_t c = 0; c < 7; ++c)
    out << class_token(static_cast<ClassId>(c)) << ": " << stats.membership_counts[c] << "/"
        << stats.trials << "\n";
  out << "violations: " << stats.violations.size() << "\n";
  for (const HierarchyViolation& v : stats.violations)
    out << "  instance " << v.instance << ": " << class_token(v.subclass) << " outside "
        << class_token(v.superclass) << "\n";
  return out.str();
}

}  // namespace evg
