#include "core/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"

namespace evg {

std::string class_token(ClassId c) {
  switch (c) {
    case ClassId::F1: return "f1";
    case ClassId::F2: return "f2";
    case ClassId::F3: return "f3";
    case ClassId::F4: return "f4";
    case ClassId::F5: return "f5";
    case ClassId::F6: return "f6";
    case ClassId::F7: return "f7";
    case ClassId::RecurrentB: return "recurrence";
    case ClassId::Periodic: return "periodic";
  }
  return {};
}

ClassId class_from_token(const std::string& token) {
  for (ClassId c : all_class_ids())
    if (class_token(c) == token) return c;
  throw InputError("unknown class '" + token + "'");
}

const std::vector<ClassId>& all_class_ids() {
  static const std::vector<ClassId> ids = {
      ClassId::F1, ClassId::F2, ClassId::F3,         ClassId::F4,      ClassId::F5,
      ClassId::F6, ClassId::F7, ClassId::RecurrentB, ClassId::Periodic};
  return ids;
}

namespace {

void missing_arcs(const ClosureGraph& closure, ClassReport& report) {
  for (NodeIndex u = 0; u < closure.nodes().size(); ++u)
    for (NodeIndex v = 0; v < closure.nodes().size(); ++v)
      if (u != v && !closure.has_arc(u, v))
        report.counterexamples.emplace_back(closure.nodes()[u], closure.nodes()[v]);
}

void missing_edges(const StaticGraph& under, ClassReport& report) {
  for (NodeIndex u = 0; u < under.node_count(); ++u)
    for (NodeIndex v = u + 1; v < under.node_count(); ++v)
      if (!under.has_edge(u, v))
        report.counterexamples.emplace_back(under.nodes()[u], under.nodes()[v]);
}

// Vertices whose closure out-neighbourhood (or in-neighbourhood) is all of
// V minus themselves.
void dominating_closure_vertices(const ClosureGraph& closure, bool outward,
                                 ClassReport& report) {
  size_t n = closure.nodes().size();
  for (NodeIndex u = 0; u < n; ++u) {
    size_t d = outward ? closure.out_degree(u) : closure.in_degree(u);
    if (d == n - 1) report.witnesses.push_back(closure.nodes()[u]);
  }
  report.verdict = !report.witnesses.empty();
  if (!report.verdict) missing_arcs(closure, report);
}

}  // namespace

ClassReport classify_with(ClassId c, const ClosureGraph& closure,
                          const ClosureGraph& strict_closure, const StaticGraph& underlying) {
  ClassReport report;
  report.class_id = c;
  switch (c) {
    case ClassId::F1:
      dominating_closure_vertices(closure, /*outward=*/true, report);
      break;
    case ClassId::F2:
      report.verdict = closure.is_complete();
      if (!report.verdict) missing_arcs(closure, report);
      break;
    case ClassId::F3:
      dominating_closure_vertices(strict_closure, /*outward=*/true, report);
      break;
    case ClassId::F4:
      report.verdict = strict_closure.is_complete();
      if (!report.verdict) missing_arcs(strict_closure, report);
      break;
    case ClassId::F5: {
      size_t n = underlying.node_count();
      for (NodeIndex u = 0; u < n; ++u)
        if (underlying.degree(u) == n - 1) report.witnesses.push_back(underlying.nodes()[u]);
      report.verdict = !report.witnesses.empty();
      if (!report.verdict) missing_edges(underlying, report);
      break;
    }
    case ClassId::F6:
      report.verdict = underlying.is_complete();
      if (!report.verdict) missing_edges(underlying, report);
      break;
    case ClassId::F7:
      dominating_closure_vertices(closure, /*outward=*/false, report);
      break;
    case ClassId::RecurrentB:
    case ClassId::Periodic:
      throw InputError("probe classes take their own parameters");
  }
  return report;
}

ClassReport classify(const EvolvingGraph& g, ClassId c) {
  ClosureGraph closure = transitive_closure(g, false);
  ClosureGraph strict_closure = transitive_closure(g, true);
  StaticGraph under = g.underlying();
  return classify_with(c, closure, strict_closure, under);
}

ClassReport probe_recurrence(const EvolvingGraph& g, std::optional<double> bound) {
  ClassReport report;
  report.class_id = ClassId::RecurrentB;
  report.window_only = true;

  StaticGraph under = g.underlying();
  if (!under.is_connected()) {
    report.verdict = false;
    report.reason = "underlying graph not connected";
    return report;
  }

  // Longest stretch any underlying edge spends absent, with the stretches
  // before its first and after its last presence measured from t_0 and t_k.
  double max_gap = 0;
  const double t0 = g.dates().front();
  const double tk = g.dates().back();
  for (size_t pos = 0; pos < g.edge_keys().size(); ++pos) {
    const auto& runs = g.edge_intervals(pos);
    if (runs.empty()) continue;
    double prev_end = t0;
    for (const IndexInterval& iv : runs) {
      max_gap = std::max(max_gap, g.dates()[iv.begin] - prev_end);
      prev_end = g.dates()[iv.end];
    }
    max_gap = std::max(max_gap, tk - prev_end);
  }

  report.reason = "absence gaps measured to the trace boundaries";
  if (bound) {
    report.verdict = max_gap <= *bound;
    report.value = *bound;
    if (!report.verdict)
      report.reason = "largest absence gap " + std::to_string(max_gap) + " exceeds the bound";
  } else {
    report.verdict = true;
    report.value = max_gap;  // the minimal bound that holds on this window
  }
  return report;
}

ClassReport probe_periodicity(const EvolvingGraph& g, double period) {
  if (!(period > 0)) throw InputError("period must be positive");

  ClassReport report;
  report.class_id = ClassId::Periodic;
  report.window_only = true;
  report.value = period;
  report.verdict = true;

  const double t0 = g.dates().front();
  const double tk = g.dates().back();

  // Presence is piecewise constant between consecutive critical dates, so
  // comparing rho(e,t) with rho(e,t+period) at each critical date decides
  // equality over the whole shifted window.
  std::set<double> crits;
  for (double t : g.dates()) {
    if (t >= t0 && t < tk - period) crits.insert(t);
    if (t - period >= t0 && t - period < tk - period) crits.insert(t - period);
  }
  if (tk - period > t0) crits.insert(t0);

  for (size_t pos = 0; pos < g.edge_keys().size() && report.verdict; ++pos) {
    const Edge& e = g.edge_keys()[pos];
    for (double t : crits) {
      bool now = g.present_at(e, g.interval_of(t));
      bool shifted = g.present_at(e, g.interval_of(t + period));
      if (now != shifted) {
        report.verdict = false;
        report.counterexamples.emplace_back(g.node_name(e.a), g.node_name(e.b));
        report.reason = "presence differs between t=" + std::to_string(t) + " and t+period";
        break;
      }
    }
  }
  return report;
}

std::vector<ClassReport> classify_all(const EvolvingGraph& g, std::optional<double> bound,
                                      std::optional<double> period) {
  ClosureGraph closure = transitive_closure(g, false);
  ClosureGraph strict_closure = transitive_closure(g, true);
  StaticGraph under = g.underlying();

  std::vector<ClassReport> reports;
  for (ClassId c : {ClassId::F1, ClassId::F2, ClassId::F3, ClassId::F4, ClassId::F5,
                    ClassId::F6, ClassId::F7})
    reports.push_back(classify_with(c, closure, strict_closure, under));
  reports.push_back(probe_recurrence(g, bound));
  if (period) reports.push_back(probe_periodicity(g, *period));
  return reports;
}

const std::vector<std::pair<ClassId, ClassId>>& hierarchy_edges() {
  static const std::vector<std::pair<ClassId, ClassId>> edges = {
      {ClassId::F6, ClassId::F4}, {ClassId::F6, ClassId::F5}, {ClassId::F4, ClassId::F2},
      {ClassId::F4, ClassId::F3}, {ClassId::F5, ClassId::F3}, {ClassId::F5, ClassId::F7},
      {ClassId::F2, ClassId::F7}, {ClassId::F2, ClassId::F1}, {ClassId::F3, ClassId::F1}};
  return edges;
}

std::array<bool, 7> f_class_memberships(const EvolvingGraph& g) {
  ClosureGraph closure = transitive_closure(g, false);
  ClosureGraph strict_closure = transitive_closure(g, true);
  StaticGraph under = g.underlying();

  std::array<bool, 7> verdict{};
  for (ClassId c : {ClassId::F1, ClassId::F2, ClassId::F3, ClassId::F4, ClassId::F5,
                    ClassId::F6, ClassId::F7})
    verdict[static_cast<size_t>(c)] = classify_with(c, closure, strict_closure, under).verdict;
  return verdict;
}

std::vector<HierarchyViolation> check_hierarchy(const std::vector<EvolvingGraph>& instances) {
  std::vector<HierarchyViolation> violations;
  for (size_t i = 0; i < instances.size(); ++i) {
    std::array<bool, 7> verdict = f_class_memberships(instances[i]);
    for (const auto& [sub, super] : hierarchy_edges())
      if (verdict[static_cast<size_t>(sub)] && !verdict[static_cast<size_t>(super)])
        violations.push_back({i, sub, super});
  }
  return violations;
}

}  // namespace evg
