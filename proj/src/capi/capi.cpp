#include "evg/evg.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

#include "capi/render.hpp"
#include "core/algorithms.hpp"
#include "core/classifier.hpp"
#include "core/error.hpp"
#include "core/journeys.hpp"
#include "core/relabeling.hpp"
#include "core/rng.hpp"
#include "core/trace_io.hpp"
#include "core/verifier.hpp"

struct evg_graph {
  evg::EvolvingGraph impl;
};

struct evg_closure {
  evg::ClosureGraph impl;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
evg_status guarded(F&& f) {
  try {
    f();
    return EVG_OK;
  } catch (const evg::ParseError& e) {
    t_last_error = e.what();
    return EVG_ERR_PARSE;
  } catch (const evg::DomainError& e) {
    t_last_error = e.what();
    return EVG_ERR_DOMAIN;
  } catch (const evg::IoError& e) {
    t_last_error = e.what();
    return EVG_ERR_IO;
  } catch (const evg::InputError& e) {
    t_last_error = e.what();
    return EVG_ERR_INPUT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return EVG_ERR_INTERNAL;
  }
}

evg_status fail_input(const char* message) {
  t_last_error = message;
  return EVG_ERR_INPUT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int env_workers() {
  const char* env = std::getenv("EVG_WORKERS");
  if (!env) return 1;
  int parsed = std::atoi(env);
  return parsed >= 1 ? parsed : 1;
}

}  // namespace

extern "C" {

const char* evg_version(void) { return "1.0.0"; }

const char* evg_last_error(void) { return t_last_error.c_str(); }

void evg_string_free(char* s) { std::free(s); }

evg_status evg_graph_load_text(const char* text, evg_graph** out) {
  if (!text || !out) return fail_input("null argument");
  return guarded([&] { *out = new evg_graph{evg::load(text)}; });
}

evg_status evg_graph_load_file(const char* path, evg_graph** out) {
  if (!path || !out) return fail_input("null argument");
  return guarded([&] { *out = new evg_graph{evg::load_file(path)}; });
}

evg_status evg_graph_load_scenario_text(const char* text, evg_graph** out) {
  if (!text || !out) return fail_input("null argument");
  return guarded([&] { *out = new evg_graph{evg::load_scenario(text)}; });
}

evg_status evg_graph_save_text(const evg_graph* g, char** out_text) {
  if (!g || !out_text) return fail_input("null argument");
  return guarded([&] { *out_text = dup_string(evg::save(g->impl)); });
}

evg_status evg_graph_save_file(const evg_graph* g, const char* path) {
  if (!g || !path) return fail_input("null argument");
  return guarded([&] { evg::save_file(g->impl, path); });
}

void evg_graph_free(evg_graph* g) { delete g; }

evg_status evg_graph_generate(uint32_t nodes, uint32_t intervals, double p_on, double p_off,
                              uint64_t seed, evg_graph** out) {
  if (!out) return fail_input("null argument");
  return guarded([&] {
    evg::GeneratorSpec spec;
    spec.model = evg::GeneratorSpec::Model::EdgeMarkov;
    spec.nodes = nodes;
    spec.intervals = intervals;
    spec.p_on = p_on;
    spec.p_off = p_off;
    spec.seed = seed;
    *out = new evg_graph{evg::generate(spec)};
  });
}

size_t evg_graph_node_count(const evg_graph* g) { return g ? g->impl.node_count() : 0; }

size_t evg_graph_interval_count(const evg_graph* g) {
  return g ? g->impl.interval_count() : 0;
}

const char* evg_graph_node_name(const evg_graph* g, size_t index) {
  if (!g || index >= g->impl.node_count()) return nullptr;
  return g->impl.node_name(static_cast<evg::NodeIndex>(index)).c_str();
}

evg_status evg_graph_presence(const evg_graph* g, const char* u, const char* v, double t,
                              int* out) {
  if (!g || !u || !v || !out) return fail_input("null argument");
  return guarded([&] { *out = g->impl.presence(u, v, t) ? 1 : 0; });
}

evg_status evg_closure_compute(const evg_graph* g, int strict, evg_closure** out) {
  if (!g || !out) return fail_input("null argument");
  return guarded(
      [&] { *out = new evg_closure{evg::transitive_closure(g->impl, strict != 0)}; });
}

size_t evg_closure_arc_count(const evg_closure* c) { return c ? c->impl.arc_count() : 0; }

int evg_closure_has_arc(const evg_closure* c, const char* from, const char* to) {
  if (!c || !from || !to) return 0;
  evg::NodeIndex f, t;
  {
    const auto& nodes = c->impl.nodes();
    auto fit = std::find(nodes.begin(), nodes.end(), from);
    auto tit = std::find(nodes.begin(), nodes.end(), to);
    if (fit == nodes.end() || tit == nodes.end()) return 0;
    f = static_cast<evg::NodeIndex>(fit - nodes.begin());
    t = static_cast<evg::NodeIndex>(tit - nodes.begin());
  }
  return c->impl.reaches(f, t) ? 1 : 0;
}

evg_status evg_closure_to_tsv(const evg_closure* c, char** out_text) {
  if (!c || !out_text) return fail_input("null argument");
  return guarded([&] { *out_text = dup_string(c->impl.to_tsv()); });
}

evg_status evg_closure_to_dot(const evg_closure* c, char** out_text) {
  if (!c || !out_text) return fail_input("null argument");
  return guarded([&] { *out_text = dup_string(c->impl.to_dot()); });
}

void evg_closure_free(evg_closure* c) { delete c; }

evg_status evg_classify(const evg_graph* g, const char* classes, double bound, double period,
                        int as_json, char** out_report) {
  if (!g || !out_report) return fail_input("null argument");
  return guarded([&] {
    std::optional<double> bound_opt;
    if (bound >= 0) bound_opt = bound;
    std::optional<double> period_opt;
    if (period > 0) period_opt = period;

    std::vector<evg::ClassId> wanted;
    if (classes) {
      for (const std::string& token : split_csv(classes))
        wanted.push_back(evg::class_from_token(token));
      if (std::find(wanted.begin(), wanted.end(), evg::ClassId::Periodic) != wanted.end() &&
          !period_opt)
        throw evg::InputError("the periodic probe needs a period");
    }

    std::vector<evg::ClassReport> reports = evg::classify_all(g->impl, bound_opt, period_opt);
    if (!wanted.empty()) {
      std::vector<evg::ClassReport> filtered;
      for (const evg::ClassReport& r : reports)
        if (std::find(wanted.begin(), wanted.end(), r.class_id) != wanted.end())
          filtered.push_back(r);
      reports = std::move(filtered);
    }
    *out_report = dup_string(as_json ? evg::render_classify_json(reports)
                                     : evg::render_classify_table(reports));
  });
}

evg_status evg_run(const evg_graph* g, const char* algo, const char* start,
                   const char* scheduler, uint64_t seed, char** out_report, char** out_log,
                   int* out_objective_met) {
  if (!g || !algo || !out_report) return fail_input("null argument");
  return guarded([&] {
    evg::RelabelingAlgorithm algorithm = evg::algorithm_from_token(algo);
    std::optional<std::string> start_opt;
    if (start) start_opt = start;
    evg::SchedulerId sched =
        evg::scheduler_from_token(scheduler ? scheduler : "ph1-greedy");

    evg::ExecutionTrace trace = evg::run(g->impl, algorithm, start_opt, sched, seed);
    bool met = algorithm.objective(trace.final_state);
    *out_report = dup_string(evg::render_run_report(g->impl, algorithm, trace, met));
    if (out_log) *out_log = dup_string(evg::trace_to_log(g->impl, algorithm, trace));
    if (out_objective_met) *out_objective_met = met ? 1 : 0;
  });
}

evg_status evg_replay_log(const evg_graph* g, const char* algo, const char* start,
                          const char* log, char** out_final_labels) {
  if (!g || !algo || !log) return fail_input("null argument");
  return guarded([&] {
    evg::RelabelingAlgorithm algorithm = evg::algorithm_from_token(algo);
    std::optional<std::string> start_opt;
    if (start) start_opt = start;
    evg::LabeledState final_state = evg::replay_log(g->impl, algorithm, start_opt, log);
    if (out_final_labels) {
      std::string text;
      for (evg::NodeIndex v = 0; v < g->impl.node_count(); ++v)
        text += "LABEL " + g->impl.node_name(v) + " " +
                final_state.vertex_labels[v].to_string() + "\n";
      *out_final_labels = dup_string(text);
    }
  });
}

evg_status evg_verify(const evg_graph* g, const char* algo, const char* condition,
                      const char* claim, const char* start, uint64_t max_states,
                      uint64_t max_transitions, char** out_report, char** out_evidence_log,
                      int* out_verdict, int* out_vacuous) {
  if (!g || !algo || !condition || !claim || !out_report) return fail_input("null argument");
  return guarded([&] {
    evg::RelabelingAlgorithm algorithm = evg::algorithm_from_token(algo);
    evg::ConditionId cond = evg::condition_from_token(condition);
    std::optional<std::string> start_opt;
    if (start) start_opt = start;

    evg::EnumerationLimits limits;
    if (max_states > 0) limits.max_states = max_states;
    if (max_transitions > 0) limits.max_transitions = max_transitions;

    std::string kind = claim;
    evg::ClaimResult result;
    if (kind == "necessary")
      result = evg::verify_necessary(g->impl, algorithm, cond, start_opt, limits);
    else if (kind == "sufficient")
      result = evg::verify_sufficient(g->impl, algorithm, cond, start_opt, limits);
    else
      throw evg::InputError("claim must be 'necessary' or 'sufficient'");

    *out_report = dup_string(evg::render_verify_report(result));
    if (out_evidence_log)
      *out_evidence_log = result.evidence ? dup_string(result.evidence_log) : nullptr;
    if (out_verdict) {
      switch (result.verdict) {
        case evg::Verdict::Consistent: *out_verdict = EVG_VERDICT_CONSISTENT; break;
        case evg::Verdict::Violated: *out_verdict = EVG_VERDICT_VIOLATED; break;
        case evg::Verdict::InconclusiveTruncated: *out_verdict = EVG_VERDICT_TRUNCATED; break;
      }
    }
    if (out_vacuous) *out_vacuous = result.vacuous ? 1 : 0;
  });
}

evg_status evg_hierarchy_check(uint32_t trials, uint32_t nodes, uint32_t intervals,
                               double p_on, double p_off, uint64_t seed, int workers,
                               char** out_report, uint64_t* out_violations) {
  if (!out_report) return fail_input("null argument");
  return guarded([&] {
    if (trials == 0) throw evg::InputError("trials must be positive");

    evg::SplitMix64 seeder(seed);
    std::vector<evg::EvolvingGraph> instances;
    instances.reserve(trials);
    for (uint32_t i = 0; i < trials; ++i) {
      evg::GeneratorSpec spec;
      spec.nodes = nodes;
      spec.intervals = intervals;
      spec.p_on = p_on;
      spec.p_off = p_off;
      spec.seed = seeder.next();
      instances.push_back(evg::generate(spec));
    }

    std::vector<std::array<bool, 7>> memberships(trials);
    int pool_size = workers > 0 ? workers : env_workers();
    if (pool_size <= 1) {
      for (uint32_t i = 0; i < trials; ++i)
        memberships[i] = evg::f_class_memberships(instances[i]);
    } else {
      std::atomic<uint32_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < pool_size; ++w)
        pool.emplace_back([&] {
          for (;;) {
            uint32_t i = next.fetch_add(1);
            if (i >= trials) return;
            memberships[i] = evg::f_class_memberships(instances[i]);
          }
        });
      for (std::thread& t : pool) t.join();
    }

    evg::HierarchyStats stats;
    stats.trials = trials;
    stats.nodes = nodes;
    stats.intervals = intervals;
    stats.p_on = p_on;
    stats.p_off = p_off;
    stats.seed = seed;
    for (uint32_t i = 0; i < trials; ++i) {
      for (size_t c = 0; c < 7; ++c)
        if (memberships[i][c]) ++stats.membership_counts[c];
      for (const auto& [sub, super] : evg::hierarchy_edges())
        if (memberships[i][static_cast<size_t>(sub)] &&
            !memberships[i][static_cast<size_t>(super)])
          stats.violations.push_back({i, sub, super});
    }

    *out_report = dup_string(evg::render_hierarchy_report(stats));
    if (out_violations) *out_violations = stats.violations.size();
  });
}

}  // extern "C"
