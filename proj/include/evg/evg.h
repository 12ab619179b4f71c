/* evg: evolving-graph analysis toolkit, C API.
 *
 * All functions return evg_status; results come back through out-parameters.
 * Strings produced by the library are heap-allocated and must be released
 * with evg_string_free(). Handles are opaque and freed with their matching
 * *_free() function. On failure, evg_last_error() returns a thread-local
 * message describing the most recent error in the calling thread; the
 * pointer stays valid until the next failing call on that thread.
 */
#ifndef EVG_H
#define EVG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EVG_API __declspec(dllexport)
#else
#define EVG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evg_status {
  EVG_OK = 0,
  EVG_ERR_INPUT = 1,    /* bad arguments, unknown ids, role mismatches */
  EVG_ERR_DOMAIN = 2,   /* date outside the trace window */
  EVG_ERR_PARSE = 3,    /* malformed trace or log text */
  EVG_ERR_IO = 4,       /* unreadable or unwritable file */
  EVG_ERR_INTERNAL = 5
} evg_status;

typedef enum evg_verdict {
  EVG_VERDICT_CONSISTENT = 0,
  EVG_VERDICT_VIOLATED = 1,
  EVG_VERDICT_TRUNCATED = 2
} evg_verdict;

typedef struct evg_graph evg_graph;     /* an immutable evolving-graph trace */
typedef struct evg_closure evg_closure; /* reachability-over-time digraph */

EVG_API const char* evg_version(void);
EVG_API const char* evg_last_error(void);
EVG_API void evg_string_free(char* s);

/* --- traces ------------------------------------------------------------ */

EVG_API evg_status evg_graph_load_text(const char* text, evg_graph** out);
EVG_API evg_status evg_graph_load_file(const char* path, evg_graph** out);
EVG_API evg_status evg_graph_load_scenario_text(const char* text, evg_graph** out);
EVG_API evg_status evg_graph_save_text(const evg_graph* g, char** out_text);
EVG_API evg_status evg_graph_save_file(const evg_graph* g, const char* path);
EVG_API void evg_graph_free(evg_graph* g);

/* Edge-Markov synthesis: one two-state chain per unordered pair, stationary
 * start, dates 0..intervals. Deterministic in the seed. */
EVG_API evg_status evg_graph_generate(uint32_t nodes, uint32_t intervals, double p_on,
                                      double p_off, uint64_t seed, evg_graph** out);

EVG_API size_t evg_graph_node_count(const evg_graph* g);
EVG_API size_t evg_graph_interval_count(const evg_graph* g);

/* Node names come back sorted; the pointer lives as long as the handle.
 * Returns NULL when the index is out of range. */
EVG_API const char* evg_graph_node_name(const evg_graph* g, size_t index);

/* Presence of edge (u,v) at date t; out is 0 or 1. */
EVG_API evg_status evg_graph_presence(const evg_graph* g, const char* u, const char* v,
                                      double t, int* out);

/* --- reachability over time -------------------------------------------- */

EVG_API evg_status evg_closure_compute(const evg_graph* g, int strict, evg_closure** out);

/* Self-arcs are implied (every node reaches itself) and excluded from the
 * arc count; evg_closure_has_arc reports 1 for them. */
EVG_API size_t evg_closure_arc_count(const evg_closure* c);
EVG_API int evg_closure_has_arc(const evg_closure* c, const char* from, const char* to);
EVG_API evg_status evg_closure_to_tsv(const evg_closure* c, char** out_text);
EVG_API evg_status evg_closure_to_dot(const evg_closure* c, char** out_text);
EVG_API void evg_closure_free(evg_closure* c);

/* --- classification ----------------------------------------------------- */

/* classes: comma-separated tokens among f1..f7, recurrence, periodic; NULL
 * runs f1..f7 plus recurrence (plus periodic when a period is given).
 * bound < 0 means "report the minimal bound"; period <= 0 means "no period
 * supplied". as_json selects one JSON record per line over the text table. */
EVG_API evg_status evg_classify(const evg_graph* g, const char* classes, double bound,
                                double period, int as_json, char** out_report);

/* --- algorithm execution ------------------------------------------------ */

/* algo: a1|a2|a3. scheduler: ph1-greedy|random. start may be NULL for a3.
 * out_log (optional) receives a replayable execution log. */
EVG_API evg_status evg_run(const evg_graph* g, const char* algo, const char* start,
                           const char* scheduler, uint64_t seed, char** out_report,
                           char** out_log, int* out_objective_met);

/* Replays a log produced by evg_run/evg_verify against the same trace and
 * algorithm; fails unless every step is applicable where the log claims. */
EVG_API evg_status evg_replay_log(const evg_graph* g, const char* algo, const char* start,
                                  const char* log, char** out_final_labels);

/* --- claim verification -------------------------------------------------- */

/* claim: "necessary" (searched over all interleavings) or "sufficient"
 * (searched over progression-compliant executions). condition: c1..c4.
 * max_states/max_transitions of 0 select the defaults (1e6 / 1e7).
 * On EVG_VERDICT_VIOLATED, out_evidence_log (optional) receives a replayable
 * counterexample execution. */
EVG_API evg_status evg_verify(const evg_graph* g, const char* algo, const char* condition,
                              const char* claim, const char* start, uint64_t max_states,
                              uint64_t max_transitions, char** out_report,
                              char** out_evidence_log, int* out_verdict, int* out_vacuous);

/* --- class hierarchy sweep ----------------------------------------------- */

/* Generates `trials` edge-Markov instances and checks the nine inclusion
 * edges of the class hierarchy on each; also tallies per-class membership.
 * workers 0 selects the EVG_WORKERS environment default (or 1). */
EVG_API evg_status evg_hierarchy_check(uint32_t trials, uint32_t nodes, uint32_t intervals,
                                       double p_on, double p_off, uint64_t seed, int workers,
                                       char** out_report, uint64_t* out_violations);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVG_H */
