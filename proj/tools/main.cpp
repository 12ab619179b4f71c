// evg: command-line front end over the shared-library C API.
//
// Exit codes: 0 success / claim consistent, 1 property violated, objective
// missed or search inconclusive (evidence emitted), 2 input or usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evg/evg.h"

namespace {

struct GraphDeleter {
  void operator()(evg_graph* g) const { evg_graph_free(g); }
};
struct ClosureDeleter {
  void operator()(evg_closure* c) const { evg_closure_free(c); }
};
using GraphPtr = std::unique_ptr<evg_graph, GraphDeleter>;
using ClosurePtr = std::unique_ptr<evg_closure, ClosureDeleter>;

// Wraps strings handed out by the library.
struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { evg_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int complain(evg_status) {
  std::cerr << "error: " << evg_last_error() << "\n";
  return 2;
}

GraphPtr load_trace(const std::string& path, int& exit_code) {
  evg_graph* raw = nullptr;
  evg_status status = evg_graph_load_file(path.c_str(), &raw);
  if (status != EVG_OK) {
    exit_code = complain(status);
    return nullptr;
  }
  return GraphPtr(raw);
}

bool write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << text;
  return true;
}

int cmd_classify(const std::string& trace, const std::string& classes, double bound,
                 double period, bool json) {
  int code = 0;
  GraphPtr g = load_trace(trace, code);
  if (!g) return code;
  ApiString report;
  evg_status status = evg_classify(g.get(), classes.empty() ? nullptr : classes.c_str(),
                                   bound, period, json ? 1 : 0, &report.ptr);
  if (status != EVG_OK) return complain(status);
  std::cout << report.str();
  return 0;
}

int cmd_closure(const std::string& trace, bool strict, const std::string& format) {
  if (format != "tsv" && format != "dot") {
    std::cerr << "error: --format must be dot or tsv\n";
    return 2;
  }
  int code = 0;
  GraphPtr g = load_trace(trace, code);
  if (!g) return code;
  evg_closure* raw = nullptr;
  evg_status status = evg_closure_compute(g.get(), strict ? 1 : 0, &raw);
  if (status != EVG_OK) return complain(status);
  ClosurePtr closure(raw);
  ApiString text;
  status = format == "tsv" ? evg_closure_to_tsv(closure.get(), &text.ptr)
                           : evg_closure_to_dot(closure.get(), &text.ptr);
  if (status != EVG_OK) return complain(status);
  std::cout << text.str();
  return 0;
}

int cmd_run(const std::string& trace, const std::string& algo, const std::string& start,
            const std::string& scheduler, uint64_t seed, const std::string& log_path) {
  int code = 0;
  GraphPtr g = load_trace(trace, code);
  if (!g) return code;
  ApiString report, log;
  int objective_met = 0;
  evg_status status =
      evg_run(g.get(), algo.c_str(), start.empty() ? nullptr : start.c_str(),
              scheduler.c_str(), seed, &report.ptr, log_path.empty() ? nullptr : &log.ptr,
              &objective_met);
  if (status != EVG_OK) return complain(status);
  std::cout << report.str();
  if (!log_path.empty() && !write_text_file(log_path, log.str())) return 2;
  return objective_met ? 0 : 1;
}

int cmd_verify(const std::string& trace, const std::string& algo, const std::string& condition,
               const std::string& claim, const std::string& start, uint64_t max_states,
               uint64_t max_transitions, const std::string& evidence_dir) {
  int code = 0;
  GraphPtr g = load_trace(trace, code);
  if (!g) return code;
  ApiString report, evidence;
  int verdict = 0, vacuous = 0;
  evg_status status = evg_verify(g.get(), algo.c_str(), condition.c_str(), claim.c_str(),
                                 start.empty() ? nullptr : start.c_str(), max_states,
                                 max_transitions, &report.ptr, &evidence.ptr, &verdict,
                                 &vacuous);
  if (status != EVG_OK) return complain(status);
  std::cout << report.str();

  if (verdict == EVG_VERDICT_VIOLATED && evidence.ptr) {
    std::string stem = evidence_dir + "/violation-" + algo + "-" + condition + "-" + claim;
    if (!start.empty()) stem += "-" + start;
    ApiString trace_text;
    if (evg_graph_save_text(g.get(), &trace_text.ptr) != EVG_OK)
      return complain(EVG_ERR_INTERNAL);
    if (!write_text_file(stem + ".log", evidence.str()) ||
        !write_text_file(stem + ".evg", trace_text.str()))
      return 2;
    std::cout << "evidence: " << stem << ".log\n";
    std::cout << "evidence: " << stem << ".evg\n";
  }
  return verdict == EVG_VERDICT_CONSISTENT ? 0 : 1;
}

int cmd_generate(const std::string& model, uint32_t nodes, uint32_t intervals, double p_on,
                 double p_off, uint64_t seed, const std::string& scenario_path,
                 const std::string& output) {
  evg_graph* raw = nullptr;
  evg_status status;
  if (model == "edge-markov") {
    status = evg_graph_generate(nodes, intervals, p_on, p_off, seed, &raw);
  } else if (model == "scenario") {
    if (scenario_path.empty()) {
      std::cerr << "error: --model scenario needs --scenario <file>\n";
      return 2;
    }
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << scenario_path << "'\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    status = evg_graph_load_scenario_text(buf.str().c_str(), &raw);
  } else {
    std::cerr << "error: --model must be edge-markov or scenario\n";
    return 2;
  }
  if (status != EVG_OK) return complain(status);
  GraphPtr g(raw);

  if (output == "-") {
    ApiString text;
    if (evg_graph_save_text(g.get(), &text.ptr) != EVG_OK) return complain(EVG_ERR_INTERNAL);
    std::cout << text.str();
    return 0;
  }
  status = evg_graph_save_file(g.get(), output.c_str());
  if (status != EVG_OK) return complain(status);
  return 0;
}

int cmd_hierarchy(uint32_t trials, uint32_t nodes, uint32_t intervals, double p_on,
                  double p_off, uint64_t seed, int workers) {
  ApiString report;
  uint64_t violations = 0;
  evg_status status = evg_hierarchy_check(trials, nodes, intervals, p_on, p_off, seed,
                                          workers, &report.ptr, &violations);
  if (status != EVG_OK) return complain(status);
  std::cout << report.str();
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evg: dynamic-network traces: classify, search journeys, run and verify "
               "relabeling algorithms"};
  app.set_version_flag("--version", evg_version());
  app.require_subcommand(1);

  std::string trace, classes, format = "tsv", algo, start, scheduler = "ph1-greedy";
  std::string condition, claim, evidence_dir = ".", model = "edge-markov", scenario, output;
  std::string log_path;
  double bound = -1, period = 0, p_on = 0.5, p_off = 0.5;
  uint64_t seed = 0, max_states = 0, max_transitions = 0;
  uint32_t nodes = 0, intervals = 0, trials = 0;
  int workers = 0;
  bool strict = false, json = false;

  CLI::App* classify = app.add_subcommand("classify", "Report class membership of a trace");
  classify->add_option("trace", trace, "trace file (EVG 1)")->required();
  classify->add_option("--classes", classes, "comma list of f1..f7,recurrence,periodic");
  classify->add_option("--bound", bound, "recurrence bound to test");
  classify->add_option("--period", period, "period to test");
  classify->add_flag("--json", json, "one JSON record per line");

  CLI::App* closure = app.add_subcommand("closure", "Emit the journey transitive closure");
  closure->add_option("trace", trace)->required();
  closure->add_flag("--strict", strict, "strict journeys only");
  closure->add_option("--format", format, "dot|tsv (default tsv)");

  CLI::App* run = app.add_subcommand("run", "Execute a relabeling algorithm over a trace");
  run->add_option("trace", trace)->required();
  run->add_option("--algo", algo, "a1|a2|a3")->required();
  run->add_option("--start", start, "distinguished node (a1/a2)");
  run->add_option("--scheduler", scheduler, "ph1-greedy|random");
  run->add_option("--seed", seed);
  run->add_option("--log", log_path, "write a replayable execution log");

  CLI::App* verify = app.add_subcommand("verify", "Check a necessary/sufficient claim");
  verify->add_option("trace", trace)->required();
  verify->add_option("--algo", algo, "a1|a2|a3")->required();
  verify->add_option("--condition", condition, "c1|c2|c3|c4")->required();
  verify->add_option("--claim", claim, "necessary|sufficient")->required();
  verify->add_option("--start", start, "distinguished node");
  verify->add_option("--max-states", max_states, "state cap (0 = default)");
  verify->add_option("--max-transitions", max_transitions, "transition cap (0 = default)");
  verify->add_option("--evidence-dir", evidence_dir, "where violation evidence is written");

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic trace");
  generate->add_option("--model", model, "edge-markov|scenario");
  generate->add_option("--nodes", nodes);
  generate->add_option("--intervals", intervals);
  generate->add_option("--p-on", p_on, "appearance probability");
  generate->add_option("--p-off", p_off, "disappearance probability");
  generate->add_option("--seed", seed);
  generate->add_option("--scenario", scenario, "scenario file (SCN 1) to convert");
  generate->add_option("-o,--output", output, "output file, '-' for stdout")->required();

  CLI::App* hierarchy =
      app.add_subcommand("hierarchy", "Stress the class inclusion hierarchy");
  hierarchy->add_option("--trials", trials)->required();
  hierarchy->add_option("--nodes", nodes)->required();
  hierarchy->add_option("--intervals", intervals)->required();
  hierarchy->add_option("--p-on", p_on);
  hierarchy->add_option("--p-off", p_off);
  hierarchy->add_option("--seed", seed);
  hierarchy->add_option("--workers", workers, "0 = EVG_WORKERS env or 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {  // --help, --version
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (classify->parsed()) return cmd_classify(trace, classes, bound, period, json);
  if (closure->parsed()) return cmd_closure(trace, strict, format);
  if (run->parsed()) return cmd_run(trace, algo, start, scheduler, seed, log_path);
  if (verify->parsed())
    return cmd_verify(trace, algo, condition, claim, start, max_states, max_transitions,
                      evidence_dir);
  if (generate->parsed())
    return cmd_generate(model, nodes, intervals, p_on, p_off, seed, scenario, output);
  if (hierarchy->parsed())
    return cmd_hierarchy(trials, nodes, intervals, p_on, p_off, seed, workers);
  return 2;
}
