#include "core/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace evg {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_date(const std::string& tok, int line_no) {
  double value;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("malformed date '" + tok + "'", line_no);
  return value;
}

uint32_t parse_index(const std::string& tok, int line_no) {
  uint32_t value;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("malformed interval index '" + tok + "'", line_no);
  return value;
}

}  // namespace

std::string format_date(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, ptr);
}

EvolvingGraph load(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{"EVG", "1"})
    throw ParseError("missing 'EVG 1' header", lines.empty() ? 1 : lines[0].number);

  EvolvingGraphBuilder builder;
  bool have_nodes = false, have_dates = false;
  size_t date_count = 0;

  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kw = line.tokens[0];
    if (kw == "nodes") {
      if (have_nodes) throw ParseError("duplicate nodes line", line.number);
      if (line.tokens.size() < 2) throw ParseError("nodes line needs at least one id", line.number);
      for (size_t t = 1; t < line.tokens.size(); ++t) builder.add_node(line.tokens[t]);
      have_nodes = true;
    } else if (kw == "dates") {
      if (have_dates) throw ParseError("duplicate dates line", line.number);
      if (line.tokens.size() < 3)
        throw ParseError("dates line needs at least two dates", line.number);
      std::vector<double> dates;
      for (size_t t = 1; t < line.tokens.size(); ++t)
        dates.push_back(parse_date(line.tokens[t], line.number));
      for (size_t t = 1; t < dates.size(); ++t)
        if (!(dates[t - 1] < dates[t]))
          throw ParseError("dates not strictly increasing", line.number);
      builder.set_dates(std::move(dates));
      date_count = line.tokens.size() - 1;
      have_dates = true;
    } else if (kw == "edge") {
      if (!have_nodes || !have_dates)
        throw ParseError("edge before nodes/dates", line.number);
      if (line.tokens.size() != 5)
        throw ParseError("edge line needs '<u> <v> <i> <j>'", line.number);
      uint32_t begin = parse_index(line.tokens[3], line.number);
      uint32_t end = parse_index(line.tokens[4], line.number);
      if (begin >= end) throw ParseError("empty or inverted interval", line.number);
      if (end > date_count - 1) throw ParseError("interval index out of range", line.number);
      try {
        builder.add_presence(line.tokens[1], line.tokens[2], begin, end);
      } catch (const InputError& e) {
        throw ParseError(e.what(), line.number);
      }
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number);
    }
  }
  if (!have_nodes) throw ParseError("missing nodes line", lines.back().number);
  if (!have_dates) throw ParseError("missing dates line", lines.back().number);

  try {
    return builder.build();
  } catch (const InputError& e) {
    throw ParseError(e.what(), lines.back().number);
  }
}

std::string save(const EvolvingGraph& g) {
  std::string out = "EVG 1\n";
  out += "nodes";
  for (const std::string& n : g.nodes()) out += " " + n;
  out += "\ndates";
  for (double d : g.dates()) out += " " + format_date(d);
  out += "\n";
  for (size_t pos = 0; pos < g.edge_keys().size(); ++pos) {
    const Edge& e = g.edge_keys()[pos];
    for (const IndexInterval& iv : g.edge_intervals(pos))
      out += "edge " + g.node_name(e.a) + " " + g.node_name(e.b) + " " +
             std::to_string(iv.begin) + " " + std::to_string(iv.end) + "\n";
  }
  return out;
}

EvolvingGraph load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

void save_file(const EvolvingGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << save(g);
}

EvolvingGraph load_scenario(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{"SCN", "1"})
    throw ParseError("missing 'SCN 1' header", lines.empty() ? 1 : lines[0].number);

  std::vector<std::string> nodes;
  std::vector<double> dates;
  std::vector<std::vector<std::pair<std::string, std::string>>> snapshots;

  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kw = line.tokens[0];
    if (kw == "nodes") {
      if (!nodes.empty()) throw ParseError("duplicate nodes line", line.number);
      for (size_t t = 1; t < line.tokens.size(); ++t) nodes.push_back(line.tokens[t]);
      if (nodes.empty()) throw ParseError("nodes line needs at least one id", line.number);
    } else if (kw == "dates") {
      if (!dates.empty()) throw ParseError("duplicate dates line", line.number);
      for (size_t t = 1; t < line.tokens.size(); ++t)
        dates.push_back(parse_date(line.tokens[t], line.number));
      if (dates.size() < 2) throw ParseError("dates line needs at least two dates", line.number);
      snapshots.resize(dates.size() - 1);
    } else if (kw == "interval") {
      if (dates.empty()) throw ParseError("interval before dates", line.number);
      if (line.tokens.size() < 2) throw ParseError("interval line needs an index", line.number);
      uint32_t idx = parse_index(line.tokens[1], line.number);
      if (idx >= snapshots.size()) throw ParseError("interval index out of range", line.number);
      if ((line.tokens.size() - 2) % 2 != 0)
        throw ParseError("interval edges come as node pairs", line.number);
      for (size_t t = 2; t + 1 < line.tokens.size(); t += 2)
        snapshots[idx].emplace_back(line.tokens[t], line.tokens[t + 1]);
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number);
    }
  }
  if (nodes.empty()) throw ParseError("missing nodes line", lines.back().number);
  if (dates.empty()) throw ParseError("missing dates line", lines.back().number);
  try {
    return from_snapshots(nodes, dates, snapshots);
  } catch (const InputError& e) {
    throw ParseError(e.what(), lines.back().number);
  }
}

std::vector<std::string> generated_node_names(uint32_t count) {
  std::vector<std::string> names;
  if (count <= 26) {
    for (uint32_t i = 0; i < count; ++i) names.push_back(std::string(1, char('a' + i)));
  } else {
    for (uint32_t i = 0; i < count; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "n%04u", i);
      names.emplace_back(buf);
    }
  }
  return names;
}

EvolvingGraph generate(const GeneratorSpec& spec) {
  if (spec.model == GeneratorSpec::Model::Scenario) return load_scenario(spec.scenario_text);

  if (spec.nodes < 1 || spec.intervals < 1)
    throw InputError("generator needs at least one node and one interval");
  if (spec.p_on < 0 || spec.p_on > 1 || spec.p_off < 0 || spec.p_off > 1)
    throw InputError("probabilities must lie in [0,1]");

  std::vector<std::string> names = generated_node_names(spec.nodes);

  EvolvingGraphBuilder builder;
  for (const std::string& n : names) builder.add_node(n);
  std::vector<double> dates;
  for (uint32_t i = 0; i <= spec.intervals; ++i) dates.push_back(i);
  builder.set_dates(std::move(dates));

  double stationary =
      (spec.p_on + spec.p_off > 0) ? spec.p_on / (spec.p_on + spec.p_off) : 0.0;

  SplitMix64 rng(spec.seed);
  for (uint32_t a = 0; a < spec.nodes; ++a) {
    for (uint32_t b = a + 1; b < spec.nodes; ++b) {
      bool present = rng.next_unit() < stationary;
      uint32_t run_start = 0;
      for (uint32_t i = 1; i < spec.intervals; ++i) {
        double flip = present ? spec.p_off : spec.p_on;
        bool next = rng.next_unit() < flip ? !present : present;
        if (next != present) {
          if (present) builder.add_presence(names[a], names[b], run_start, i);
          run_start = i;
          present = next;
        }
      }
      if (present) builder.add_presence(names[a], names[b], run_start, spec.intervals);
    }
  }
  return builder.build();
}

}  // namespace evg
