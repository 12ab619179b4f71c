#pragma once

#include <cstdint>
#include <string>

#include "core/evolving_graph.hpp"

namespace evg {

// EVG 1: line-oriented UTF-8 trace format.
//
//   EVG 1
//   nodes <id> ...
//   dates <d0> <d1> ...          strictly increasing decimals
//   edge <u> <v> <i> <j>         present during [t_i, t_j), 0-based indices
//
// '#' starts a comment; blank lines are ignored. Presence is defined by date
// indices, never by raw dates, so float formatting cannot shift an interval.
EvolvingGraph load(const std::string& text);
std::string save(const EvolvingGraph& g);  // canonical: sorted, merged, byte-stable

EvolvingGraph load_file(const std::string& path);
void save_file(const EvolvingGraph& g, const std::string& path);

// SCN 1: scenario format for hand-built fixtures: one line per interval
// naming that snapshot's edges as node pairs.
//
//   SCN 1
//   nodes <id> ...
//   dates <d0> <d1> ...
//   interval <i> <u> <v> [<u> <v> ...]
EvolvingGraph load_scenario(const std::string& text);

struct GeneratorSpec {
  enum class Model { EdgeMarkov, Scenario };
  Model model = Model::EdgeMarkov;
  uint32_t nodes = 1;
  uint32_t intervals = 1;
  double p_on = 0.5;    // chance an absent edge appears at the next interval
  double p_off = 0.5;   // chance a present edge disappears
  uint64_t seed = 0;
  std::string scenario_text;  // Model::Scenario only
};

// Deterministic trace synthesis. Edge-Markov runs one two-state chain per
// unordered pair, started from the chain's stationary distribution; dates
// are 0..k. The draw order (pairs in lexicographic order, one draw for the
// initial state then one per transition) is part of the format contract.
EvolvingGraph generate(const GeneratorSpec& spec);

// Node names used by generated traces: a..z for small counts, else n000....
std::vector<std::string> generated_node_names(uint32_t count);

std::string format_date(double d);  // shortest round-trip decimal

}  // namespace evg
