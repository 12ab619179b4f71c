#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "core/evolving_graph.hpp"
#include "core/rng.hpp"
#include "core/trace_io.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(EVG_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline evg::EvolvingGraph load_fixture(const std::string& name) {
  return evg::load_file(fixture_path(name));
}

inline evg::EvolvingGraph eg1() { return load_fixture("eg1.evg"); }
inline evg::EvolvingGraph eg2() { return load_fixture("eg2.evg"); }
inline evg::EvolvingGraph eg5() { return load_fixture("eg5.evg"); }
inline evg::EvolvingGraph dg() { return load_fixture("dg.evg"); }

// Seeded instance with size and density themselves drawn from the seed;
// node/interval counts stay within [2,max_nodes] x [1,max_intervals].
inline evg::EvolvingGraph random_instance(uint64_t seed, uint32_t max_nodes,
                                          uint32_t max_intervals) {
  evg::SplitMix64 rng(seed);
  evg::GeneratorSpec spec;
  spec.nodes = 2 + static_cast<uint32_t>(rng.next_below(max_nodes - 1));
  spec.intervals = 1 + static_cast<uint32_t>(rng.next_below(max_intervals));
  spec.p_on = rng.next_unit();
  spec.p_off = rng.next_unit();
  spec.seed = rng.next();
  return evg::generate(spec);
}

}  // namespace testsupport
