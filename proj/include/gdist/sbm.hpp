#pragma once

#include <cstdint>
#include <vector>

#include "gdist/graph.hpp"

namespace gdist {

struct PlantedGraph {
  CostedGraph graph;
  std::vector<int> labels;  // block id per node
  int attempts = 0;
};

inline constexpr int kSbmMaxAttempts = 100;

/// Unweighted planted-partition graph: each pair is joined with probability
/// p_in inside a block and p_out across blocks. Attempt a draws from
/// std::seed_seq{seed, a}; disconnected draws are discarded.
/// Requires 0 <= p_out <= p_in <= 1.
PlantedGraph gen_sbm(const std::vector<int>& block_sizes, double p_in, double p_out, std::uint64_t seed);

}  // namespace gdist
