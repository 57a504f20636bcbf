#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdist/graph.hpp"

namespace gdist::fixtures {

// Node ids are 0-based throughout. All built-in fixtures use unit affinities
// and unit costs.

CostedGraph k2();
/// 0 - 1 - 2
CostedGraph path3();
/// Triangle 1-2-3 with a pendant node 0 attached to 1.
CostedGraph extended_triangle();
/// 4-clique {0..3}, 3-clique {5,6,7}, hub 4 adjacent to every other node.
CostedGraph hub_4_3();
/// Two m-cliques sharing the cut vertex m-1: {0..m-1} and {m-1..2m-2}.
CostedGraph barbell(int clique_size = 4);
/// Two m-cliques {0..m-1}, {m..2m-1} joined by the single edge (m-1, m).
CostedGraph two_cliques(int clique_size = 10);

enum class Weights {
  Unit,         // a = c = 1
  Affinity,     // random a, c = 1/a
  Independent,  // random a and c drawn separately
};

/// Random spanning tree plus each remaining pair with probability
/// `extra_edge_prob`. Weights are uniform in [0.5, 2].
CostedGraph random_connected(int n, std::uint64_t seed, Weights weights = Weights::Unit, double extra_edge_prob = 0.3);

/// "k2", "path3", "ext-triangle", "hub-4-3", "barbell", "two-cliques".
std::optional<CostedGraph> by_name(std::string_view name);
std::vector<std::string> names();

}  // namespace gdist::fixtures
