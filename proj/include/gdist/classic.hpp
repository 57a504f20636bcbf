#pragma once

#include <vector>

#include "gdist/distance.hpp"
#include "gdist/graph.hpp"

namespace gdist {

/// Single-source Dijkstra over edge costs; entries for unreachable nodes are +inf.
std::vector<double> dijkstra(const CostedGraph& g, int source, std::vector<int>* parent_edge = nullptr);

/// All-pairs minimal path cost. Sources run in parallel (OpenMP).
DistanceMatrix shortest_path(const CostedGraph& g);
/// All-pairs hop counts (BFS), ignoring costs.
DistanceMatrix shortest_path_unweighted(const CostedGraph& g);

/// (l+_ss + l+_tt - 2 l+_st) * volume
DistanceMatrix commute_time(const LaplacianPair& lp);
/// Symmetrised expected round-trip cost; equals commute time scaled by
/// cost_volume / volume.
DistanceMatrix commute_cost(const LaplacianPair& lp);
/// Effective resistance, commute time / volume.
DistanceMatrix resistance(const LaplacianPair& lp);

/// lambda * SP + (1 - lambda) * resistance. The resistance endpoint keeps
/// both terms on the same scale.
DistanceMatrix spct_combination(const CostedGraph& g, double lambda);
DistanceMatrix spct_combination(const DistanceMatrix& sp, const DistanceMatrix& res, double lambda);

namespace serial {
/// Reference single-threaded all-pairs Dijkstra.
DistanceMatrix shortest_path(const CostedGraph& g);
}  // namespace serial

}  // namespace gdist
