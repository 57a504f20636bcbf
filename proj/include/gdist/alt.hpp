#pragma once

#include <vector>

#include "gdist/distance.hpp"
#include "gdist/graph.hpp"

namespace gdist {

/// Logarithmic forest distance from Q = (I + alpha L)^-1 and
/// M = gamma (alpha - 1) log_alpha Q. Only affinities enter (through L);
/// edge costs are ignored by this family. At alpha = 1 the factor
/// (alpha - 1) / ln(alpha) takes its limit value 1.
DistanceMatrix log_forest(const CostedGraph& g, double alpha, double gamma = 1.0);

/// Unit s -> t flow, one signed current per edge in the stored (u -> v)
/// orientation; a negative value flows v -> u.
struct FlowAssignment {
  std::vector<double> current;
  int source = 0;
  int target = 0;
};

/// Largest violation of flow conservation: +1 net outflow at the source,
/// -1 at the target, 0 elsewhere.
double kirchhoff_residual(const CostedGraph& g, const FlowAssignment& flow);

/// sum_e c_e |i_e|^p, edge resistances being the edge costs.
double p_resistance_objective(const CostedGraph& g, const FlowAssignment& flow, double p);

struct PResistanceOptions {
  // Kirchhoff residual of the returned flow; raised to 16 eps / (p - 1) near p = 1
  double tolerance = 1e-12;
  int max_iterations = 500;
  int max_nodes = 200;  // p_resistance() refuses larger graphs
};

struct PResistanceResult {
  double value = 0.0;
  FlowAssignment flow;
  int iterations = 0;
  double residual = 0.0;  // Kirchhoff residual
};

/// Minimum p-resistance between s and t over unit flows, p in [1, 2].
///
/// Solved through node potentials: with q = p / (p - 1) the dual
/// sum_e (p - 1) c_e (|phi_u - phi_v| / (p c_e))^q - (phi_s - phi_t) is smooth
/// and convex, and its gradient is the conservation residual of the flow
/// f_e = sign(dphi) (|dphi| / (p c_e))^(q - 1). Damped Newton from scaled
/// electrical potentials; exit when that residual is below tolerance.
/// p = 1 is answered by Dijkstra.
PResistanceResult p_resistance_pair(const CostedGraph& g, int s, int t, double p,
                                    const PResistanceOptions& options = {});

/// All pairs, in parallel over pairs.
DistanceMatrix p_resistance(const CostedGraph& g, double p, const PResistanceOptions& options = {});

namespace serial {
DistanceMatrix p_resistance(const CostedGraph& g, double p, const PResistanceOptions& options = {});
}  // namespace serial

}  // namespace gdist
