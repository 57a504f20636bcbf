#pragma once

#include "gdist/distance.hpp"
#include "gdist/graph.hpp"

namespace gdist {

/// Killed random walk quantities for one (graph, beta) pair.
///
/// `w` is P^ref o exp(-beta C) on edges and exactly zero elsewhere, so every
/// row sums to less than one. `z` = (I - W)^-1 is obtained from a single LU
/// factorisation. `zh(s,t) = z(s,t) / z(t,t)` is the partition function of
/// hitting paths s -> t (the probability of reaching t before being killed),
/// with an exact unit diagonal. `s` = (Z (C o W) Z) / Z elementwise holds the
/// expected costs of non-hitting walks; its diagonal turns them into hitting
/// costs.
struct RspCore {
  double beta = 0.0;
  Matrix w;
  Matrix z;
  Matrix zh;
  Matrix s;
};

/// Largest admissible beta * c over all edges; beyond it exp(-beta c) loses
/// paths to underflow.
inline constexpr double kMaxBetaCost = 700.0;

RspCore build_core(const CostedGraph& g, double beta);

/// Directed expected hitting cost, C-bar = S - e diag(S)^T.
Matrix directed_expected_costs(const RspCore& core);
/// Directed free energy, Phi = -(1/beta) log Z^h.
Matrix directed_free_energy(const RspCore& core);

/// Symmetrised expected cost of the optimal randomized walk (semimetric).
DistanceMatrix rsp_dissimilarity(const RspCore& core);
/// Symmetrised free energy; a graph-geodetic metric.
DistanceMatrix free_energy_distance(const RspCore& core);
/// Relative entropy of the optimal hitting-path distribution w.r.t. the
/// reference one: J = -beta C-bar - log Z^h.
Matrix relative_entropy_matrix(const RspCore& core);

}  // namespace gdist
