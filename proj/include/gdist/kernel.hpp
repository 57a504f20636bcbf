#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdist/distance.hpp"
#include "gdist/graph.hpp"

namespace gdist {

enum class KernelKind { Centered, SigmoidCT };

/// Symmetric similarity matrix; not necessarily positive semidefinite.
struct KernelMatrix {
  Matrix values;
  KernelKind kind = KernelKind::Centered;
  std::string source;
};

/// K = -1/2 H D H with H = I - ee^T/n. Distances enter unsquared.
KernelMatrix center_kernel(const DistanceMatrix& d);

/// K_st = 1 / (1 + exp(-a l+_st / sigma)), sigma the population standard
/// deviation over all n^2 entries of L+.
KernelMatrix sigmoid_ct_kernel(const LaplacianPair& lp, double a);

/// Drops negative eigenvalues (V max(Lambda, 0) V^T).
KernelMatrix psd_clip(const KernelMatrix& k);

struct Partition {
  std::vector<int> assignment;
  int k = 0;
  double inertia = 0.0;
};

/// Within-cluster inertia in the kernel embedding:
/// sum_c [ sum_{i in c} K_ii - (1/|c|) sum_{i,j in c} K_ij ].
double kernel_inertia(const Matrix& k, const std::vector<int>& assignment, int clusters);

struct KMeansRun {
  Partition partition;
  std::vector<double> inertia_trace;  // one entry per accepted assignment
  int iterations = 0;
};

inline constexpr int kKMeansMaxIterations = 300;

/// One restart: random initial assignment from `rng_seed`, then Lloyd steps
/// with cluster-mean prototypes. A step is kept only if it does not raise
/// the inertia; the run stops at the first step that changes nothing, raises
/// the inertia, or after 300 iterations.
KMeansRun kernel_kmeans_run(const KernelMatrix& k, int clusters, std::uint64_t rng_seed);

/// Best-inertia partition over `restarts` runs (lowest restart index on ties).
/// Restart r is seeded with derive_seed(seed, {r}). Restarts run in parallel.
Partition kernel_kmeans(const KernelMatrix& k, int clusters, int restarts, std::uint64_t seed);

namespace serial {
Partition kernel_kmeans(const KernelMatrix& k, int clusters, int restarts, std::uint64_t seed);
}  // namespace serial

struct CmdsResult {
  Matrix coords;        // n x d
  Vector eigenvalues;   // top d, descending
  int zero_filled = 0;  // dimensions with non-positive eigenvalue
};

/// Classical MDS of center_kernel(d). Each eigenvector is signed so that its
/// largest-magnitude entry is positive.
CmdsResult cmds_coordinates(const DistanceMatrix& d, int dims);

}  // namespace gdist
