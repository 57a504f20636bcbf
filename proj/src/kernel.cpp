#include "gdist/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "gdist/error.hpp"
#include "gdist/seed.hpp"

namespace gdist {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

struct ClusterStats {
  std::vector<int> size;
  Matrix row_sums;               // n x k: sum_{j in c} K_ij
  std::vector<double> self_sum;  // sum_{j,l in c} K_jl
};

ClusterStats cluster_stats(const Matrix& k, const std::vector<int>& assign, int clusters) {
  const int n = static_cast<int>(k.rows());
  ClusterStats st;
  st.size.assign(clusters, 0);
  st.row_sums = Matrix::Zero(n, clusters);
  st.self_sum.assign(clusters, 0.0);
  for (int j = 0; j < n; ++j) {
    ++st.size[assign[j]];
    st.row_sums.col(assign[j]) += k.col(j);
  }
  for (int i = 0; i < n; ++i) st.self_sum[assign[i]] += st.row_sums(i, assign[i]);
  return st;
}

double embedding_distance(const Matrix& k, const ClusterStats& st, int i, int c) {
  const double m = st.size[c];
  return k(i, i) - 2.0 / m * st.row_sums(i, c) + st.self_sum[c] / (m * m);
}

// Moves the point farthest from its own prototype into each empty cluster.
void repair_empty(const Matrix& k, std::vector<int>& assign, int clusters) {
  for (int attempt = 0;; ++attempt) {
    std::vector<int> size(clusters, 0);
    for (int c : assign) ++size[c];
    int empty = -1;
    for (int c = 0; c < clusters; ++c)
      if (size[c] == 0) {
        empty = c;
        break;
      }
    if (empty < 0) return;
    if (attempt >= clusters) throw Error(ErrorCode::EmptyClusterUnrecoverable, "could not refill empty clusters");
    const ClusterStats st = cluster_stats(k, assign, clusters);
    int far = -1;
    double far_d = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(assign.size()); ++i) {
      if (size[assign[i]] < 2) continue;
      const double d = embedding_distance(k, st, i, assign[i]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) throw Error(ErrorCode::EmptyClusterUnrecoverable, "no cluster has a point to spare");
    assign[far] = empty;
  }
}

void check_kmeans_args(const KernelMatrix& k, int clusters, int restarts) {
  if (clusters < 1 || clusters > k.values.rows()) {
    throw Error(ErrorCode::ParamOutOfRange, "k must lie in 1..n");
  }
  if (restarts < 1) throw Error(ErrorCode::ParamOutOfRange, "restarts must be >= 1");
}

Partition pick_best(std::vector<KMeansRun>& runs) {
  size_t best = 0;
  for (size_t r = 1; r < runs.size(); ++r)
    if (runs[r].partition.inertia < runs[best].partition.inertia) best = r;
  return std::move(runs[best].partition);
}

}  // namespace

KernelMatrix center_kernel(const DistanceMatrix& d) {
  const Eigen::Index n = d.values.rows();
  const Matrix h = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  return {symmetrized(-0.5 * h * d.values * h), KernelKind::Centered, std::string(to_string(d.method))};
}

KernelMatrix sigmoid_ct_kernel(const LaplacianPair& lp, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::ParamOutOfRange, "a must be positive");
  const Matrix& l = lp.pseudoinverse;
  const double mean = l.mean();
  const double sigma = std::sqrt((l.array() - mean).square().mean());
  if (!(sigma > 0.0)) throw Error(ErrorCode::DegenerateSigma, "L+ entries have zero spread");
  Matrix k = (1.0 + (-a / sigma * l.array()).exp()).inverse().matrix();
  return {symmetrized(k), KernelKind::SigmoidCT, "sigct"};
}

KernelMatrix psd_clip(const KernelMatrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k.values);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "eigendecomposition failed");
  const Vector lambda = eig.eigenvalues().cwiseMax(0.0);
  const Matrix& v = eig.eigenvectors();
  return {symmetrized(v * lambda.asDiagonal() * v.transpose()), k.kind, k.source + "+psd"};
}

double kernel_inertia(const Matrix& k, const std::vector<int>& assignment, int clusters) {
  const ClusterStats st = cluster_stats(k, assignment, clusters);
  double total = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) total += k(i, i);
  for (int c = 0; c < clusters; ++c)
    if (st.size[c] > 0) total -= st.self_sum[c] / st.size[c];
  return total;
}

KMeansRun kernel_kmeans_run(const KernelMatrix& km, int clusters, std::uint64_t rng_seed) {
  check_kmeans_args(km, clusters, 1);
  const Matrix& k = km.values;
  const int n = static_cast<int>(k.rows());
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<int> pick(0, clusters - 1);

  KMeansRun run;
  std::vector<int> assign(n);
  for (int& a : assign) a = pick(rng);
  repair_empty(k, assign, clusters);
  double inertia = kernel_inertia(k, assign, clusters);
  run.inertia_trace.push_back(inertia);

  for (int it = 0; it < kKMeansMaxIterations; ++it) {
    run.iterations = it + 1;
    const ClusterStats st = cluster_stats(k, assign, clusters);
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = embedding_distance(k, st, i, 0);
      for (int c = 1; c < clusters; ++c) {
        const double d = embedding_distance(k, st, i, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[i] = best;
    }
    repair_empty(k, next, clusters);
    if (next == assign) break;
    const double next_inertia = kernel_inertia(k, next, clusters);
    if (next_inertia > inertia) break;
    assign = std::move(next);
    run.inertia_trace.push_back(next_inertia);
    if (next_inertia == inertia) break;
    inertia = next_inertia;
  }
  run.partition = {std::move(assign), clusters, std::max(0.0, run.inertia_trace.back())};
  return run;
}

Partition kernel_kmeans(const KernelMatrix& k, int clusters, int restarts, std::uint64_t seed) {
  check_kmeans_args(k, clusters, restarts);
  std::vector<KMeansRun> runs(restarts);
  std::vector<std::exception_ptr> errors(restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    try {
      runs[r] = kernel_kmeans_run(k, clusters, derive_seed(seed, {static_cast<std::uint32_t>(r)}));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return pick_best(runs);
}

namespace serial {
Partition kernel_kmeans(const KernelMatrix& k, int clusters, int restarts, std::uint64_t seed) {
  check_kmeans_args(k, clusters, restarts);
  std::vector<KMeansRun> runs;
  for (int r = 0; r < restarts; ++r)
    runs.push_back(kernel_kmeans_run(k, clusters, derive_seed(seed, {static_cast<std::uint32_t>(r)})));
  return pick_best(runs);
}
}  // namespace serial

CmdsResult cmds_coordinates(const DistanceMatrix& d, int dims) {
  const int n = d.size();
  if (dims < 1 || dims > n - 1) throw Error(ErrorCode::ParamOutOfRange, "dimension must lie in 1..n-1");
  const KernelMatrix k = center_kernel(d);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k.values);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "eigendecomposition failed");
  CmdsResult out;
  out.coords = Matrix::Zero(n, dims);
  out.eigenvalues = Vector::Zero(dims);
  for (int j = 0; j < dims; ++j) {
    const Eigen::Index src = n - 1 - j;  // ascending order from Eigen
    const double lambda = eig.eigenvalues()(src);
    out.eigenvalues(j) = lambda;
    if (!(lambda > 0.0)) {
      ++out.zero_filled;
      continue;
    }
    Vector v = eig.eigenvectors().col(src);
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    if (v(top) < 0.0) v = -v;
    out.coords.col(j) = std::sqrt(lambda) * v;
  }
  return out;
}

}  // namespace gdist
