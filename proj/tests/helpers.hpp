#pragma once

#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gdist/fixtures.hpp"
#include "gdist/graph.hpp"

namespace gdist::test {

struct Named {
  std::string name;
  CostedGraph graph;
};

inline std::vector<Named> canonical_fixtures() {
  return {{"k2", fixtures::k2()},
          {"path3", fixtures::path3()},
          {"ext-triangle", fixtures::extended_triangle()},
          {"hub-4-3", fixtures::hub_4_3()},
          {"barbell", fixtures::barbell()},
          {"two-cliques", fixtures::two_cliques(4)}};
}

/// n in [3, 8], seeds 1..count, mixed weight models.
inline std::vector<Named> small_random(int count) {
  std::vector<Named> out;
  for (int i = 1; i <= count; ++i) {
    const auto w = static_cast<fixtures::Weights>(i % 3);
    out.push_back({"random" + std::to_string(i), fixtures::random_connected(3 + i % 6, 100 + i, w)});
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Off-diagonal a / b: (min, max).
inline std::pair<double, double> ratio_range(const Matrix& a, const Matrix& b) {
  double lo = INFINITY, hi = -INFINITY;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i == j) continue;
      const double r = a(i, j) / b(i, j);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  return {lo, hi};
}

/// Residual of the best rigid+reflection alignment of x onto y (both n x d),
/// after centring both.
inline double procrustes_residual(Matrix x, Matrix y) {
  x.rowwise() -= x.colwise().mean();
  y.rowwise() -= y.colwise().mean();
  Eigen::JacobiSVD<Matrix> svd(x.transpose() * y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix r = svd.matrixU() * svd.matrixV().transpose();
  return (x * r - y).norm();
}

/// Effective resistance by a grounded solve, independent of L+.
inline double grounded_resistance(const CostedGraph& g, int s, int t) {
  const Matrix a = g.affinity_matrix();
  const int n = g.size();
  Matrix l = Matrix(a.rowwise().sum().asDiagonal()) - a;
  // ground node t: drop its row and column
  Matrix lr(n - 1, n - 1);
  Vector rhs = Vector::Zero(n - 1);
  for (int i = 0, ri = 0; i < n; ++i) {
    if (i == t) continue;
    for (int j = 0, rj = 0; j < n; ++j) {
      if (j == t) continue;
      lr(ri, rj++) = l(i, j);
    }
    if (i == s) rhs(ri) = 1.0;
    ++ri;
  }
  const Vector v = lr.fullPivLu().solve(rhs);
  return v(s < t ? s : s - 1);
}

}  // namespace gdist::test
