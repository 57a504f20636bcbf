#include "gdist/rsp.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "gdist/error.hpp"

namespace gdist {

RspCore build_core(const CostedGraph& g, double beta) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "RSP core needs a connected graph");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::ParamOutOfRange, "beta must be positive");
  double max_cost = 0.0;
  for (const auto& e : g.edges()) max_cost = std::max(max_cost, e.cost);
  if (beta * max_cost > kMaxBetaCost) {
    std::ostringstream msg;
    msg << "beta * max cost = " << beta * max_cost << " exceeds " << kMaxBetaCost;
    throw Error(ErrorCode::BetaTooLarge, msg.str());
  }

  const int n = g.size();
  const Matrix p = transition_matrix(g).p;
  RspCore core;
  core.beta = beta;
  core.w = Matrix::Zero(n, n);
  Matrix cost_w = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    const double k = std::exp(-beta * e.cost);
    core.w(e.u, e.v) = p(e.u, e.v) * k;
    core.w(e.v, e.u) = p(e.v, e.u) * k;
    cost_w(e.u, e.v) = e.cost * core.w(e.u, e.v);
    cost_w(e.v, e.u) = e.cost * core.w(e.v, e.u);
  }

  const Matrix system = Matrix::Identity(n, n) - core.w;
  Eigen::PartialPivLU<Matrix> lu(system);
  core.z = lu.solve(Matrix::Identity(n, n));
  if (!core.z.allFinite()) throw Error(ErrorCode::SingularSystem, "I - W is singular");
  const double residual = (system * core.z - Matrix::Identity(n, n)).norm() / std::sqrt(double(n));
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "relative residual of (I - W) Z = I is " << residual;
    throw Error(ErrorCode::SingularSystem, msg.str());
  }
  for (Eigen::Index i = 0; i < core.z.size(); ++i) {
    if (!(core.z.data()[i] > 0.0)) {
      throw Error(ErrorCode::UnderflowZ, "fundamental matrix has a non-positive entry; some pair is unreachable");
    }
  }

  core.zh.resize(n, n);
  for (int t = 0; t < n; ++t) {
    core.zh.col(t) = core.z.col(t) / core.z(t, t);
    core.zh(t, t) = 1.0;
  }
  core.s = (core.z * cost_w * core.z).cwiseQuotient(core.z);
  return core;
}

Matrix directed_expected_costs(const RspCore& core) {
  Matrix c = core.s.rowwise() - core.s.diagonal().transpose();
  c.diagonal().setZero();
  return c;
}

Matrix directed_free_energy(const RspCore& core) {
  Matrix phi = -core.zh.array().log() / core.beta;
  phi.diagonal().setZero();
  return phi;
}

DistanceMatrix rsp_dissimilarity(const RspCore& core) {
  const Matrix c = directed_expected_costs(core);
  Matrix d = 0.5 * (c + c.transpose());
  symmetrize_from_upper(d);
  DistanceMatrix out{std::move(d), Method::RSP, {}};
  out.params.beta = core.beta;
  return out;
}

DistanceMatrix free_energy_distance(const RspCore& core) {
  for (Eigen::Index i = 0; i < core.zh.size(); ++i) {
    if (!(core.zh.data()[i] > 0.0)) throw Error(ErrorCode::UnderflowZ, "hitting partition function underflowed");
  }
  const Matrix phi = directed_free_energy(core);
  Matrix d = 0.5 * (phi + phi.transpose());
  symmetrize_from_upper(d);
  DistanceMatrix out{std::move(d), Method::FE, {}};
  out.params.beta = core.beta;
  return out;
}

Matrix relative_entropy_matrix(const RspCore& core) {
  Matrix j = -core.beta * directed_expected_costs(core) - Matrix(core.zh.array().log());
  j.diagonal().setZero();
  return j;
}

}  // namespace gdist
