#include "gdist/alt.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <utility>

#include "gdist/classic.hpp"
#include "gdist/error.hpp"

namespace gdist {

DistanceMatrix log_forest(const CostedGraph& g, double alpha, double gamma) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::ParamOutOfRange, "alpha must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(ErrorCode::ParamOutOfRange, "gamma must be positive");
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "log forest distance needs a connected graph");

  const int n = g.size();
  const Matrix a = g.affinity_matrix();
  const Matrix lap = Matrix(a.rowwise().sum().asDiagonal()) - a;
  const Matrix regularized = Matrix::Identity(n, n) + alpha * lap;
  const Matrix q = regularized.llt().solve(Matrix::Identity(n, n));
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!(q.data()[i] > 0.0)) {
      throw Error(ErrorCode::UnderflowZ, "forest matrix entry underflowed; alpha too small for this graph");
    }
  }

  const double log_alpha = std::log(alpha);
  double factor = gamma;
  if (std::abs(log_alpha) > 1e-8) {
    factor = gamma * (alpha - 1.0) / log_alpha;
  } else {
    factor = gamma * (1.0 + 0.5 * (alpha - 1.0));
  }
  const Matrix m = factor * q.array().log().matrix();

  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = 0.5 * (m(i, i) + m(j, j)) - m(i, j);
  symmetrize_from_upper(d);
  DistanceMatrix out{std::move(d), Method::LOGFOR, {}};
  out.params.alpha = alpha;
  out.params.gamma = gamma;
  return out;
}

double kirchhoff_residual(const CostedGraph& g, const FlowAssignment& flow) {
  std::vector<double> net(g.size(), 0.0);
  const auto& edges = g.edges();
  for (size_t e = 0; e < edges.size(); ++e) {
    net[edges[e].u] += flow.current[e];
    net[edges[e].v] -= flow.current[e];
  }
  net[flow.source] -= 1.0;
  net[flow.target] += 1.0;
  double worst = 0.0;
  for (double x : net) worst = std::max(worst, std::abs(x));
  return worst;
}

double p_resistance_objective(const CostedGraph& g, const FlowAssignment& flow, double p) {
  double total = 0.0;
  const auto& edges = g.edges();
  for (size_t e = 0; e < edges.size(); ++e) total += edges[e].cost * std::pow(std::abs(flow.current[e]), p);
  return total;
}

namespace {

FlowAssignment shortest_path_flow(const CostedGraph& g, int s, int t, double* value) {
  std::vector<int> parent_edge;
  const auto dist = dijkstra(g, s, &parent_edge);
  FlowAssignment flow{std::vector<double>(g.edges().size(), 0.0), s, t};
  int x = t;
  while (x != s) {
    const int e = parent_edge[x];
    const Edge& edge = g.edges()[e];
    const int from = edge.u == x ? edge.v : edge.u;
    flow.current[e] += (edge.u == from) ? 1.0 : -1.0;
    x = from;
  }
  *value = dist[t];
  return flow;
}

// Potential (dual) form of min sum r |f|^p over unit s -> t flows:
//   F(phi) = sum_e (p - 1) r_e (|dphi_e| / (p r_e))^q - (phi_s - phi_t),  q = p / (p - 1),
// with phi_t = 0. F is convex and C^2 for p in (1, 2]; the edge flow is
// f_e = sign(dphi_e) (|dphi_e| / (p r_e))^(q - 1) and grad F is the
// conservation residual of that flow.
class PotentialObjective {
 public:
  PotentialObjective(const CostedGraph& g, int s, int t, double p) : g_(g), s_(s), t_(t), p_(p), q_(p / (p - 1.0)) {}

  double drop(const Vector& phi, const Edge& e) const { return phi(e.u) - phi(e.v); }

  double flow(const Vector& phi, const Edge& e) const {
    const double x = drop(phi, e);
    const double f = std::pow(std::abs(x) / (p_ * e.cost), q_ - 1.0);
    return x < 0.0 ? -f : f;
  }

  double value(const Vector& phi) const {
    double total = -(phi(s_) - phi(t_));
    for (const Edge& e : g_.edges())
      total += (p_ - 1.0) * e.cost * std::pow(std::abs(drop(phi, e)) / (p_ * e.cost), q_);
    return total;
  }

  // Gradient and Hessian over every node; the t row and column are dropped by the caller.
  void derivatives(const Vector& phi, Vector& grad, Matrix& hess) const {
    const int n = g_.size();
    grad = Vector::Zero(n);
    hess = Matrix::Zero(n, n);
    for (const Edge& e : g_.edges()) {
      const double x = drop(phi, e);
      const double ratio = std::abs(x) / (p_ * e.cost);
      const double f = x < 0.0 ? -std::pow(ratio, q_ - 1.0) : std::pow(ratio, q_ - 1.0);
      const double w = (q_ - 1.0) / (p_ * e.cost) * std::pow(ratio, q_ - 2.0);
      grad(e.u) += f;
      grad(e.v) -= f;
      hess(e.u, e.u) += w;
      hess(e.v, e.v) += w;
      hess(e.u, e.v) -= w;
      hess(e.v, e.u) -= w;
    }
    grad(s_) -= 1.0;
    grad(t_) += 1.0;
  }

 private:
  const CostedGraph& g_;
  int s_, t_;
  double p_, q_;
};

Vector drop_index(const Vector& v, int k) {
  Vector out(v.size() - 1);
  out << v.head(k), v.tail(v.size() - k - 1);
  return out;
}

Matrix drop_index(const Matrix& m, int k) {
  const Eigen::Index n = m.rows();
  Matrix out(n - 1, n - 1);
  out.topLeftCorner(k, k) = m.topLeftCorner(k, k);
  out.topRightCorner(k, n - k - 1) = m.topRightCorner(k, n - k - 1);
  out.bottomLeftCorner(n - k - 1, k) = m.bottomLeftCorner(n - k - 1, k);
  out.bottomRightCorner(n - k - 1, n - k - 1) = m.bottomRightCorner(n - k - 1, n - k - 1);
  return out;
}

Vector insert_zero(const Vector& v, int k) {
  Vector out(v.size() + 1);
  out << v.head(k), 0.0, v.tail(v.size() - k);
  return out;
}

// Electrical potentials (conductance 1 / cost) for a unit s -> t current, phi_t = 0.
Vector electrical_potentials(const CostedGraph& g, int s, int t) {
  const int n = g.size();
  Matrix lap = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const double c = 1.0 / e.cost;
    lap(e.u, e.u) += c;
    lap(e.v, e.v) += c;
    lap(e.u, e.v) -= c;
    lap(e.v, e.u) -= c;
  }
  Vector rhs = Vector::Zero(n);
  rhs(s) = 1.0;
  return insert_zero(drop_index(lap, t).ldlt().solve(drop_index(rhs, t)), t);
}

struct NewtonOutcome {
  Vector phi;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Damped Newton on the potential objective. Once F no longer changes at
// working precision, steps are judged by the residual instead.
NewtonOutcome minimize_newton(const PotentialObjective& obj, int t, Vector phi, double tol, int max_iter) {
  NewtonOutcome out;
  Vector grad, trial_grad;
  Matrix hess, unused;
  double fphi = obj.value(phi);
  for (int it = 0; it < max_iter; ++it) {
    obj.derivatives(phi, grad, hess);
    out.iterations = it;
    out.residual = grad.lpNorm<Eigen::Infinity>();
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
    const Vector step = insert_zero(drop_index(hess, t).ldlt().solve(drop_index(grad, t)), t);
    const double decrement = grad.dot(step);
    if (!std::isfinite(decrement) || decrement <= 0.0) break;
    const double resolution = 1e-14 * (1.0 + std::abs(fphi));
    bool moved = false;
    for (double alpha = 1.0; alpha > 1e-20 && !moved; alpha *= 0.5) {
      const Vector trial = phi - alpha * step;
      const double ft = obj.value(trial);
      if (!std::isfinite(ft)) continue;
      if (ft <= fphi - 1e-4 * alpha * decrement && fphi - ft > resolution) {
        moved = true;
      } else if (std::abs(ft - fphi) <= resolution) {
        obj.derivatives(trial, trial_grad, unused);
        moved = trial_grad.lpNorm<Eigen::Infinity>() < (1.0 - 1e-4 * alpha) * out.residual;
      }
      if (moved) {
        phi = trial;
        fphi = ft;
      }
    }
    if (!moved) break;
  }
  out.phi = std::move(phi);
  return out;
}

}  // namespace

PResistanceResult p_resistance_pair(const CostedGraph& g, int s, int t, double p, const PResistanceOptions& options) {
  if (!(p >= 1.0 && p <= 2.0)) throw Error(ErrorCode::ParamOutOfRange, "p must lie in [1, 2]");
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "p-resistance needs a connected graph");
  if (s < 0 || t < 0 || s >= g.size() || t >= g.size() || s == t) {
    throw Error(ErrorCode::ParamOutOfRange, "p-resistance needs two distinct nodes");
  }

  PResistanceResult result;
  if (p == 1.0) {
    result.flow = shortest_path_flow(g, s, t, &result.value);
    return result;
  }

  // Continuation in p: p - 1 halves from 1 down to the target, each stage
  // warm-started from the previous potentials (scaled so |dphi| / (p c) is kept).
  std::vector<double> stages;
  for (double e = 0.5; e > p - 1.0; e *= 0.5) stages.push_back(1.0 + e);
  stages.push_back(p);

  Vector phi = electrical_potentials(g, s, t);
  phi *= 2.0;  // exact optimum at p = 2
  double previous = 2.0;
  for (size_t k = 0; k < stages.size(); ++k) {
    const bool last = k + 1 == stages.size();
    phi *= stages[k] / previous;
    previous = stages[k];
    const PotentialObjective obj(g, s, t, stages[k]);
    // flows are ratio^(q - 1): rounding in phi is amplified by q - 1 = 1 / (p - 1)
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() / (stages[k] - 1.0);
    const double tol = last ? std::max(options.tolerance, floor) : 1e-6;
    const NewtonOutcome out = minimize_newton(obj, t, phi, tol, options.max_iterations);
    result.iterations += out.iterations;
    result.residual = out.residual;
    phi = out.phi;
    if (last && !out.converged) {
      std::ostringstream msg;
      msg << "Newton stopped after " << result.iterations << " iterations, Kirchhoff residual " << result.residual;
      throw Error(ErrorCode::SolverNotConverged, msg.str());
    }
  }

  const PotentialObjective obj(g, s, t, p);
  result.flow = FlowAssignment{std::vector<double>(g.edges().size()), s, t};
  for (size_t e = 0; e < g.edges().size(); ++e) result.flow.current[e] = obj.flow(phi, g.edges()[e]);
  result.value = p_resistance_objective(g, result.flow, p);
  return result;
}

namespace {

void check_size(const CostedGraph& g, const PResistanceOptions& options) {
  if (g.size() > options.max_nodes) {
    throw Error(ErrorCode::GraphTooLarge, "p-resistance is capped at " + std::to_string(options.max_nodes) +
                                              " nodes (graph has " + std::to_string(g.size()) + ")");
  }
}

DistanceMatrix tag(Matrix values, double p) {
  symmetrize_from_upper(values);
  DistanceMatrix out{std::move(values), Method::PRES, {}};
  out.params.p = p;
  return out;
}

}  // namespace

DistanceMatrix p_resistance(const CostedGraph& g, double p, const PResistanceOptions& options) {
  check_size(g, options);
  if (!(p >= 1.0 && p <= 2.0)) throw Error(ErrorCode::ParamOutOfRange, "p must lie in [1, 2]");
  if (p == 1.0) return tag(shortest_path(g).values, p);
  const int n = g.size();
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  Matrix values = Matrix::Zero(n, n);
  std::vector<std::exception_ptr> errors(pairs.size());
  const long count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      values(pairs[i].first, pairs[i].second) = p_resistance_pair(g, pairs[i].first, pairs[i].second, p, options).value;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return tag(std::move(values), p);
}

namespace serial {
DistanceMatrix p_resistance(const CostedGraph& g, double p, const PResistanceOptions& options) {
  check_size(g, options);
  if (!(p >= 1.0 && p <= 2.0)) throw Error(ErrorCode::ParamOutOfRange, "p must lie in [1, 2]");
  if (p == 1.0) return tag(serial::shortest_path(g).values, p);
  const int n = g.size();
  Matrix values = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) values(s, t) = p_resistance_pair(g, s, t, p, options).value;
  return tag(std::move(values), p);
}
}  // namespace serial

}  // namespace gdist
