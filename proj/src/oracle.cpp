#include "gdist/oracle.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "gdist/error.hpp"
#include "gdist/io.hpp"

namespace gdist {

namespace {

struct RefRow {
  int node;
  double prob;
  double cost;
};

std::vector<std::vector<RefRow>> reference_rows(const CostedGraph& g) {
  const TransitionMatrix p = transition_matrix(g);
  std::vector<std::vector<RefRow>> rows(g.size());
  for (int u = 0; u < g.size(); ++u)
    for (const auto& nb : g.neighbors(u)) rows[u].push_back({nb.node, p.p(u, nb.node), g.edges()[nb.edge].cost});
  return rows;
}

void check_pair(const CostedGraph& g, int s, int t, int max_length) {
  if (s < 0 || t < 0 || s >= g.size() || t >= g.size()) throw Error(ErrorCode::InvalidArgument, "node out of range");
  if (max_length < 0) throw Error(ErrorCode::ParamOutOfRange, "max_length must be >= 0");
}

double max_row_factor(const std::vector<std::vector<std::pair<double, double>>>& rows, double beta) {
  double r = 0.0;
  for (const auto& row : rows) {
    double sum = 0.0;
    for (auto [p, c] : row) sum += p * std::exp(-beta * c);
    r = std::max(r, sum);
  }
  return r;
}

// Depth-first walk over hitting paths. `on_path(prob, cost, nodes)` fires for
// each complete path, `on_frontier(prob, cost)` for each walk cut at max_length.
template <class OnPath, class OnFrontier>
void walk_hitting_paths(const std::vector<std::vector<RefRow>>& rows, int s, int t, int max_length, OnPath&& on_path,
                        OnFrontier&& on_frontier) {
  std::vector<int> stack{s};
  if (s == t) {
    on_path(1.0, 0.0, stack);
    return;
  }
  auto visit = [&](auto&& self, int node, int depth, double prob, double cost) -> void {
    for (const auto& step : rows[node]) {
      const double p = prob * step.prob;
      const double c = cost + step.cost;
      stack.push_back(step.node);
      if (step.node == t) {
        on_path(p, c, stack);
      } else if (depth + 1 < max_length) {
        self(self, step.node, depth + 1, p, c);
      } else {
        on_frontier(p, c);
      }
      stack.pop_back();
    }
  };
  if (max_length > 0) visit(visit, s, 0, 1.0, 0.0);
}

std::vector<std::vector<std::pair<double, double>>> non_target_rows(const std::vector<std::vector<RefRow>>& rows,
                                                                    int t) {
  std::vector<std::vector<std::pair<double, double>>> out;
  for (size_t u = 0; u < rows.size(); ++u) {
    if (static_cast<int>(u) == t) continue;
    std::vector<std::pair<double, double>> row;
    for (const auto& r : rows[u]) row.emplace_back(r.prob, r.cost);
    out.push_back(std::move(row));
  }
  return out;
}

double geometric_tail(double frontier_mass, double r) {
  if (frontier_mass == 0.0) return 0.0;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return frontier_mass * r / (1.0 - r);
}

}  // namespace

double PathEnsemble::tail_bound(double beta) const {
  double mass = 0.0;
  for (const auto& f : frontier_) mass += f.ref_prob * std::exp(-beta * f.cost);
  return geometric_tail(mass, max_row_factor(rows_, beta));
}

PathEnsemble enumerate_hitting_paths(const CostedGraph& g, int s, int t, int max_length, std::size_t cap) {
  check_pair(g, s, t, max_length);
  const auto rows = reference_rows(g);
  PathEnsemble ens;
  ens.source = s;
  ens.target = t;
  ens.max_length = max_length;
  ens.rows_ = non_target_rows(rows, t);
  auto guard = [&] {
    if (ens.paths.size() + ens.frontier_.size() > cap) {
      throw Error(ErrorCode::EnsembleTooLarge,
                  "more than " + std::to_string(cap) + " walks up to length " + std::to_string(max_length));
    }
  };
  walk_hitting_paths(
      rows, s, t, max_length,
      [&](double prob, double cost, const std::vector<int>& nodes) {
        ens.paths.push_back({nodes, prob, cost});
        guard();
      },
      [&](double prob, double cost) {
        ens.frontier_.push_back({prob, cost});
        guard();
      });
  return ens;
}

double oracle_partition_function(const PathEnsemble& ens, double beta) {
  double z = 0.0;
  for (const auto& path : ens.paths) z += path.ref_prob * std::exp(-beta * path.cost);
  return z;
}

double oracle_expected_cost(const PathEnsemble& ens, double beta) {
  const double z = oracle_partition_function(ens, beta);
  if (ens.paths.empty() || !(z > 0.0)) throw Error(ErrorCode::DegenerateEnsemble, "ensemble carries no mass");
  double total = 0.0;
  for (const auto& path : ens.paths) total += path.ref_prob * std::exp(-beta * path.cost) / z * path.cost;
  return total;
}

double oracle_relative_entropy(const PathEnsemble& ens, double beta) {
  const double z = oracle_partition_function(ens, beta);
  if (ens.paths.empty() || !(z > 0.0)) throw Error(ErrorCode::DegenerateEnsemble, "ensemble carries no mass");
  double j = 0.0;
  for (const auto& path : ens.paths) {
    const double boltzmann = path.ref_prob * std::exp(-beta * path.cost) / z;
    if (boltzmann > 0.0) j += boltzmann * std::log(boltzmann / path.ref_prob);
  }
  return j;
}

PathSums accumulate_hitting_paths(const CostedGraph& g, int s, int t, int max_length, double beta, std::size_t cap) {
  check_pair(g, s, t, max_length);
  const auto rows = reference_rows(g);
  PathSums sums;
  double frontier_mass = 0.0;
  std::size_t visited = 0;
  auto guard = [&] {
    if (++visited > cap) {
      throw Error(ErrorCode::EnsembleTooLarge,
                  "more than " + std::to_string(cap) + " walks up to length " + std::to_string(max_length));
    }
  };
  walk_hitting_paths(
      rows, s, t, max_length,
      [&](double prob, double cost, const std::vector<int>&) {
        guard();
        sums.partition += prob * std::exp(-beta * cost);
        ++sums.path_count;
      },
      [&](double prob, double cost) {
        guard();
        frontier_mass += prob * std::exp(-beta * cost);
      });
  if (!(sums.partition > 0.0)) throw Error(ErrorCode::DegenerateEnsemble, "no hitting path within max_length");
  const double z = sums.partition;
  walk_hitting_paths(
      rows, s, t, max_length,
      [&](double prob, double cost, const std::vector<int>&) {
        const double boltzmann = prob * std::exp(-beta * cost) / z;
        sums.expected_cost += boltzmann * cost;
        if (boltzmann > 0.0) sums.relative_entropy += boltzmann * std::log(boltzmann / prob);
      },
      [](double, double) {});
  sums.tail_bound = geometric_tail(frontier_mass, max_row_factor(non_target_rows(rows, t), beta));
  return sums;
}

Vector WalkSeries::expected_cost() const { return cost_mass.cwiseQuotient(partition); }

Vector WalkSeries::relative_entropy() const {
  Vector j(partition.size());
  for (Eigen::Index s = 0; s < j.size(); ++s) j(s) = -beta * cost_mass(s) / partition(s) - std::log(partition(s));
  return j;
}

WalkSeries hitting_walk_series(const CostedGraph& g, int target, double beta, int max_length, double tail_tol) {
  check_pair(g, target, target, max_length);
  if (!(beta > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "beta must be positive");
  const int n = g.size();
  const auto rows = reference_rows(g);

  // W with the target row removed; walks stop on first arrival at the target.
  Matrix wt = Matrix::Zero(n, n);
  Matrix cwt = Matrix::Zero(n, n);
  double r = 0.0, c_max = 0.0;
  for (int u = 0; u < n; ++u) {
    if (u == target) continue;
    double row_sum = 0.0;
    for (const auto& step : rows[u]) {
      const double w = step.prob * std::exp(-beta * step.cost);
      wt(u, step.node) = w;
      cwt(u, step.node) = w * step.cost;
      row_sum += w;
      c_max = std::max(c_max, step.cost);
    }
    r = std::max(r, row_sum);
  }

  WalkSeries out;
  out.target = target;
  out.beta = beta;
  Vector a = Vector::Unit(n, target);  // walks of the current length ending at target
  Vector b = Vector::Zero(n);          // their cost-weighted mass
  Vector u = wt * Vector::Ones(n);     // (W_t^h)^(T+1) e, the tail bound
  out.partition = a;
  out.cost_mass = b;
  int length = 0;
  auto cost_tail = [&](int len) {
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    const double head = u.maxCoeff();
    return c_max * head * ((len + 1) / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
  };
  while (length < max_length && (u.maxCoeff() > tail_tol || cost_tail(length) > tail_tol)) {
    b = wt * b + cwt * a;
    a = wt * a;
    u = wt * u;
    ++length;
    out.partition += a;
    out.cost_mass += b;
  }
  out.length = length;
  out.tail = u;
  out.cost_tail = cost_tail(length);
  return out;
}

Vector sherman_morrison_zh(const CostedGraph& g, double beta, int t) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
  if (!(beta > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "beta must be positive");
  const int n = g.size();
  const auto rows = reference_rows(g);
  Matrix w = Matrix::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (const auto& step : rows[u]) w(u, step.node) = step.prob * std::exp(-beta * step.cost);
  const Matrix z = (Matrix::Identity(n, n) - w).inverse();
  const Vector w_row = w.row(t).transpose();
  const double denom = 1.0 + w_row.dot(z.col(t));
  const Matrix zt = z - z.col(t) * (w_row.transpose() * z) / denom;
  return zt.col(t);
}

std::vector<OracleCheckRow> oracle_check(const CostedGraph& g, double beta, int max_length, OracleMode mode) {
  const RspCore core = build_core(g, beta);
  const int n = g.size();
  std::vector<OracleCheckRow> rows;
  rows.reserve(static_cast<size_t>(n) * n);
  for (int t = 0; t < n; ++t) {
    WalkSeries series;
    if (mode == OracleMode::Series) series = hitting_walk_series(g, t, beta, max_length, 0.0);
    for (int s = 0; s < n; ++s) {
      OracleCheckRow row;
      row.s = s;
      row.t = t;
      row.closed_form = core.zh(s, t);
      if (mode == OracleMode::Series) {
        row.oracle = series.partition(s);
        row.tail_bound = series.tail(s);
      } else {
        const PathSums sums = accumulate_hitting_paths(g, s, t, max_length, beta);
        row.oracle = sums.partition;
        row.tail_bound = sums.tail_bound;
      }
      row.abs_diff = std::abs(row.closed_form - row.oracle);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_oracle_check_csv(const std::vector<OracleCheckRow>& rows) {
  std::string out = "s,t,closed_form,oracle,tail_bound,abs_diff\n";
  for (const auto& r : rows) {
    out += std::to_string(r.s) + ',' + std::to_string(r.t) + ',' + format_double(r.closed_form) + ',' +
           format_double(r.oracle) + ',' + format_double(r.tail_bound) + ',' + format_double(r.abs_diff) + '\n';
  }
  return out;
}

}  // namespace gdist
