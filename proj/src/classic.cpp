#include "gdist/classic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "gdist/error.hpp"

namespace gdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_connected(const CostedGraph& g) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

void fill_row(const CostedGraph& g, int s, Matrix& out) {
  const auto dist = dijkstra(g, s);
  for (int t = 0; t < g.size(); ++t) out(s, t) = dist[t];
}

// Dijkstra gives d(s,t) and d(t,s) from different runs; they agree to the last
// bit only when the summation order matches, so keep the upper triangle.
DistanceMatrix finish_sp(Matrix values) {
  symmetrize_from_upper(values);
  return {std::move(values), Method::SP, {}};
}

DistanceMatrix scaled_pinv_distance(const LaplacianPair& lp, double scale, Method method) {
  const Matrix& l = lp.pseudoinverse;
  const Eigen::Index n = l.rows();
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = s + 1; t < n; ++t) d(s, t) = (l(s, s) + l(t, t) - 2.0 * l(s, t)) * scale;
  symmetrize_from_upper(d);
  return {std::move(d), method, {}};
}

}  // namespace

std::vector<double> dijkstra(const CostedGraph& g, int source, std::vector<int>* parent_edge) {
  const int n = g.size();
  std::vector<double> dist(n, kInf);
  if (parent_edge) parent_edge->assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const double nd = d + g.edges()[nb.edge].cost;
      if (nd < dist[nb.node]) {
        dist[nb.node] = nd;
        if (parent_edge) (*parent_edge)[nb.node] = nb.edge;
        heap.push({nd, nb.node});
      }
    }
  }
  return dist;
}

DistanceMatrix shortest_path(const CostedGraph& g) {
  require_connected(g);
  const int n = g.size();
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) fill_row(g, s, out);
  return finish_sp(std::move(out));
}

namespace serial {
DistanceMatrix shortest_path(const CostedGraph& g) {
  require_connected(g);
  const int n = g.size();
  Matrix out(n, n);
  for (int s = 0; s < n; ++s) fill_row(g, s, out);
  return finish_sp(std::move(out));
}
}  // namespace serial

DistanceMatrix shortest_path_unweighted(const CostedGraph& g) {
  require_connected(g);
  const int n = g.size();
  Matrix out = Matrix::Zero(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) {
    std::vector<int> hops(n, -1);
    std::queue<int> q;
    hops[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& nb : g.neighbors(u)) {
        if (hops[nb.node] < 0) {
          hops[nb.node] = hops[u] + 1;
          q.push(nb.node);
        }
      }
    }
    for (int t = 0; t < n; ++t) out(s, t) = hops[t];
  }
  return {std::move(out), Method::SPU, {}};
}

DistanceMatrix commute_time(const LaplacianPair& lp) { return scaled_pinv_distance(lp, lp.volume, Method::CT); }

DistanceMatrix commute_cost(const LaplacianPair& lp) { return scaled_pinv_distance(lp, lp.cost_volume, Method::CC); }

DistanceMatrix resistance(const LaplacianPair& lp) {
  DistanceMatrix ct = commute_time(lp);
  ct.values /= lp.volume;
  ct.method = Method::RES;
  return ct;
}

DistanceMatrix spct_combination(const DistanceMatrix& sp, const DistanceMatrix& res, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "lambda must lie in [0, 1]");
  }
  DistanceMatrix out{lambda * sp.values + (1.0 - lambda) * res.values, Method::SPCT, {}};
  out.params.lambda = lambda;
  return out;
}

DistanceMatrix spct_combination(const CostedGraph& g, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "lambda must lie in [0, 1]");
  }
  return spct_combination(shortest_path(g), resistance(laplacian_pair(g)), lambda);
}

}  // namespace gdist
