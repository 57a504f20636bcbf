#include "gdist/fixtures.hpp"

#include <random>

namespace gdist::fixtures {

namespace {

void add_clique(std::vector<Edge>& edges, int first, int last) {
  for (int u = first; u <= last; ++u)
    for (int v = u + 1; v <= last; ++v) edges.push_back({u, v, 1.0, 1.0});
}

}  // namespace

CostedGraph k2() { return CostedGraph(2, {{0, 1, 1.0, 1.0}}); }

CostedGraph path3() { return CostedGraph(3, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}}); }

CostedGraph extended_triangle() {
  return CostedGraph(4, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {1, 3, 1.0, 1.0}, {2, 3, 1.0, 1.0}});
}

CostedGraph hub_4_3() {
  std::vector<Edge> edges;
  add_clique(edges, 0, 3);
  for (int u = 0; u < 8; ++u)
    if (u != 4) edges.push_back({std::min(u, 4), std::max(u, 4), 1.0, 1.0});
  add_clique(edges, 5, 7);
  return CostedGraph(8, std::move(edges));
}

CostedGraph barbell(int m) {
  std::vector<Edge> edges;
  add_clique(edges, 0, m - 1);
  add_clique(edges, m - 1, 2 * m - 2);
  return CostedGraph(2 * m - 1, std::move(edges));
}

CostedGraph two_cliques(int m) {
  std::vector<Edge> edges;
  add_clique(edges, 0, m - 1);
  add_clique(edges, m, 2 * m - 1);
  edges.push_back({m - 1, m, 1.0, 1.0});
  return CostedGraph(2 * m, std::move(edges));
}

CostedGraph random_connected(int n, std::uint64_t seed, Weights weights, double extra_edge_prob) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    used[u][v] = 1;
    pairs.emplace_back(u, v);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!used[u][v] && coin(rng) < extra_edge_prob) pairs.emplace_back(u, v);

  std::vector<Edge> edges;
  for (auto [u, v] : pairs) {
    Edge e{u, v, 1.0, 1.0};
    if (weights != Weights::Unit) {
      e.affinity = weight(rng);
      e.cost = weights == Weights::Independent ? weight(rng) : 1.0 / e.affinity;
    }
    edges.push_back(e);
  }
  return CostedGraph(n, std::move(edges));
}

std::optional<CostedGraph> by_name(std::string_view name) {
  if (name == "k2") return k2();
  if (name == "path3") return path3();
  if (name == "ext-triangle") return extended_triangle();
  if (name == "hub-4-3") return hub_4_3();
  if (name == "barbell") return barbell();
  if (name == "two-cliques") return two_cliques();
  return std::nullopt;
}

std::vector<std::string> names() { return {"k2", "path3", "ext-triangle", "hub-4-3", "barbell", "two-cliques"}; }

}  // namespace gdist::fixtures
