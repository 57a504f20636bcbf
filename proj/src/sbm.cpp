#include "gdist/sbm.hpp"

#include <random>

#include "gdist/error.hpp"

namespace gdist {

PlantedGraph gen_sbm(const std::vector<int>& block_sizes, double p_in, double p_out, std::uint64_t seed) {
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "need 0 <= p_out <= p_in <= 1");
  }
  PlantedGraph out;
  for (size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] < 1) throw Error(ErrorCode::ParamOutOfRange, "block sizes must be positive");
    out.labels.insert(out.labels.end(), block_sizes[b], static_cast<int>(b));
  }
  const int n = static_cast<int>(out.labels.size());
  if (n < 2) throw Error(ErrorCode::ParamOutOfRange, "need at least two nodes");

  for (int attempt = 0; attempt < kSbmMaxAttempts; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const double p = out.labels[u] == out.labels[v] ? p_in : p_out;
        if (coin(rng) < p) edges.push_back({u, v, 1.0, 1.0});
      }
    CostedGraph g(n, std::move(edges));
    if (g.connected()) {
      out.graph = std::move(g);
      out.attempts = attempt + 1;
      return out;
    }
  }
  throw Error(ErrorCode::CouldNotConnect, "no connected draw in " + std::to_string(kSbmMaxAttempts) + " attempts");
}

}  // namespace gdist
