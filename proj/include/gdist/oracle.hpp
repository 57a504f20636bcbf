#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gdist/graph.hpp"
#include "gdist/rsp.hpp"

namespace gdist {

// Brute-force references for the closed-form RSP quantities. Everything here
// works directly from paths or walk lengths, never from (I - W)^-1, so it can
// certify rsp.hpp on small graphs.

struct HittingPath {
  std::vector<int> nodes;
  double ref_prob = 1.0;  // product of P^ref along the path
  double cost = 0.0;      // sum of edge costs
};

/// All hitting s -> t walks of length <= max_length (t appears only at the
/// end; other nodes may repeat). Walks that are still alive at max_length
/// form the frontier, which bounds the omitted mass.
class PathEnsemble {
 public:
  int source = 0;
  int target = 0;
  int max_length = 0;
  std::vector<HittingPath> paths;

  /// Upper bound on the partition-function mass of hitting walks longer than
  /// max_length: M_T * r / (1 - r), with M_T the Boltzmann mass of the
  /// frontier and r the largest non-target row sum of W.
  double tail_bound(double beta) const;

 private:
  friend PathEnsemble enumerate_hitting_paths(const CostedGraph&, int, int, int, std::size_t);
  struct Frontier {
    double ref_prob;
    double cost;
  };
  std::vector<Frontier> frontier_;
  // (p_ij, c_ij) of every row other than the target, for the row-sum bound.
  std::vector<std::vector<std::pair<double, double>>> rows_;
};

inline constexpr std::size_t kMaxEnsembleSize = 10'000'000;

PathEnsemble enumerate_hitting_paths(const CostedGraph& g, int s, int t, int max_length,
                                     std::size_t cap = kMaxEnsembleSize);

double oracle_partition_function(const PathEnsemble& ens, double beta);
double oracle_expected_cost(const PathEnsemble& ens, double beta);
double oracle_relative_entropy(const PathEnsemble& ens, double beta);

/// Same three quantities from a depth-first walk that never stores paths.
/// `cap` bounds the number of visited walks (complete plus frontier).
struct PathSums {
  double partition = 0.0;
  double expected_cost = 0.0;
  double relative_entropy = 0.0;
  double tail_bound = 0.0;
  std::size_t path_count = 0;
};
PathSums accumulate_hitting_paths(const CostedGraph& g, int s, int t, int max_length, double beta,
                                  std::size_t cap = kMaxEnsembleSize);

/// Length-indexed sums over every hitting walk into `target`, for all
/// sources at once: partition[s] = sum_tau [(W_t^h)^tau]_st and the matching
/// cost-weighted sums. Iterates until both tail bounds fall below `tail_tol`
/// or max_length is reached.
struct WalkSeries {
  int target = 0;
  double beta = 0.0;
  int length = 0;  // longest walk length included
  Vector partition;
  Vector cost_mass;        // sum of weight * cost
  Vector tail;             // per-source bound on omitted partition mass
  double cost_tail = 0.0;  // bound on omitted cost-weighted mass (all sources)

  Vector expected_cost() const;
  Vector relative_entropy() const;
};
WalkSeries hitting_walk_series(const CostedGraph& g, int target, double beta, int max_length = 100000,
                               double tail_tol = 1e-15);

/// Column t of the absorbing fundamental matrix Z_t^h, computed per
/// destination with the Sherman-Morrison rank-one update of Z.
Vector sherman_morrison_zh(const CostedGraph& g, double beta, int t);

struct OracleCheckRow {
  int s = 0;
  int t = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double tail_bound = 0.0;
  double abs_diff = 0.0;
};

enum class OracleMode { Series, Enumerate };

/// Compares Z^h from build_core against the oracle for every ordered pair.
std::vector<OracleCheckRow> oracle_check(const CostedGraph& g, double beta, int max_length,
                                         OracleMode mode = OracleMode::Series);
std::string format_oracle_check_csv(const std::vector<OracleCheckRow>& rows);

}  // namespace gdist
