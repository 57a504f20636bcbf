#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gdist {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One undirected edge. Affinity drives the natural random walk, cost is the
/// traversal expense; the two are independent unless the input omits costs.
struct Edge {
  int u = 0;
  int v = 0;
  double affinity = 1.0;
  double cost = 1.0;
};

struct Neighbor {
  int node;
  int edge;  // index into CostedGraph::edges()
};

/// Undirected graph with per-edge affinity and cost. Immutable after
/// construction; the constructor validates every edge and records whether the
/// graph is connected.
class CostedGraph {
 public:
  CostedGraph() = default;
  CostedGraph(int n, std::vector<Edge> edges);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Neighbor>& neighbors(int node) const { return adjacency_[node]; }
  bool connected() const noexcept { return connected_; }

  /// Dense symmetric affinity matrix A (zero off-edges).
  Matrix affinity_matrix() const;
  /// Dense symmetric cost matrix C, zero off-edges. Non-edges carry no cost
  /// placeholder; every consumer masks them through A or P^ref.
  Matrix cost_matrix() const;
  Vector degrees() const;

  friend bool operator==(const CostedGraph& a, const CostedGraph& b);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  bool connected_ = false;
};

bool operator==(const CostedGraph& a, const CostedGraph& b);

/// Row-stochastic matrix of the natural random walk, P^ref = D^-1 A.
struct TransitionMatrix {
  Matrix p;
};

struct LaplacianPair {
  Matrix laplacian;
  Matrix pseudoinverse;
  double volume = 0.0;       // sum_ij a_ij, both directions
  double cost_volume = 0.0;  // sum_ij a_ij c_ij
};

CostedGraph parse_graph(std::istream& in);
CostedGraph parse_graph(const std::string& text);
CostedGraph load_graph(const std::filesystem::path& path);

/// Canonical TSV text: one `u<TAB>v<TAB>affinity<TAB>cost` line per edge in
/// stored order, doubles with 17 significant digits.
std::string format_graph(const CostedGraph& g);
void save_graph(const CostedGraph& g, const std::filesystem::path& path);

TransitionMatrix transition_matrix(const CostedGraph& g);
LaplacianPair laplacian_pair(const CostedGraph& g);

/// Moore-Penrose pseudoinverse of a symmetric matrix via eigendecomposition.
/// Eigenvalues with |lambda| <= rel_tol * max|lambda| are treated as zero;
/// `null_dim` receives their count when non-null.
Matrix symmetric_pseudoinverse(const Matrix& m, double rel_tol, int* null_dim = nullptr);

}  // namespace gdist
