#include "gdist/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "gdist/error.hpp"
#include "gdist/io.hpp"

namespace gdist {

namespace {

bool bfs_connected(int n, const std::vector<std::vector<Neighbor>>& adj) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (const auto& nb : adj[u]) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        frontier.push(nb.node);
      }
    }
  }
  return reached == n;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos <= line.size()) {
    size_t next = line.find('\t', pos);
    if (next == std::string_view::npos) next = line.size();
    out.push_back(trim(line.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

}  // namespace

CostedGraph::CostedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "graph needs at least one node");
  adjacency_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge " + std::to_string(e) + " references a node outside 0.." + std::to_string(n - 1));
    }
    if (edge.u == edge.v) {
      throw Error(ErrorCode::SelfLoop, "self-loop on node " + std::to_string(edge.u));
    }
    if (!(edge.affinity > 0.0) || !std::isfinite(edge.affinity)) {
      throw Error(ErrorCode::NonPositiveWeight, "affinity of edge (" + std::to_string(edge.u) + "," +
                                                    std::to_string(edge.v) + ") must be positive and finite");
    }
    if (!(edge.cost > 0.0) || !std::isfinite(edge.cost)) {
      throw Error(ErrorCode::NonPositiveWeight, "cost of edge (" + std::to_string(edge.u) + "," +
                                                    std::to_string(edge.v) + ") must be positive and finite");
    }
    auto key = std::minmax(edge.u, edge.v);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") listed twice");
    }
    adjacency_[edge.u].push_back({edge.v, static_cast<int>(e)});
    adjacency_[edge.v].push_back({edge.u, static_cast<int>(e)});
  }
  connected_ = bfs_connected(n_, adjacency_);
}

Matrix CostedGraph::affinity_matrix() const {
  Matrix a = Matrix::Zero(n_, n_);
  for (const auto& e : edges_) a(e.u, e.v) = a(e.v, e.u) = e.affinity;
  return a;
}

Matrix CostedGraph::cost_matrix() const {
  Matrix c = Matrix::Zero(n_, n_);
  for (const auto& e : edges_) c(e.u, e.v) = c(e.v, e.u) = e.cost;
  return c;
}

Vector CostedGraph::degrees() const {
  Vector d = Vector::Zero(n_);
  for (const auto& e : edges_) {
    d(e.u) += e.affinity;
    d(e.v) += e.affinity;
  }
  return d;
}

bool operator==(const CostedGraph& a, const CostedGraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.affinity != y.affinity || x.cost != y.cost) return false;
  }
  return true;
}

CostedGraph parse_graph(std::istream& in) {
  std::vector<Edge> edges;
  int max_id = -1;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_fields(line);
    if (fields.size() < 3 || fields.size() > 4) fail("expected 3 or 4 tab-separated fields");
    Edge edge;
    auto parse_int = [&](std::string_view f, int& out) {
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
      if (ec != std::errc() || ptr != f.data() + f.size() || out < 0) fail("bad node id '" + std::string(f) + "'");
    };
    auto parse_real = [&](std::string_view f, double& out) {
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
      if (ec != std::errc() || ptr != f.data() + f.size()) fail("bad number '" + std::string(f) + "'");
    };
    parse_int(fields[0], edge.u);
    parse_int(fields[1], edge.v);
    parse_real(fields[2], edge.affinity);
    if (!(edge.affinity > 0.0) || !std::isfinite(edge.affinity)) {
      throw Error(ErrorCode::NonPositiveWeight, "line " + std::to_string(line_no) + ": affinity must be positive");
    }
    if (fields.size() == 4) {
      parse_real(fields[3], edge.cost);
    } else {
      edge.cost = 1.0 / edge.affinity;
    }
    max_id = std::max({max_id, edge.u, edge.v});
    edges.push_back(edge);
  }
  if (max_id < 0) throw Error(ErrorCode::ParseError, "no edges found");
  return CostedGraph(max_id + 1, std::move(edges));
}

CostedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

CostedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_graph(in);
}

std::string format_graph(const CostedGraph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u);
    out += '\t';
    out += std::to_string(e.v);
    out += '\t';
    out += format_double(e.affinity);
    out += '\t';
    out += format_double(e.cost);
    out += '\n';
  }
  return out;
}

void save_graph(const CostedGraph& g, const std::filesystem::path& path) { write_text_file(path, format_graph(g)); }

TransitionMatrix transition_matrix(const CostedGraph& g) {
  Matrix a = g.affinity_matrix();
  Vector d = a.rowwise().sum();
  for (int i = 0; i < g.size(); ++i) {
    if (!(d(i) > 0.0)) throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(i) + " has no edges");
    a.row(i) /= d(i);
  }
  return {std::move(a)};
}

Matrix symmetric_pseudoinverse(const Matrix& m, double rel_tol, int* null_dim) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSystem, "eigendecomposition failed");
  }
  const Vector& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  const double cut = rel_tol * scale;
  Vector inv = Vector::Zero(lambda.size());
  int zeros = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= cut) {
      ++zeros;
    } else {
      inv(i) = 1.0 / lambda(i);
    }
  }
  if (null_dim) *null_dim = zeros;
  const Matrix& v = eig.eigenvectors();
  Matrix result = v * inv.asDiagonal() * v.transpose();
  return 0.5 * (result + result.transpose());
}

LaplacianPair laplacian_pair(const CostedGraph& g) {
  if (!g.connected()) throw Error(ErrorCode::Disconnected, "Laplacian pseudoinverse needs a connected graph");
  LaplacianPair lp;
  const Matrix a = g.affinity_matrix();
  lp.laplacian = Matrix(a.rowwise().sum().asDiagonal()) - a;
  int null_dim = 0;
  lp.pseudoinverse = symmetric_pseudoinverse(lp.laplacian, 1e-10, &null_dim);
  if (null_dim != 1) {
    throw Error(ErrorCode::Disconnected,
                "Laplacian has " + std::to_string(null_dim) + " zero eigenvalues (expected 1)");
  }
  for (const auto& e : g.edges()) {
    lp.volume += 2.0 * e.affinity;
    lp.cost_volume += 2.0 * e.affinity * e.cost;
  }
  return lp;
}

}  // namespace gdist
