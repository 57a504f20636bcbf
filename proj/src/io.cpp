#include "gdist/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gdist/distance.hpp"
#include "gdist/error.hpp"

namespace gdist {

std::string format_double(double x) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string format_matrix_csv(const Matrix& m) {
  std::string out;
  out.reserve(static_cast<size_t>(m.size()) * 24);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  write_text_file(path, format_matrix_csv(m));
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    size_t pos = 0;
    while (pos <= line.size()) {
      size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + next, v);
      if (ec != std::errc() || ptr != line.data() + next) {
        throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no) + ": bad number");
      }
      row.push_back(v);
      pos = next + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string graph_sha256(const CostedGraph& g) { return sha256_hex(format_graph(g)); }

void write_distance_metadata(const std::filesystem::path& matrix_path, const DistanceMatrix& d, const CostedGraph& g) {
  nlohmann::ordered_json meta;
  meta["method"] = std::string(to_string(d.method));
  meta["params"] = params_to_json(d.params);
  meta["n"] = g.size();
  meta["graph_sha256"] = graph_sha256(g);
  std::filesystem::path meta_path = matrix_path;
  meta_path += ".meta.json";
  write_text_file(meta_path, meta.dump(2) + "\n");
}

std::vector<int> read_labels_tsv(const std::filesystem::path& path, int n) {
  std::istringstream in(read_text_file(path));
  std::vector<int> labels(n, -1);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long node = -1, label = -1;
    if (!(fields >> node >> label) || node < 0 || node >= n) {
      throw Error(ErrorCode::ParseError, path.string() + " line " + std::to_string(line_no));
    }
    labels[node] = static_cast<int>(label);
  }
  return labels;
}

std::string format_labels_tsv(const std::vector<int>& labels) {
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    out += std::to_string(i) + '\t' + std::to_string(labels[i]) + '\n';
  }
  return out;
}

void write_labels_tsv(const std::filesystem::path& path, const std::vector<int>& labels) {
  write_text_file(path, format_labels_tsv(labels));
}

}  // namespace gdist
