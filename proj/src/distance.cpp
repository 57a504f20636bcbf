#include "gdist/distance.hpp"

#include <limits>

#include "gdist/error.hpp"

namespace gdist {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SP:
      return "sp";
    case Method::SPU:
      return "spu";
    case Method::CT:
      return "ct";
    case Method::CC:
      return "cc";
    case Method::RES:
      return "res";
    case Method::SPCT:
      return "spct";
    case Method::RSP:
      return "rsp";
    case Method::FE:
      return "fe";
    case Method::LOGFOR:
      return "logfor";
    case Method::PRES:
      return "pres";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::SP, Method::SPU, Method::CT, Method::CC, Method::RES, Method::SPCT, Method::RSP, Method::FE,
                   Method::LOGFOR, Method::PRES}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

bool is_metric(Method m) { return m != Method::RSP; }

nlohmann::ordered_json params_to_json(const Params& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (p.beta) j["beta"] = *p.beta;
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.lambda) j["lambda"] = *p.lambda;
  if (p.p) j["p"] = *p.p;
  return j;
}

void symmetrize_from_upper(Matrix& m) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) m(j, i) = m(i, j);
  }
}

TripleViolation worst_triangle_violation(const Matrix& d) {
  TripleViolation worst;
  worst.excess = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(d.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double excess = d(i, j) - d(i, k) - d(k, j);
        if (excess > worst.excess) worst = {i, j, k, excess};
      }
    }
  return worst;
}

double max_triangle_excess(const Matrix& d) { return d.rows() < 3 ? 0.0 : worst_triangle_violation(d).excess; }

}  // namespace gdist
