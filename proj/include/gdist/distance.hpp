#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "gdist/graph.hpp"

namespace gdist {

enum class Method { SP, SPU, CT, CC, RES, SPCT, RSP, FE, LOGFOR, PRES };

std::string_view to_string(Method m);
/// Accepts the lower-case CLI names (sp, spu, ct, cc, res, spct, rsp, fe, logfor, pres).
Method parse_method(std::string_view name);
/// RSP is only a semimetric; every other family satisfies the triangle inequality.
bool is_metric(Method m);

struct Params {
  std::optional<double> beta;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::optional<double> p;
};

nlohmann::ordered_json params_to_json(const Params& p);

struct DistanceMatrix {
  Matrix values;
  Method method = Method::SP;
  Params params;

  int size() const { return static_cast<int>(values.rows()); }
  double operator()(int s, int t) const { return values(s, t); }
};

/// Copies the strict upper triangle onto the lower one and zeroes the
/// diagonal, so the result is exactly symmetric.
void symmetrize_from_upper(Matrix& m);

/// max over (i,j,k) of d(i,j) - d(i,k) - d(k,j); <= 0 means metric.
double max_triangle_excess(const Matrix& d);

struct TripleViolation {
  int i = -1, j = -1, k = -1;
  double excess = 0.0;
};
TripleViolation worst_triangle_violation(const Matrix& d);

}  // namespace gdist
