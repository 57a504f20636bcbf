#include "gdist/family.hpp"

#include <cmath>

#include "gdist/classic.hpp"
#include "gdist/error.hpp"
#include "gdist/io.hpp"
#include "gdist/rsp.hpp"

namespace gdist {

std::string_view family_parameter(Method m) {
  switch (m) {
    case Method::RSP:
    case Method::FE:
      return "beta";
    case Method::LOGFOR:
      return "alpha";
    case Method::SPCT:
      return "lambda";
    case Method::PRES:
      return "p";
    default:
      return {};
  }
}

Params default_params(Method m) {
  Params p;
  switch (m) {
    case Method::RSP:
      p.beta = 0.02;
      break;
    case Method::FE:
      p.beta = 0.07;
      break;
    case Method::LOGFOR:
      p.alpha = 0.95;
      p.gamma = 1.0;
      break;
    case Method::SPCT:
      p.lambda = 1.0;
      break;
    case Method::PRES:
      p.p = 1.5;
      break;
    default:
      break;
  }
  return p;
}

void validate_params(Method m, const Params& p) {
  auto reject = [&](const char* name) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " does not apply to method " + std::string(to_string(m)));
  };
  const bool beta_ok = m == Method::RSP || m == Method::FE;
  if (p.beta && !beta_ok) reject("beta");
  if ((p.alpha || p.gamma) && m != Method::LOGFOR) reject(p.alpha ? "alpha" : "gamma");
  if (p.lambda && m != Method::SPCT) reject("lambda");
  if (p.p && m != Method::PRES) reject("p");
}

DistanceMatrix compute_distance(const CostedGraph& g, Method m, const Params& params, const PResistanceOptions& pres) {
  validate_params(m, params);
  Params p = default_params(m);
  if (params.beta) p.beta = params.beta;
  if (params.alpha) p.alpha = params.alpha;
  if (params.gamma) p.gamma = params.gamma;
  if (params.lambda) p.lambda = params.lambda;
  if (params.p) p.p = params.p;

  switch (m) {
    case Method::SP:
      return shortest_path(g);
    case Method::SPU:
      return shortest_path_unweighted(g);
    case Method::CT:
      return commute_time(laplacian_pair(g));
    case Method::CC:
      return commute_cost(laplacian_pair(g));
    case Method::RES:
      return resistance(laplacian_pair(g));
    case Method::SPCT:
      return spct_combination(g, *p.lambda);
    case Method::RSP:
      return rsp_dissimilarity(build_core(g, *p.beta));
    case Method::FE:
      return free_energy_distance(build_core(g, *p.beta));
    case Method::LOGFOR:
      return log_forest(g, *p.alpha, *p.gamma);
    case Method::PRES:
      return p_resistance(g, *p.p, pres);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

Params with_family_value(Method m, Params base, double value) {
  switch (m) {
    case Method::RSP:
    case Method::FE:
      base.beta = value;
      break;
    case Method::LOGFOR:
      base.alpha = value;
      break;
    case Method::SPCT:
      base.lambda = value;
      break;
    case Method::PRES:
      base.p = value;
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(m)) + " has no tunable parameter");
  }
  return base;
}

std::vector<double> ParamGrid::values() const {
  if (points < 1) throw Error(ErrorCode::ParamOutOfRange, "grid needs at least one point");
  if (log_spaced && !(lo > 0.0 && hi > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "log grid needs positive bounds");
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  // pin the endpoints exactly
  out.front() = lo;
  out.back() = hi;
  return out;
}

ParamGrid default_grid(Method m) {
  switch (m) {
    case Method::RSP:
    case Method::FE:
      return {1e-4, 20.0, 20, true};
    case Method::PRES:
      return {1.0, 2.0, 20, true};
    case Method::LOGFOR:
      return {1e-2, 500.0, 20, true};
    case Method::SPCT:
      return {0.0, 1.0, 20, false};
    default:
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(m)) + " has no parameter grid");
  }
}

std::vector<RatioRow> ratio_curve(const CostedGraph& g, Method m, const std::vector<double>& grid, const Params& base,
                                  const PResistanceOptions& pres) {
  if (g.size() < 3) throw Error(ErrorCode::InvalidArgument, "ratio curve needs nodes 0, 1 and 2");
  std::vector<RatioRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    const DistanceMatrix d = compute_distance(g, m, with_family_value(m, base, value), pres);
    rows.push_back({value, d(0, 1), d(1, 2), d(0, 1) / d(1, 2)});
  }
  return rows;
}

std::string format_ratio_curve_csv(std::string_view param_name, const std::vector<RatioRow>& rows) {
  std::string out = std::string(param_name) + ",d01,d12,ratio\n";
  for (const auto& r : rows) {
    out += format_double(r.param) + ',' + format_double(r.d01) + ',' + format_double(r.d12) + ',' +
           format_double(r.ratio) + '\n';
  }
  return out;
}

}  // namespace gdist
