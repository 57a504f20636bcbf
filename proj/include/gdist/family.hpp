#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gdist/alt.hpp"
#include "gdist/distance.hpp"
#include "gdist/graph.hpp"

namespace gdist {

/// Name of the single tunable parameter of a family ("beta", "alpha",
/// "lambda", "p"), or empty for parameter-free methods.
std::string_view family_parameter(Method m);

/// Tuned defaults: RSP beta 0.02, FE beta 0.07, logFor alpha 0.95 gamma 1,
/// SP-CT lambda 1, p-resistance p 1.5.
Params default_params(Method m);

/// Rejects parameters that do not belong to the method (beta only for
/// rsp/fe, and so on); throws InvalidArgument.
void validate_params(Method m, const Params& p);

/// Fills unset parameters from default_params and dispatches.
DistanceMatrix compute_distance(const CostedGraph& g, Method m, const Params& params = {},
                                const PResistanceOptions& pres = {});

/// Params with the family parameter set to `value`.
Params with_family_value(Method m, Params base, double value);

struct ParamGrid {
  double lo = 0.0;
  double hi = 1.0;
  int points = 20;
  bool log_spaced = true;

  std::vector<double> values() const;
};

/// beta in [1e-4, 20], p in [1, 2], alpha in [1e-2, 500] (log-spaced) and
/// lambda in [0, 1] (linear), 20 points each.
ParamGrid default_grid(Method m);

struct RatioRow {
  double param = 0.0;
  double d01 = 0.0;
  double d12 = 0.0;
  double ratio = 0.0;
};

std::vector<RatioRow> ratio_curve(const CostedGraph& g, Method m, const std::vector<double>& grid,
                                  const Params& base = {}, const PResistanceOptions& pres = {});
std::string format_ratio_curve_csv(std::string_view param_name, const std::vector<RatioRow>& rows);

}  // namespace gdist
