#include <doctest.h>

#include <cmath>

#include "gdist/classic.hpp"
#include "gdist/error.hpp"
#include "gdist/rsp.hpp"
#include "helpers.hpp"

using namespace gdist;

namespace {

// Extended triangle, beta = 1, from the length-indexed hitting-walk series
// (independent of the LU route).
const double kZh[4][4] = {
    {1, 0.36787944117144233, 0.057286015364257592, 0.057286015364257592},
    {0.12980192252929226, 1, 0.15571953458948715, 0.15571953458948715},
    {0.029257310965636114, 0.22539967356056406, 1, 0.21258272826784996},
    {0.029257310965636114, 0.22539967356056406, 0.21258272826784996, 1},
};
const double kRsp01 = 1.0651092102721866, kRsp02 = 2.3280691322967013, kRsp12 = 1.2629599220245162,
             kRsp23 = 1.1752297072184028;
const double kFe01 = 1.520872831674045, kFe02 = 3.1956622670011807, kFe12 = 1.6747894353271362,
             kFe23 = 1.5484240568831804;
const double kJ10 = 0.91152724280371666, kJ21 = 0.26448045208418702, kJ02 = 0.55917857452105491;

}  // namespace

TEST_CASE("K2 closed forms") {
  for (double beta : {0.1, 1.0, 3.0}) {
    const RspCore core = build_core(fixtures::k2(), beta);
    CHECK(core.zh(0, 1) == doctest::Approx(std::exp(-beta)).epsilon(1e-14));
    CHECK(core.zh(0, 0) == 1.0);
    CHECK(core.zh(1, 1) == 1.0);
    CHECK(rsp_dissimilarity(core)(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(free_energy_distance(core)(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(relative_entropy_matrix(core)(0, 1)) < 1e-12);
  }
}

TEST_CASE("extended triangle, beta = 1: frozen oracle values") {
  const RspCore core = build_core(fixtures::extended_triangle(), 1.0);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) CHECK(core.zh(s, t) == doctest::Approx(kZh[s][t]).epsilon(1e-12));
  const DistanceMatrix rsp = rsp_dissimilarity(core);
  CHECK(rsp(0, 1) == doctest::Approx(kRsp01).epsilon(1e-10));
  CHECK(rsp(0, 2) == doctest::Approx(kRsp02).epsilon(1e-10));
  CHECK(rsp(1, 2) == doctest::Approx(kRsp12).epsilon(1e-10));
  CHECK(rsp(2, 3) == doctest::Approx(kRsp23).epsilon(1e-10));
  const DistanceMatrix fe = free_energy_distance(core);
  CHECK(fe(0, 1) == doctest::Approx(kFe01).epsilon(1e-12));
  CHECK(fe(0, 2) == doctest::Approx(kFe02).epsilon(1e-12));
  CHECK(fe(1, 2) == doctest::Approx(kFe12).epsilon(1e-12));
  CHECK(fe(2, 3) == doctest::Approx(kFe23).epsilon(1e-12));
  const Matrix j = relative_entropy_matrix(core);
  CHECK(j(1, 0) == doctest::Approx(kJ10).epsilon(1e-10));
  CHECK(j(2, 1) == doctest::Approx(kJ21).epsilon(1e-10));
  CHECK(j(0, 2) == doctest::Approx(kJ02).epsilon(1e-10));
  CHECK(std::abs(j(0, 1)) < 1e-12);  // node 0 has a single way out
}

TEST_CASE("structural invariants of the core") {
  for (const auto& [name, g] : test::small_random(10)) {
    for (double beta : {0.05, 1.0, 6.0}) {
      const RspCore core = build_core(g, beta);
      CHECK((core.w.rowwise().sum().array() < 1.0).all());
      CHECK(core.zh.diagonal() == Vector::Ones(g.size()));
      CHECK((core.zh.array() > 0.0).all());
      CHECK((core.zh.array() <= 1.0 + 1e-12).all());
      const Matrix cbar = directed_expected_costs(core);
      CHECK(cbar.diagonal().cwiseAbs().maxCoeff() < 1e-10);
      const Matrix j = relative_entropy_matrix(core);
      CHECK(j.minCoeff() > -1e-9);
      const DistanceMatrix fe = free_energy_distance(core);
      CHECK(fe.values == fe.values.transpose());
      CHECK(fe.values.diagonal() == Vector::Zero(g.size()));
    }
  }
}

TEST_CASE("FE is a metric on 50 random graphs") {
  for (int i = 0; i < 50; ++i) {
    const CostedGraph g = fixtures::random_connected(5 + i % 26, 900 + i, static_cast<fixtures::Weights>(i % 3), 0.2);
    for (double beta : {0.05, 0.5, 5.0}) {
      CHECK(max_triangle_excess(free_energy_distance(build_core(g, beta)).values) <= 1e-9);
    }
  }
}

TEST_CASE("FE is graph-geodetic across a cut vertex") {
  const CostedGraph g = fixtures::barbell();  // cut vertex 3
  for (double beta : {0.1, 1.0, 5.0}) {
    const DistanceMatrix fe = free_energy_distance(build_core(g, beta));
    for (int s : {0, 1, 2})
      for (int t : {4, 5, 6}) CHECK(std::abs(fe(s, t) - fe(s, 3) - fe(3, t)) <= 1e-8);
  }
}

TEST_CASE("RSP is only a semimetric") {
  double worst = 0.0;
  for (int i = 0; i < 20 && worst <= 1e-6; ++i) {
    const CostedGraph g = fixtures::random_connected(8, 40 + i, fixtures::Weights::Independent, 0.3);
    for (double beta : {0.01, 0.1, 1.0})
      worst = std::max(worst, max_triangle_excess(rsp_dissimilarity(build_core(g, beta)).values));
  }
  CHECK(worst > 1e-6);
}

TEST_CASE("large beta approaches SP at rate 1/beta") {
  for (const auto& [name, g] : test::canonical_fixtures()) {
    const Matrix sp = shortest_path(g).values;
    const double e_rsp = test::max_abs_diff(rsp_dissimilarity(build_core(g, 20.0)).values, sp);
    CHECK_MESSAGE(e_rsp <= 1e-3, name);
    const double e20 = test::max_abs_diff(free_energy_distance(build_core(g, 20.0)).values, sp);
    const double e200 = test::max_abs_diff(free_energy_distance(build_core(g, 200.0)).values, sp);
    // FE - SP is O(ln(degree) / beta): tenfold beta, tenfold smaller gap
    if (e20 > 1e-12) CHECK_MESSAGE(e200 / e20 == doctest::Approx(0.1).epsilon(0.05), name);
    CHECK(e200 <= 2e-2);
  }
}

TEST_CASE("small beta: both families become proportional to CT") {
  for (const auto& [name, g] : test::canonical_fixtures()) {
    const RspCore core = build_core(g, 1e-6);
    const Matrix ct = commute_time(laplacian_pair(g)).values;
    for (const Matrix& d : {rsp_dissimilarity(core).values, free_energy_distance(core).values}) {
      const auto [lo, hi] = test::ratio_range(d, ct);
      CHECK_MESSAGE((hi - lo) / lo <= 1e-4, name);
    }
    // unit costs: FE -> CT / 2
    const auto [lo, hi] = test::ratio_range(free_energy_distance(core).values, ct);
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("beta guards") {
  const CostedGraph g = fixtures::path3();
  CHECK_THROWS_AS(build_core(g, 0.0), Error);
  CHECK_THROWS_AS(build_core(g, -1.0), Error);
  try {
    build_core(g, 1e9);
    FAIL("expected BetaTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BetaTooLarge);
  }
  // 700 passes the guard; path3 then underflows Z(0, 2) instead
  try {
    build_core(g, 700.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnderflowZ);
  }
  CHECK_NOTHROW(build_core(fixtures::k2(), 700.0));
}
