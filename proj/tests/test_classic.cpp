#include <doctest.h>

#include "gdist/classic.hpp"
#include "gdist/error.hpp"
#include "gdist/parallel.hpp"
#include "helpers.hpp"

using namespace gdist;

TEST_CASE("SP on the extended triangle") {
  const DistanceMatrix d = shortest_path(fixtures::extended_triangle());
  CHECK(d(0, 1) == 1.0);
  CHECK(d(1, 2) == 1.0);
  CHECK(d(0, 3) == 2.0);
  CHECK(d.values == d.values.transpose());
}

TEST_CASE("SP respects costs, not affinities") {
  const CostedGraph g(3, {{0, 1, 5.0, 1.0}, {1, 2, 5.0, 1.0}, {0, 2, 0.1, 3.0}});
  CHECK(shortest_path(g)(0, 2) == 2.0);
  CHECK(shortest_path_unweighted(g)(0, 2) == 1.0);
}

TEST_CASE("SP is exactly metric and parallel equals serial") {
  for (const auto& [name, g] : test::small_random(10)) {
    const DistanceMatrix par = shortest_path(g);
    CHECK(max_triangle_excess(par.values) <= 1e-12);
    CHECK(par.values == serial::shortest_path(g).values);
  }
  const CostedGraph big = fixtures::random_connected(120, 3, fixtures::Weights::Independent, 0.05);
  set_num_threads(4);
  const Matrix four = shortest_path(big).values;
  set_num_threads(1);
  const Matrix one = shortest_path(big).values;
  set_num_threads(0);
  CHECK(four == one);
  CHECK(four == serial::shortest_path(big).values);
}

TEST_CASE("CT / volume equals the grounded-solve resistance") {
  for (const auto& [name, g] : test::small_random(10)) {
    const LaplacianPair lp = laplacian_pair(g);
    const DistanceMatrix ct = commute_time(lp);
    const DistanceMatrix res = resistance(lp);
    for (int s = 0; s < g.size(); ++s)
      for (int t = 0; t < g.size(); ++t) {
        if (s == t) continue;
        const double oracle = test::grounded_resistance(g, s, t);
        CHECK(res(s, t) == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(ct(s, t) / lp.volume == doctest::Approx(oracle).epsilon(1e-10));
      }
  }
}

TEST_CASE("extended triangle resistances: pendant 1, triangle 2/3") {
  const DistanceMatrix res = resistance(laplacian_pair(fixtures::extended_triangle()));
  CHECK(res(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res(1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("commute cost / commute time = cost volume / volume on 50 random graphs") {
  for (int i = 0; i < 50; ++i) {
    const CostedGraph g = fixtures::random_connected(4 + i % 12, 500 + i, fixtures::Weights::Independent);
    const LaplacianPair lp = laplacian_pair(g);
    const auto [lo, hi] = test::ratio_range(commute_cost(lp).values, commute_time(lp).values);
    const double expected = lp.cost_volume / lp.volume;
    CHECK(std::abs(lo / expected - 1.0) <= 1e-10);
    CHECK(std::abs(hi / expected - 1.0) <= 1e-10);
  }
}

TEST_CASE("metric families satisfy the triangle inequality on fixtures") {
  for (const auto& [name, g] : test::canonical_fixtures()) {
    const LaplacianPair lp = laplacian_pair(g);
    CHECK(max_triangle_excess(commute_time(lp).values) <= 1e-8);
    CHECK(max_triangle_excess(resistance(lp).values) <= 1e-8);
    CHECK(max_triangle_excess(spct_combination(g, 0.4).values) <= 1e-8);
  }
}

TEST_CASE("SP-CT endpoints and range check") {
  const CostedGraph g = fixtures::extended_triangle();
  const DistanceMatrix sp = shortest_path(g);
  const DistanceMatrix res = resistance(laplacian_pair(g));
  CHECK(spct_combination(g, 1.0).values == sp.values);
  CHECK(test::max_abs_diff(spct_combination(g, 0.0).values, res.values) == 0.0);
  CHECK_THROWS_AS(spct_combination(g, 1.5), Error);
  CHECK_THROWS_AS(spct_combination(g, -0.1), Error);
}

TEST_CASE("disconnected input is rejected") {
  const CostedGraph g(3, {{0, 1, 1, 1}});
  CHECK_THROWS_AS(shortest_path(g), Error);
  CHECK_THROWS_AS(shortest_path_unweighted(g), Error);
}
