#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "gdist/classic.hpp"
#include "gdist/classify.hpp"
#include "gdist/error.hpp"
#include "gdist/family.hpp"
#include "gdist/kernel.hpp"
#include "gdist/parallel.hpp"
#include "gdist/rsp.hpp"
#include "gdist/sbm.hpp"
#include "gdist/stats.hpp"
#include "helpers.hpp"

using namespace gdist;

namespace {

DistanceMatrix from_values(Matrix m) { return {std::move(m), Method::SP, {}}; }

}  // namespace

TEST_CASE("center_kernel") {
  Matrix d(2, 2);
  d << 0, 2, 2, 0;
  const KernelMatrix k = center_kernel(from_values(d));
  CHECK(k.values(0, 0) == doctest::Approx(0.5));
  CHECK(k.values(0, 1) == doctest::Approx(-0.5));
  CHECK(center_kernel(from_values(Matrix::Zero(3, 3))).values == Matrix::Zero(3, 3));
  for (const auto& [name, g] : test::small_random(5)) {
    const KernelMatrix kk = center_kernel(free_energy_distance(build_core(g, 0.5)));
    CHECK(kk.values.rowwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    CHECK(kk.values == kk.values.transpose());
  }
}

TEST_CASE("sigmoid CT kernel") {
  const KernelMatrix k = sigmoid_ct_kernel(laplacian_pair(fixtures::k2()), 1.0);
  CHECK(k.values(0, 0) == doctest::Approx(0.7310585786300049).epsilon(1e-14));
  CHECK(k.values(0, 1) == doctest::Approx(0.2689414213699951).epsilon(1e-14));
  const KernelMatrix flat = sigmoid_ct_kernel(laplacian_pair(fixtures::hub_4_3()), 1e-12);
  CHECK((flat.values.array() - 0.5).abs().maxCoeff() < 1e-12);
  const KernelMatrix k26 = sigmoid_ct_kernel(laplacian_pair(fixtures::hub_4_3()), 26.0);
  CHECK(k26.values.minCoeff() > 0.0);
  CHECK(k26.values.maxCoeff() <= 1.0);
  CHECK_THROWS_AS(sigmoid_ct_kernel(laplacian_pair(fixtures::k2()), 0.0), Error);
}

TEST_CASE("psd_clip leaves no negative eigenvalue") {
  const KernelMatrix k = center_kernel(rsp_dissimilarity(build_core(fixtures::hub_4_3(), 0.5)));
  const KernelMatrix c = psd_clip(k);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(c.values);
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("kernel k-means: k = n gives singletons with zero inertia") {
  const KernelMatrix k = center_kernel(shortest_path(fixtures::hub_4_3()));
  const Partition p = kernel_kmeans(k, 8, 3, 1);
  CHECK(std::set<int>(p.assignment.begin(), p.assignment.end()).size() == 8);
  CHECK(p.inertia == doctest::Approx(0.0));
  CHECK_THROWS_AS(kernel_kmeans(k, 9, 1, 1), Error);
}

TEST_CASE("kernel k-means: duplicated rows stay together") {
  // node 6 duplicates node 0 (same distances to everything, zero to each other)
  const Matrix base = free_energy_distance(build_core(fixtures::random_connected(6, 3), 0.5)).values;
  Matrix d(7, 7);
  d.topLeftCorner(6, 6) = base;
  d.row(6).head(6) = base.row(0);
  d.col(6).head(6) = base.col(0);
  d(6, 6) = 0.0;
  const KernelMatrix k = center_kernel(from_values(d));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Partition p = kernel_kmeans(k, 3, 5, seed);
    CHECK(p.assignment[0] == p.assignment[6]);
  }
}

TEST_CASE("kernel k-means recovers two cliques joined by an edge") {
  const CostedGraph g = fixtures::two_cliques(10);
  std::vector<int> planted(20, 0);
  std::fill(planted.begin() + 10, planted.end(), 1);
  const Partition p = kernel_kmeans(center_kernel(free_energy_distance(build_core(g, 1.0))), 2, 10, 5);
  CHECK(nmi(p.assignment, planted) == doctest::Approx(1.0));
}

TEST_CASE("kernel k-means: inertia never increases within a run") {
  for (const auto& [name, g] : test::small_random(6)) {
    for (const Matrix& d : {rsp_dissimilarity(build_core(g, 0.3)).values, shortest_path(g).values}) {
      const KernelMatrix k = center_kernel(from_values(d));
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const KMeansRun run = kernel_kmeans_run(k, 2, seed);
        for (size_t i = 1; i < run.inertia_trace.size(); ++i) CHECK(run.inertia_trace[i] <= run.inertia_trace[i - 1]);
        CHECK(run.partition.inertia >= 0.0);
        CHECK(run.iterations <= kKMeansMaxIterations);
      }
    }
  }
}

TEST_CASE("kernel k-means: parallel restarts equal serial") {
  const PlantedGraph pg = gen_sbm({15, 15, 15}, 0.4, 0.05, 9);
  const KernelMatrix k = center_kernel(free_energy_distance(build_core(pg.graph, 0.1)));
  set_num_threads(4);
  const Partition par = kernel_kmeans(k, 3, 12, 77);
  set_num_threads(0);
  const Partition ser = serial::kernel_kmeans(k, 3, 12, 77);
  CHECK(par.assignment == ser.assignment);
  CHECK(par.inertia == ser.inertia);
}

TEST_CASE("kernel_inertia of a partition into singletons and one block") {
  Matrix d(3, 3);
  d << 0, 1, 4, 1, 0, 1, 4, 1, 0;
  const KernelMatrix k = center_kernel(from_values(d));
  // one cluster: (1 / (2n)) sum_ij d_ij
  CHECK(kernel_inertia(k.values, {0, 0, 0}, 1) == doctest::Approx(12.0 / 6.0));
  CHECK(kernel_inertia(k.values, {0, 0, 1}, 2) == doctest::Approx(2.0 / 4.0));
}

TEST_CASE("CMDS recovers a Euclidean point set") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  Matrix x(9, 2);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  Matrix d(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) d(i, j) = (x.row(i) - x.row(j)).squaredNorm();
  const CmdsResult r = cmds_coordinates(from_values(d), 2);
  CHECK(r.zero_filled == 0);
  CHECK(test::procrustes_residual(r.coords, x) < 1e-6);
}

TEST_CASE("CMDS on two points places them at +/- sqrt(K00)") {
  Matrix d(2, 2);
  d << 0, 2, 2, 0;
  const CmdsResult r = cmds_coordinates(from_values(d), 1);
  const double k00 = center_kernel(from_values(d)).values(0, 0);
  CHECK(std::abs(r.coords(0, 0)) == doctest::Approx(std::sqrt(k00)));
  CHECK(r.coords(0, 0) == doctest::Approx(-r.coords(1, 0)));
}

TEST_CASE("CMDS of CT on the extended triangle") {
  const DistanceMatrix ct = commute_time(laplacian_pair(fixtures::extended_triangle()));
  const CmdsResult full = cmds_coordinates(ct, 3);
  const CmdsResult two = cmds_coordinates(ct, 2);
  CHECK(full.zero_filled == 0);
  CHECK(test::max_abs_diff(two.coords, full.coords.leftCols(2)) < 1e-10);
  // CT is Euclidean-squared, so the full embedding reproduces it
  Matrix d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = (full.coords.row(i) - full.coords.row(j)).squaredNorm();
  CHECK(test::max_abs_diff(d, ct.values) < 1e-10);
  CHECK(full.eigenvalues(2) > 0.0);
  CHECK(full.eigenvalues(1) >= full.eigenvalues(2));
  CHECK_THROWS_AS(cmds_coordinates(ct, 4), Error);
}

TEST_CASE("propagate_1nn examples") {
  const CostedGraph g = fixtures::two_cliques(6);
  const DistanceMatrix fe = free_energy_distance(build_core(g, 1.0));
  std::vector<int> planted(12, 0);
  std::fill(planted.begin() + 6, planted.end(), 1);

  const LabelSet all = LabelSet::all_known(planted);
  const LabelSet same = propagate_1nn(fe, all);
  CHECK(same.labels == all.labels);

  std::vector<int> seeds(12, -1);
  seeds[0] = 0;
  seeds[11] = 1;
  CHECK(propagate_1nn(fe, LabelSet::from_partial(seeds)).labels == planted);

  std::vector<int> one(12, -1);
  one[4] = 7;
  const LabelSet r = propagate_1nn(fe, LabelSet::from_partial(one));
  CHECK(std::all_of(r.labels.begin(), r.labels.end(), [](int l) { return l == 7; }));
}

TEST_CASE("propagate_1nn breaks ties by u, then v") {
  // all off-diagonal distances equal: node 1 is labelled first, from node 0
  Matrix d = Matrix::Ones(4, 4) - Matrix::Identity(4, 4);
  std::vector<int> seeds{5, -1, -1, 9};
  const LabelSet r = propagate_1nn(from_values(d), LabelSet::from_partial(seeds));
  CHECK(r.labels == std::vector<int>{5, 5, 5, 9});
}

TEST_CASE("nmi examples") {
  const std::vector<int> x{0, 0, 1, 1, 2, 2};
  CHECK(nmi(x, x) == doctest::Approx(1.0));
  CHECK(nmi(x, {5, 5, 3, 3, 9, 9}) == doctest::Approx(1.0));
  CHECK(nmi({0, 0, 0, 0}, {0, 1, 0, 1}) == 0.0);
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
  const std::vector<int> a{0, 0, 1, 1, 1, 2, 2};
  const std::vector<int> b{1, 0, 0, 1, 1, 1, 2};
  CHECK(nmi(a, b) == nmi(b, a));
  CHECK(nmi(a, b) >= 0.0);
  CHECK(nmi(a, b) <= 1.0 + 1e-12);
}

TEST_CASE("Welch one-sided p-values") {
  const std::vector<double> a{0.81, 0.84, 0.79, 0.88, 0.85};
  const std::vector<double> b{0.78, 0.80, 0.77, 0.83};
  CHECK(welch_one_sided_p(a, b) == doctest::Approx(0.04956299912027751).epsilon(1e-10));
  CHECK(welch_one_sided_p(b, a) == doctest::Approx(0.9504370008797225).epsilon(1e-10));
  CHECK(welch_one_sided_p({1.0, 2.0, 3.0}, {2.0, 2.0, 2.0}) == doctest::Approx(0.5));
  CHECK(welch_one_sided_p({1.0, 1.0}, {0.5, 0.5}) == 0.0);
  CHECK(welch_one_sided_p({0.5, 0.5}, {1.0, 1.0}) == 1.0);
  CHECK(welch_one_sided_p({1.0, 1.0}, {1.0, 1.0}) == 1.0);
}

TEST_CASE("Copeland ranking") {
  std::vector<ScoreTable> tables;
  for (int d = 0; d < 5; ++d) {
    ScoreTable t{"d" + std::to_string(d), {"A", "B", "C"}, {}};
    if (d < 3) {
      t.samples = {{0.9, 0.91, 0.9}, {0.1, 0.11, 0.1}, {0.5, 0.5, 0.5}};
    } else {
      t.samples = {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
    }
    tables.push_back(t);
  }
  // Only compare A and B: drop C
  std::vector<ScoreTable> ab = tables;
  for (auto& t : ab) {
    t.methods.pop_back();
    t.samples.pop_back();
  }
  auto r = copeland_rank(ab);
  REQUIRE(r.size() == 2);
  CHECK(r[0].method == "A");
  CHECK(r[0].score == 3);
  CHECK(r[1].score == -3);

  r = copeland_rank(tables);
  CHECK(r[0].method == "A");
  CHECK(r[0].score == 6);
  CHECK(r[1].method == "C");
  CHECK(r[1].score == 0);
  CHECK(r[2].score == -6);

  for (auto& t : tables)
    for (auto& s : t.samples) s = {0.3, 0.4};
  r = copeland_rank(tables);
  for (const auto& e : r) {
    CHECK(e.score == 0);
    CHECK(e.rank == 1);
  }
}

TEST_CASE("Copeland competition ranks share the better rank") {
  ScoreTable t{"x", {"A", "B", "C", "D"}, {{1.0, 1.0}, {0.5, 0.5}, {0.5, 0.5}, {0.0, 0.0}}};
  const auto r = copeland_rank({t});
  CHECK(r[0].rank == 1);
  CHECK(r[1].rank == 2);
  CHECK(r[2].rank == 2);
  CHECK(r[3].rank == 4);
  CHECK(format_copeland_csv(r).rfind("method,rank,score\nA,1,3\n", 0) == 0);
}

TEST_CASE("gen_sbm examples") {
  try {
    gen_sbm({5, 5}, 1.0, 0.0, 1);
    FAIL("expected CouldNotConnect");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CouldNotConnect);
  }
  const PlantedGraph complete = gen_sbm({3, 4}, 1.0, 1.0, 2);
  CHECK(complete.graph.edges().size() == 21);

  const PlantedGraph pg = gen_sbm({30, 30, 30}, 0.3, 0.01, 42);
  int intra = 0;
  for (const auto& e : pg.graph.edges()) intra += pg.labels[e.u] == pg.labels[e.v];
  const double mean = 3 * 435 * 0.3, sigma = std::sqrt(3 * 435 * 0.3 * 0.7);
  CHECK(std::abs(intra - mean) <= 4 * sigma);
  CHECK(pg.graph.connected());
  CHECK(format_graph(gen_sbm({30, 30, 30}, 0.3, 0.01, 42).graph) == format_graph(pg.graph));
  CHECK_THROWS_AS(gen_sbm({5, 5}, 0.1, 0.2, 1), Error);
}

TEST_CASE("stratified folds and label subsampling") {
  std::vector<int> labels;
  for (int c = 0; c < 3; ++c) labels.insert(labels.end(), 10 + c, c);
  const LabelSet all = LabelSet::all_known(labels);
  const std::vector<int> folds = stratified_folds(all, 4, 3);
  for (int c = 0; c < 3; ++c) {
    std::vector<int> per(4, 0);
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) ++per[folds[i]];
    CHECK(*std::max_element(per.begin(), per.end()) - *std::min_element(per.begin(), per.end()) <= 1);
  }
  const LabelSet sub = subsample_labels(all, 0.1, 8);
  for (int c = 0; c < 3; ++c) {
    int known = 0;
    for (size_t i = 0; i < labels.size(); ++i) known += sub.known[i] && labels[i] == c;
    CHECK(known >= 1);
  }
}

TEST_CASE("tune_by_cv examples") {
  const PlantedGraph pg = gen_sbm({10, 10}, 0.5, 0.05, 3);
  const LabelSet labels = LabelSet::all_known(pg.labels);
  Matrix perfect(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) perfect(i, j) = i == j ? 0.0 : (pg.labels[i] == pg.labels[j] ? 1.0 : 2.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  Matrix noise = Matrix::Zero(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) noise(i, j) = noise(j, i) = u(rng);
  const DistanceFamily family = [&](double v) { return from_values(v == 3.0 ? perfect : noise); };

  CHECK(tune_by_cv(family, labels, 5, {7.0}, 1).best == 7.0);
  const CvResult r = tune_by_cv(family, labels, 5, {1.0, 3.0, 5.0}, 1);
  CHECK(r.best == 3.0);
  CHECK(r.mean_accuracy[1] == 1.0);
  const DistanceFamily flat = [&](double) { return from_values(perfect); };
  CHECK(tune_by_cv(flat, labels, 5, {4.0, 2.0, 9.0}, 1).best == 2.0);
  CHECK(serial::tune_by_cv(family, labels, 5, {1.0, 3.0, 5.0}, 1).mean_accuracy == r.mean_accuracy);
}

TEST_CASE("evaluate_classification produces one sample per repeat and fold") {
  const PlantedGraph pg = gen_sbm({8, 8}, 0.6, 0.05, 11);
  EvalConfig cfg;
  cfg.rates = {0.5};
  cfg.repeats = 2;
  cfg.outer_folds = 3;
  cfg.inner_folds = 2;
  cfg.seed = 4;
  const std::vector<EvalMethod> methods{{Method::FE, {0.1, 1.0}}, {Method::SP, {}}};
  const auto results = evaluate_classification({{"sbm", pg.graph, pg.labels}}, methods, cfg);
  REQUIRE(results.size() == 1);
  REQUIRE(results[0].tables.size() == 1);
  CHECK(results[0].tables[0].samples[0].size() == 6);
  CHECK(results[0].ranking.size() == 2);
  CHECK(format_rankings_csv(results) ==
        format_rankings_csv(evaluate_classification({{"sbm", pg.graph, pg.labels}}, methods, cfg)));
}
