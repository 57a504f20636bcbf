#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gdist/alt.hpp"
#include "gdist/distance.hpp"
#include "gdist/graph.hpp"
#include "gdist/stats.hpp"

namespace gdist {

/// labels[i] is meaningful only where known[i] != 0.
struct LabelSet {
  std::vector<int> labels;
  std::vector<char> known;

  static LabelSet all_known(std::vector<int> labels);
  /// Nodes with label < 0 are unknown.
  static LabelSet from_partial(std::vector<int> labels);
  int size() const { return static_cast<int>(labels.size()); }
  int known_count() const;
};

/// Repeatedly labels the unlabelled node closest to any labelled one.
/// Ties go to the smaller distance, then smaller u, then smaller v.
LabelSet propagate_1nn(const DistanceMatrix& d, const LabelSet& seeds);

/// Fold id per known node (round-robin inside each class after a seeded
/// shuffle); unknown nodes get -1. `folds` is capped at the known count.
std::vector<int> stratified_folds(const LabelSet& labels, int folds, std::uint64_t seed);

/// Keeps max(1, round(rate * class size)) random labels of every class.
LabelSet subsample_labels(const LabelSet& labels, double rate, std::uint64_t seed);

/// Mean accuracy of propagate_1nn over stratified folds of the known labels.
double cv_accuracy(const DistanceMatrix& d, const LabelSet& labels, int folds, std::uint64_t seed);

using DistanceFamily = std::function<DistanceMatrix(double)>;

struct CvResult {
  double best = 0.0;
  std::vector<double> mean_accuracy;  // parallel to the grid
};

/// Grid value with the highest cv_accuracy; ties go to the smaller value.
/// Grid points are evaluated in parallel, so `family` must be thread-safe.
CvResult tune_by_cv(const DistanceFamily& family, const LabelSet& labels, int folds, const std::vector<double>& grid,
                    std::uint64_t seed);

namespace serial {
CvResult tune_by_cv(const DistanceFamily& family, const LabelSet& labels, int folds, const std::vector<double>& grid,
                    std::uint64_t seed);
}  // namespace serial

struct EvalDataset {
  std::string name;
  CostedGraph graph;
  std::vector<int> labels;
};

struct EvalMethod {
  Method method = Method::SP;
  std::vector<double> grid;  // empty for parameter-free methods
};

struct EvalConfig {
  std::vector<double> rates{0.1, 0.3, 0.5, 0.7, 0.9};
  int repeats = 5;
  int outer_folds = 5;
  int inner_folds = 5;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  PResistanceOptions pres;
};

struct RateResult {
  double rate = 0.0;
  std::vector<ScoreTable> tables;  // one per dataset, accuracies as samples
  std::vector<CopelandEntry> ranking;
};

/// For every labelling rate and repeat: subsample the labels, run an outer
/// stratified CV over them, tune each method's parameter by inner CV on the
/// training folds, and score 1-NN propagation accuracy on the held-out fold.
/// Each (repeat, outer fold) contributes one accuracy sample; methods are
/// ranked per rate with Copeland over all datasets.
std::vector<RateResult> evaluate_classification(const std::vector<EvalDataset>& datasets,
                                                const std::vector<EvalMethod>& methods, const EvalConfig& config);

std::string format_score_tables_csv(const std::vector<RateResult>& results);
std::string format_rankings_csv(const std::vector<RateResult>& results);

}  // namespace gdist
