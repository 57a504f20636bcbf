#include "gdist/classify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <random>

#include "gdist/error.hpp"
#include "gdist/family.hpp"
#include "gdist/io.hpp"
#include "gdist/seed.hpp"

namespace gdist {

LabelSet LabelSet::all_known(std::vector<int> labels) {
  LabelSet out;
  out.known.assign(labels.size(), 1);
  out.labels = std::move(labels);
  return out;
}

LabelSet LabelSet::from_partial(std::vector<int> labels) {
  LabelSet out;
  out.known.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) out.known[i] = labels[i] >= 0;
  out.labels = std::move(labels);
  return out;
}

int LabelSet::known_count() const { return static_cast<int>(std::count(known.begin(), known.end(), 1)); }

LabelSet propagate_1nn(const DistanceMatrix& d, const LabelSet& seeds) {
  const int n = d.size();
  if (seeds.size() != n) throw Error(ErrorCode::InvalidArgument, "label count does not match the matrix");
  if (seeds.known_count() == 0) throw Error(ErrorCode::InvalidArgument, "need at least one labelled node");
  LabelSet out = seeds;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Closest labelled node of every unlabelled one, as (distance, v).
  std::vector<double> best_d(n, kInf);
  std::vector<int> best_v(n, -1);
  auto offer = [&](int u, int v) {
    const double x = d(u, v);
    if (x < best_d[u] || (x == best_d[u] && v < best_v[u])) {
      best_d[u] = x;
      best_v[u] = v;
    }
  };
  for (int u = 0; u < n; ++u)
    if (!out.known[u])
      for (int v = 0; v < n; ++v)
        if (out.known[v]) offer(u, v);

  for (int remaining = n - seeds.known_count(); remaining > 0; --remaining) {
    int u = -1;
    for (int w = 0; w < n; ++w) {
      if (out.known[w]) continue;
      if (u < 0 || best_d[w] < best_d[u]) u = w;
    }
    out.labels[u] = out.labels[best_v[u]];
    out.known[u] = 1;
    for (int w = 0; w < n; ++w)
      if (!out.known[w]) offer(w, u);
  }
  return out;
}

std::vector<int> stratified_folds(const LabelSet& labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::ParamOutOfRange, "need at least two folds");
  folds = std::min(folds, labels.known_count());
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < labels.size(); ++i)
    if (labels.known[i]) by_class[labels.labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  std::vector<int> fold(labels.size(), -1);
  int next = 0;  // continue the round-robin across classes so fold sizes stay even
  for (auto& [cls, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (int node : members) {
      fold[node] = next;
      next = (next + 1) % std::max(folds, 1);
    }
  }
  return fold;
}

LabelSet subsample_labels(const LabelSet& labels, double rate, std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) throw Error(ErrorCode::ParamOutOfRange, "labelling rate must lie in (0, 1]");
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < labels.size(); ++i)
    if (labels.known[i]) by_class[labels.labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  LabelSet out = labels;
  std::fill(out.known.begin(), out.known.end(), 0);
  for (auto& [cls, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const size_t keep = std::max<size_t>(1, static_cast<size_t>(std::lround(rate * members.size())));
    for (size_t j = 0; j < keep && j < members.size(); ++j) out.known[members[j]] = 1;
  }
  return out;
}

double cv_accuracy(const DistanceMatrix& d, const LabelSet& labels, int folds, std::uint64_t seed) {
  if (labels.known_count() < 2) throw Error(ErrorCode::InvalidArgument, "cross-validation needs two labels");
  const std::vector<int> fold = stratified_folds(labels, folds, seed);
  const int used = *std::max_element(fold.begin(), fold.end()) + 1;
  double total = 0.0;
  for (int f = 0; f < used; ++f) {
    LabelSet train = labels;
    int held = 0;
    for (int i = 0; i < labels.size(); ++i)
      if (fold[i] == f) {
        train.known[i] = 0;
        ++held;
      }
    const LabelSet pred = propagate_1nn(d, train);
    int correct = 0;
    for (int i = 0; i < labels.size(); ++i)
      if (fold[i] == f && pred.labels[i] == labels.labels[i]) ++correct;
    total += static_cast<double>(correct) / held;
  }
  return total / used;
}

namespace {

CvResult pick_best(const std::vector<double>& grid, std::vector<double> acc) {
  CvResult out;
  out.mean_accuracy = std::move(acc);
  size_t best = 0;
  for (size_t i = 1; i < grid.size(); ++i) {
    const double a = out.mean_accuracy[i], b = out.mean_accuracy[best];
    if (a > b || (a == b && grid[i] < grid[best])) best = i;
  }
  out.best = grid[best];
  return out;
}

void check_tune_args(int folds, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter grid");
  if (folds < 2) throw Error(ErrorCode::ParamOutOfRange, "need at least two folds");
}

}  // namespace

CvResult tune_by_cv(const DistanceFamily& family, const LabelSet& labels, int folds, const std::vector<double>& grid,
                    std::uint64_t seed) {
  check_tune_args(folds, grid);
  const int m = static_cast<int>(grid.size());
  std::vector<double> acc(m, 0.0);
  std::vector<std::exception_ptr> errors(m);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    try {
      acc[i] = cv_accuracy(family(grid[i]), labels, folds, seed);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return pick_best(grid, std::move(acc));
}

namespace serial {
CvResult tune_by_cv(const DistanceFamily& family, const LabelSet& labels, int folds, const std::vector<double>& grid,
                    std::uint64_t seed) {
  check_tune_args(folds, grid);
  std::vector<double> acc;
  for (double value : grid) acc.push_back(cv_accuracy(family(value), labels, folds, seed));
  return pick_best(grid, std::move(acc));
}
}  // namespace serial

std::vector<RateResult> evaluate_classification(const std::vector<EvalDataset>& datasets,
                                                const std::vector<EvalMethod>& methods, const EvalConfig& config) {
  if (methods.size() < 2) throw Error(ErrorCode::InvalidArgument, "evaluation needs at least two methods");
  if (config.repeats < 1) throw Error(ErrorCode::ParamOutOfRange, "repeats must be >= 1");

  std::vector<RateResult> results;
  for (double rate : config.rates) results.push_back({rate, {}, {}});

  for (size_t di = 0; di < datasets.size(); ++di) {
    const EvalDataset& data = datasets[di];
    if (static_cast<int>(data.labels.size()) != data.graph.size()) {
      throw Error(ErrorCode::InvalidArgument, "dataset " + data.name + ": label count does not match the graph");
    }
    // Distances do not depend on the labels: compute each grid point once.
    std::vector<std::vector<DistanceMatrix>> cache(methods.size());
    for (size_t mi = 0; mi < methods.size(); ++mi) {
      const EvalMethod& em = methods[mi];
      if (em.grid.empty()) {
        cache[mi].push_back(compute_distance(data.graph, em.method, {}, config.pres));
      } else {
        for (double v : em.grid)
          cache[mi].push_back(
              compute_distance(data.graph, em.method, with_family_value(em.method, {}, v), config.pres));
      }
    }
    const LabelSet truth = LabelSet::all_known(data.labels);

    for (size_t ri = 0; ri < config.rates.size(); ++ri) {
      ScoreTable table;
      table.dataset = data.name;
      for (const auto& em : methods) {
        std::string name(to_string(em.method));
        table.methods.push_back(name);
      }
      table.samples.assign(methods.size(), {});
      for (int rep = 0; rep < config.repeats; ++rep) {
        const auto stream = [&](std::uint32_t tag) {
          return derive_seed(config.seed, {static_cast<std::uint32_t>(di), static_cast<std::uint32_t>(ri),
                                           static_cast<std::uint32_t>(rep), tag});
        };
        const LabelSet kept = subsample_labels(truth, config.rates[ri], stream(0));
        if (kept.known_count() < 2) continue;
        const std::vector<int> outer = stratified_folds(kept, config.outer_folds, stream(1));
        const int used = *std::max_element(outer.begin(), outer.end()) + 1;
        for (int f = 0; f < used; ++f) {
          LabelSet train = kept;
          for (int i = 0; i < train.size(); ++i)
            if (outer[i] == f) train.known[i] = 0;
          for (size_t mi = 0; mi < methods.size(); ++mi) {
            const EvalMethod& em = methods[mi];
            size_t pick = 0;
            if (!em.grid.empty() && train.known_count() >= 2) {
              const DistanceFamily family = [&](double v) {
                const auto it = std::find(em.grid.begin(), em.grid.end(), v);
                return cache[mi][static_cast<size_t>(it - em.grid.begin())];
              };
              const double best = tune_by_cv(family, train, config.inner_folds, em.grid, stream(2 + f)).best;
              pick = static_cast<size_t>(std::find(em.grid.begin(), em.grid.end(), best) - em.grid.begin());
            } else if (!em.grid.empty()) {
              pick = static_cast<size_t>(std::min_element(em.grid.begin(), em.grid.end()) - em.grid.begin());
            }
            const LabelSet pred = propagate_1nn(cache[mi][pick], train);
            int correct = 0, held = 0;
            for (int i = 0; i < train.size(); ++i) {
              if (outer[i] != f) continue;
              ++held;
              if (pred.labels[i] == truth.labels[i]) ++correct;
            }
            table.samples[mi].push_back(static_cast<double>(correct) / held);
          }
        }
      }
      results[ri].tables.push_back(std::move(table));
    }
  }
  for (auto& r : results) r.ranking = copeland_rank(r.tables, config.alpha);
  return results;
}

std::string format_score_tables_csv(const std::vector<RateResult>& results) {
  std::string out = "rate,dataset,method,sample,accuracy\n";
  for (const auto& r : results)
    for (const auto& t : r.tables)
      for (size_t m = 0; m < t.methods.size(); ++m)
        for (size_t s = 0; s < t.samples[m].size(); ++s)
          out += format_double(r.rate) + ',' + t.dataset + ',' + t.methods[m] + ',' + std::to_string(s) + ',' +
                 format_double(t.samples[m][s]) + '\n';
  return out;
}

std::string format_rankings_csv(const std::vector<RateResult>& results) {
  std::string out = "rate,method,rank,score\n";
  for (const auto& r : results)
    for (const auto& e : r.ranking)
      out +=
          format_double(r.rate) + ',' + e.method + ',' + std::to_string(e.rank) + ',' + std::to_string(e.score) + '\n';
  return out;
}

}  // namespace gdist
