#include "gdist/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <map>
#include <numeric>

#include "gdist/error.hpp"
#include "gdist/kernel.hpp"

namespace gdist {

namespace {

std::vector<int> relabel(const std::vector<int>& x, int& count) {
  std::map<int, int> ids;
  std::vector<int> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = ids.try_emplace(x[i], static_cast<int>(ids.size())).first->second;
  count = static_cast<int>(ids.size());
  return out;
}

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= c / n * std::log(c / n);
  return h;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased; 0 for a single value
  double n = 0.0;
};

Moments moments(const std::vector<double>& x) {
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty score sample");
  Moments m;
  m.n = static_cast<double>(x.size());
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / m.n;
  if (x.size() > 1) {
    for (double v : x) m.var += (v - m.mean) * (v - m.mean);
    m.var /= m.n - 1.0;
  }
  return m;
}

}  // namespace

double nmi(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size() || x.empty()) throw Error(ErrorCode::InvalidArgument, "partitions differ in size");
  int kx = 0, ky = 0;
  const auto a = relabel(x, kx);
  const auto b = relabel(y, ky);
  std::vector<double> joint(static_cast<size_t>(kx) * ky, 0.0), cx(kx, 0.0), cy(ky, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    joint[static_cast<size_t>(a[i]) * ky + b[i]] += 1.0;
    cx[a[i]] += 1.0;
    cy[b[i]] += 1.0;
  }
  const double n = static_cast<double>(a.size());
  const double hx = entropy(cx, n), hy = entropy(cy, n);
  if (hx <= 0.0 || hy <= 0.0) return 0.0;
  double mi = 0.0;
  for (int i = 0; i < kx; ++i)
    for (int j = 0; j < ky; ++j) {
      const double c = joint[static_cast<size_t>(i) * ky + j];
      if (c > 0.0) mi += c / n * std::log(c * n / (cx[i] * cy[j]));
    }
  // hx * hy is symmetric in (x, y), so the result is too.
  return std::clamp(mi / std::sqrt(hx * hy), 0.0, 1.0);
}

double nmi(const Partition& x, const Partition& y) { return nmi(x.assignment, y.assignment); }

double welch_one_sided_p(const std::vector<double>& a, const std::vector<double>& b) {
  const Moments ma = moments(a), mb = moments(b);
  const double va = ma.var / ma.n, vb = mb.var / mb.n;
  if (va == 0.0 && vb == 0.0) return ma.mean > mb.mean ? 0.0 : 1.0;
  const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  double denom = 0.0;
  if (va > 0.0) denom += va * va / (ma.n - 1.0);
  if (vb > 0.0) denom += vb * vb / (mb.n - 1.0);
  const double df = (va + vb) * (va + vb) / denom;
  const boost::math::students_t dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

std::vector<CopelandEntry> copeland_rank(const std::vector<ScoreTable>& tables, double alpha) {
  std::map<std::string, int> score;
  for (const auto& table : tables) {
    if (table.methods.size() != table.samples.size()) {
      throw Error(ErrorCode::InvalidArgument, "score table " + table.dataset + " is ragged");
    }
    for (const auto& m : table.methods) score.try_emplace(m, 0);
    for (size_t i = 0; i < table.methods.size(); ++i)
      for (size_t j = i + 1; j < table.methods.size(); ++j) {
        if (welch_one_sided_p(table.samples[i], table.samples[j]) < alpha) {
          ++score[table.methods[i]];
          --score[table.methods[j]];
        } else if (welch_one_sided_p(table.samples[j], table.samples[i]) < alpha) {
          ++score[table.methods[j]];
          --score[table.methods[i]];
        }
      }
  }
  if (score.size() < 2) throw Error(ErrorCode::InvalidArgument, "ranking needs at least two methods");
  std::vector<CopelandEntry> out;
  for (const auto& [method, s] : score) out.push_back({method, 0, s});
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.score > y.score; });
  for (size_t i = 0; i < out.size(); ++i)
    out[i].rank = (i > 0 && out[i].score == out[i - 1].score) ? out[i - 1].rank : static_cast<int>(i) + 1;
  return out;
}

std::string format_copeland_csv(const std::vector<CopelandEntry>& ranking) {
  std::string out = "method,rank,score\n";
  for (const auto& e : ranking) out += e.method + ',' + std::to_string(e.rank) + ',' + std::to_string(e.score) + '\n';
  return out;
}

}  // namespace gdist
