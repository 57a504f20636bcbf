#pragma once

#include <string>
#include <vector>

namespace gdist {

struct Partition;

/// I(X,Y) / sqrt(H(X) H(Y)) with natural logs; 0 when either entropy is 0.
/// Labels may be any integers.
double nmi(const std::vector<int>& x, const std::vector<int>& y);
double nmi(const Partition& x, const Partition& y);

/// One-sided Welch test of mean(a) > mean(b); returns the p-value. If both
/// samples have zero variance the comparison is exact: 0 when mean(a) >
/// mean(b), 1 otherwise.
double welch_one_sided_p(const std::vector<double>& a, const std::vector<double>& b);

/// Score samples of several methods on one data set.
struct ScoreTable {
  std::string dataset;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> samples;  // parallel to methods
};

struct CopelandEntry {
  std::string method;
  int rank = 0;
  int score = 0;
};

/// +1 / -1 for every significant pairwise win / loss, summed over tables.
/// Sorted by rank; tied scores share the better rank (1, 2, 2, 4).
std::vector<CopelandEntry> copeland_rank(const std::vector<ScoreTable>& tables, double alpha = 0.05);
std::string format_copeland_csv(const std::vector<CopelandEntry>& ranking);

}  // namespace gdist
