#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace rogers {

/// Streaming central-moment accumulator up to order 8 with an associative,
/// commutative (up to rounding) pairwise merge. M[p] holds sum (x - mean)^p.
struct RunningMoments {
  long long count = 0;
  double mean = 0.0;
  std::array<double, 9> m{};  // m[2]..m[8] used
  double min_value = 0.0;
  double max_value = 0.0;

  void add(double x);
  static RunningMoments merged(const RunningMoments& a, const RunningMoments& b);

  double central_moment(int p) const;  // M[p] / count
  double variance() const { return central_moment(2); }
  double stderr_of_mean() const;
  /// Standard error of the p-th central moment estimate (delta-method-free
  /// upper proxy: sd of (x-mean)^p over sqrt(n), adequate for pass bands).
  double stderr_of_central_moment(int p) const;
};

double normal_cdf(double x);

/// Two-sided Kolmogorov-Smirnov sup distance between the empirical CDF of
/// the samples and a reference CDF. Throws on an empty sample.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace rogers
