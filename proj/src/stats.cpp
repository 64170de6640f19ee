#include "rogers/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rogers {

namespace {

constexpr std::array<std::array<double, 9>, 9> build_binomials() {
  std::array<std::array<double, 9>, 9> c{};
  for (int n = 0; n <= 8; ++n) {
    c[n][0] = 1.0;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0.0);
  }
  return c;
}
constexpr auto kBinom = build_binomials();

}  // namespace

void RunningMoments::add(double x) {
  RunningMoments single;
  single.count = 1;
  single.mean = x;
  single.min_value = x;
  single.max_value = x;
  *this = merged(*this, single);
}

RunningMoments RunningMoments::merged(const RunningMoments& a, const RunningMoments& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  RunningMoments c;
  c.count = a.count + b.count;
  const double na = static_cast<double>(a.count), nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  c.mean = a.mean + delta * (nb / n);
  c.min_value = std::min(a.min_value, b.min_value);
  c.max_value = std::max(a.max_value, b.max_value);

  // Shift both central sums onto the combined mean:
  // sum_a (x - mu)^p = sum_k C(p,k) (-delta nb/n)^k M_{p-k}^a, with M_0 = n, M_1 = 0.
  auto shifted = [](const RunningMoments& g, double shift, int p) {
    double out = 0.0;
    double powshift = 1.0;
    for (int k = 0; k <= p; ++k) {
      int q = p - k;
      double mq = q == 0 ? static_cast<double>(g.count) : (q == 1 ? 0.0 : g.m[q]);
      out += kBinom[p][k] * powshift * mq;
      powshift *= shift;
    }
    return out;
  };
  for (int p = 2; p <= 8; ++p)
    c.m[p] = shifted(a, -delta * nb / n, p) + shifted(b, delta * na / n, p);
  return c;
}

double RunningMoments::central_moment(int p) const {
  if (count == 0) return 0.0;
  if (p == 0) return 1.0;
  if (p == 1) return 0.0;
  return m[p] / static_cast<double>(count);
}

double RunningMoments::stderr_of_mean() const {
  if (count < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count));
}

double RunningMoments::stderr_of_central_moment(int p) const {
  if (count < 2 || 2 * p > 8) return 0.0;
  double v = central_moment(2 * p) - central_moment(p) * central_moment(p);
  if (v < 0) v = 0;
  return std::sqrt(v / static_cast<double>(count));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace rogers
