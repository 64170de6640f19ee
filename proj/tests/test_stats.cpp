#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rogers/rng.hpp"
#include "rogers/stats.hpp"

using namespace rogers;

namespace {

double single_pass_central(const std::vector<double>& xs, int p) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += std::pow(x - mean, p);
  return m / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("merge with empty is identity") {
  RunningMoments a;
  a.add(1.0);
  a.add(2.5);
  RunningMoments empty;
  auto m = RunningMoments::merged(a, empty);
  CHECK(m.count == a.count);
  CHECK(m.mean == a.mean);
  auto m2 = RunningMoments::merged(empty, a);
  CHECK(m2.mean == a.mean);
}

TEST_CASE("merged moments equal single-pass moments within 1e-10 relative") {
  rng::Xoshiro256ss gen(5);
  std::vector<double> xs(1000000);
  for (auto& x : xs) x = rng::uniform01(gen) * 3.0 - 1.0;

  RunningMoments whole;
  for (double x : xs) whole.add(x);

  // Split into uneven chunks, accumulate, merge pairwise in a skewed order.
  std::vector<RunningMoments> chunks(7);
  size_t at = 0;
  for (size_t c = 0; c < chunks.size(); ++c) {
    size_t len = (c + 1) * xs.size() / 28;
    if (c + 1 == chunks.size()) len = xs.size() - at;
    for (size_t i = 0; i < len && at < xs.size(); ++i, ++at) chunks[c].add(xs[at]);
  }
  RunningMoments merged;
  for (auto& c : chunks) merged = RunningMoments::merged(merged, c);

  CHECK(merged.count == whole.count);
  for (int p = 2; p <= 8; ++p) {
    double sp = single_pass_central(xs, p);
    double a = merged.central_moment(p);
    double b = whole.central_moment(p);
    CHECK(std::abs(a - sp) <= 1e-10 * std::max(1.0, std::abs(sp)));
    CHECK(std::abs(b - sp) <= 1e-10 * std::max(1.0, std::abs(sp)));
  }
}

TEST_CASE("merge associativity on random triples") {
  rng::Xoshiro256ss gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    RunningMoments a, b, c;
    for (int i = 0; i < 100; ++i) a.add(rng::uniform01(gen) * 10);
    for (int i = 0; i < 37; ++i) b.add(rng::uniform01(gen) * 10 - 5);
    for (int i = 0; i < 211; ++i) c.add(rng::uniform01(gen));
    auto left = RunningMoments::merged(RunningMoments::merged(a, b), c);
    auto right = RunningMoments::merged(a, RunningMoments::merged(b, c));
    for (int p = 2; p <= 8; ++p) {
      double x = left.central_moment(p), y = right.central_moment(p);
      CHECK(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("ks statistic spec example") {
  double d = ks_statistic({-1.0, 0.0, 1.0}, [](double x) { return normal_cdf(x); });
  CHECK(d == doctest::Approx(0.1746).epsilon(1e-3));
  CHECK(std::abs(d - (1.0 / 3.0 - normal_cdf(-1.0))) < 1e-12);
  CHECK_THROWS_AS(ks_statistic({}, [](double) { return 0.5; }), std::invalid_argument);
}

TEST_CASE("normal cdf basics") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0));
}

TEST_CASE("substreams are deterministic and index-separated") {
  auto g1 = rng::substream(42, 7);
  auto g2 = rng::substream(42, 7);
  auto g3 = rng::substream(42, 8);
  bool same = true, diff = false;
  for (int i = 0; i < 64; ++i) {
    auto a = g1(), b = g2(), c = g3();
    same = same && (a == b);
    diff = diff || (a != c);
  }
  CHECK(same);
  CHECK(diff);
}
