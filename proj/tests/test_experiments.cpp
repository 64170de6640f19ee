#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rogers/experiments.hpp"

using namespace rogers;

namespace {

ExperimentConfig small_clt() {
  ExperimentConfig c;
  c.kind = ExperimentKind::CLT;
  c.space = SpaceKind::Affine;
  c.d = 6;
  c.volume = 10;
  c.samples = 200;
  c.seed = 424242;
  c.prime = 1000003;
  return c;
}

}  // namespace

TEST_CASE("reports are bit-identical across worker counts") {
  auto base = small_clt();
  base.workers = 1;
  auto r1 = run_clt(base);
  for (int w : {4, 8}) {
    auto cfg = base;
    cfg.workers = w;
    auto rw = run_clt(cfg);
    auto a = r1.to_json();
    auto b = rw.to_json();
    a.erase("elapsed_seconds");
    b.erase("elapsed_seconds");
    a["config"].erase("workers");
    b["config"].erase("workers");
    CHECK(a == b);
  }
}

TEST_CASE("fclt with t grid {1} reproduces the clt statistic") {
  auto cfg = small_clt();
  cfg.kind = ExperimentKind::FunctionalCLT;
  cfg.t_grid = {Rat(1)};
  auto f = run_functional_clt(cfg);
  auto c = run_clt(small_clt());
  double var_clt = 0.0;
  for (auto& m : c.data["moments"])
    if (m["order"] == 2) var_clt = m["value"].get<double>();
  double mean_clt = 0.0;
  for (auto& m : c.data["moments"])
    if (m["order"] == 1) mean_clt = m["value"].get<double>();
  double cov_f = f.data["covariance"][0]["cov"].get<double>();
  double mean_f = f.data["means"][0]["mean"].get<double>();
  CHECK(mean_f == doctest::Approx(mean_clt).epsilon(1e-12));
  // cov uses E[Z^2] - mean^2 = the same central second moment.
  CHECK(cov_f == doctest::Approx(var_clt).epsilon(1e-9));
}

TEST_CASE("experiment parameter validation") {
  auto cfg = small_clt();
  cfg.volume = 0;
  CHECK_THROWS_AS(run_clt(cfg), std::invalid_argument);

  auto f = small_clt();
  f.kind = ExperimentKind::FunctionalCLT;
  f.t_grid = {Rat(2)};
  CHECK_THROWS_AS(run_functional_clt(f), std::invalid_argument);

  auto x = small_clt();
  x.kind = ExperimentKind::Crosscheck;
  x.k_max = 9;
  CHECK_THROWS_AS(run_crosscheck(x), std::invalid_argument);
}

TEST_CASE("crosscheck exact channel at k = 2 small scale") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Crosscheck;
  cfg.space = SpaceKind::Affine;
  cfg.d = 7;
  cfg.volume = 8;
  cfg.k_max = 2;
  cfg.samples = 3000;
  cfg.seed = 7;
  cfg.workers = 2;
  auto rep = run_crosscheck(cfg);
  REQUIRE(rep.checks.size() == 2);
  // k = 1 and k = 2 both have exact predictions (V and V^2 + V).
  for (auto& row : rep.data["moments"]) {
    if (row["k"] == 1) CHECK(row["predicted"].get<double>() == doctest::Approx(8.0));
    if (row["k"] == 2) CHECK(row["predicted"].get<double>() == doctest::Approx(72.0));
    CHECK(row["residual"].get<double>() == 0.0);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("poisson experiment basic structure") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Poisson;
  cfg.space = SpaceKind::Affine;
  cfg.d = 6;
  cfg.samples = 300;
  cfg.n_points = 3;
  cfg.seed = 12;
  cfg.workers = 2;
  auto rep = run_poisson(cfg);
  CHECK(rep.data.contains("gap_mean"));
  CHECK(rep.data.contains("joint_moment_n1n2"));
  CHECK(rep.data["joint_moment_target"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("report json carries config echo and version") {
  auto rep = run_clt(small_clt());
  auto j = rep.to_json();
  for (auto key : {"kind", "config", "data", "checks", "elapsed_seconds", "version"})
    CHECK(j.contains(key));
  CHECK(j["config"]["seed"] == 424242);
  CHECK(!j["version"].get<std::string>().empty());
  CHECK(!rep.to_table().empty());
}
