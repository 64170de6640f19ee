#include "rogers/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rogers/regions.hpp"
#include "rogers/version.hpp"

namespace rogers {

namespace {

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::CLT: return "clt";
    case ExperimentKind::FunctionalCLT: return "fclt";
    case ExperimentKind::Poisson: return "poisson";
    case ExperimentKind::Crosscheck: return "crosscheck";
  }
  return "?";
}

std::string space_name(SpaceKind s) {
  return s == SpaceKind::Affine ? "affine" : "congruence";
}

std::vector<std::int64_t> effective_pvec(const ExperimentConfig& c) {
  if (!c.p_vec.empty()) return c.p_vec;
  std::vector<std::int64_t> p(c.d, 0);
  p[0] = 1;
  return p;
}

double zscale(const ExperimentConfig& c) {
  double phi = to_double(c.volume);
  if (c.space == SpaceKind::Congruence && c.q == 2) return std::sqrt(2.0 * phi);
  return std::sqrt(phi);
}

CheckResult band(const std::string& name, double observed, double target, double tolerance) {
  return CheckResult{name, observed, target, tolerance,
                     std::abs(observed - target) <= tolerance};
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& c : checks)
    out.push_back(nlohmann::json{{"name", c.name},
                                 {"observed", c.observed},
                                 {"target", c.target},
                                 {"tolerance", c.tolerance},
                                 {"pass", c.pass}});
  return out;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json tg = nlohmann::json::array();
  for (auto& t : t_grid) tg.push_back(rat_to_string(t));
  return nlohmann::json{{"kind", kind_name(kind)},
                        {"space", space_name(space)},
                        {"d", d},
                        {"volume", rat_to_string(volume)},
                        {"k_max", k_max},
                        {"samples", samples},
                        {"seed", seed},
                        {"prime", prime},
                        {"t_grid", tg},
                        {"n_points", n_points},
                        {"q", q},
                        {"p_vec", p_vec},
                        {"workers", workers},
                        {"truncation", trunc.to_json()}};
}

bool Report::all_pass() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  return nlohmann::json{{"kind", kind},        {"config", config},
                        {"data", data},        {"checks", checks_to_json(checks)},
                        {"elapsed_seconds", elapsed_seconds}, {"version", version}};
}

std::string Report::to_table() const {
  std::ostringstream out;
  out << "experiment: " << kind << "\n";
  out << "config: " << config.dump() << "\n";
  for (auto& [key, value] : data.items()) out << "  " << key << ": " << value.dump() << "\n";
  if (!checks.empty()) {
    out << std::left << std::setw(38) << "check" << std::setw(14) << "observed" << std::setw(14)
        << "target" << std::setw(14) << "tolerance" << "result\n";
    for (auto& c : checks) {
      out << std::left << std::setw(38) << c.name << std::setw(14) << c.observed << std::setw(14)
          << c.target << std::setw(14) << c.tolerance << (c.pass ? "pass" : "FAIL") << "\n";
    }
  }
  return out.str();
}

std::vector<std::vector<double>> map_samples(
    std::int64_t samples, int workers,
    const std::function<std::vector<double>(std::int64_t)>& fn) {
  std::vector<std::vector<double>> out(static_cast<size_t>(samples));
#ifdef _OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
    for (std::int64_t i = 0; i < samples; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
#endif
  for (std::int64_t i = 0; i < samples; ++i) out[static_cast<size_t>(i)] = fn(i);
  return out;
}

Lattice sample_lattice(const ExperimentConfig& config, std::int64_t index) {
  auto gen = rng::substream(config.seed, static_cast<std::uint64_t>(index));
  Lattice lat;
  if (config.space == SpaceKind::Affine) {
    lat = sample_affine(config.d, config.prime, gen);
  } else {
    lat = sample_congruence(config.d, effective_pvec(config), config.q, config.prime, gen);
  }
  lat.provenance.seed = config.seed;
  lat.provenance.index = static_cast<std::uint64_t>(index);
  return lat;
}

// ---------------------------------------------------------------------------
// CLT
// ---------------------------------------------------------------------------

Report run_clt(const ExperimentConfig& config) {
  if (config.volume <= 0) throw std::invalid_argument("run_clt: volume must be positive");
  auto t0 = std::chrono::steady_clock::now();
  const double phi = to_double(config.volume);
  const double radius = radius_for_volume(config.d, phi);
  const double scale = zscale(config);

  auto values = map_samples(config.samples, config.workers, [&](std::int64_t i) {
    Lattice lat = sample_lattice(config, i);
    auto cloud = enumerate_in_ball(lat, radius);
    double n = static_cast<double>(cloud.norms.size());
    return std::vector<double>{(n - phi) / scale};
  });

  RunningMoments rm;
  std::vector<double> zs;
  zs.reserve(values.size());
  for (auto& v : values) {
    rm.add(v[0]);
    zs.push_back(v[0]);
  }
  double ks = ks_statistic(zs, [](double x) { return normal_cdf(x); });

  Report rep;
  rep.kind = "clt";
  rep.config = config.to_json();
  rep.version = kVersion;
  nlohmann::json moments = nlohmann::json::array();
  for (int p = 1; p <= 6; ++p) {
    double value = p == 1 ? rm.mean : rm.central_moment(p);
    double se = p == 1 ? rm.stderr_of_mean() : rm.stderr_of_central_moment(p);
    moments.push_back(nlohmann::json{{"order", p}, {"value", value}, {"stderr", se}});
  }
  rep.data = nlohmann::json{{"moments", moments}, {"ks", ks},
                            {"count", static_cast<std::int64_t>(zs.size())}};
  rep.checks.push_back(band("mean", rm.mean, 0.0, 0.1));
  rep.checks.push_back(band("variance", rm.variance(), 1.0, 0.15));
  rep.checks.push_back(band("fourth_moment", rm.central_moment(4), 3.0, 0.6));
  rep.checks.push_back(band("ks_normal", ks, 0.0, 0.05));
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Functional CLT
// ---------------------------------------------------------------------------

Report run_functional_clt(const ExperimentConfig& config) {
  if (config.t_grid.empty()) throw std::invalid_argument("run_functional_clt: empty t grid");
  for (auto& t : config.t_grid)
    if (t <= 0 || t > 1)
      throw std::invalid_argument("run_functional_clt: t grid must lie in (0, 1]");
  auto t0 = std::chrono::steady_clock::now();
  const double phi = to_double(config.volume);
  const double r1 = radius_for_volume(config.d, phi);
  const double scale = zscale(config);
  const int nt = static_cast<int>(config.t_grid.size());

  std::vector<double> ts(nt), radii(nt);
  for (int i = 0; i < nt; ++i) {
    ts[i] = to_double(config.t_grid[i]);
    radii[i] = r1 * std::pow(ts[i], 1.0 / config.d);
  }

  auto values = map_samples(config.samples, config.workers, [&](std::int64_t i) {
    Lattice lat = sample_lattice(config, i);
    auto cloud = enumerate_in_ball(lat, radii.back());
    std::vector<double> z(nt);
    for (int j = 0; j < nt; ++j) {
      double n = static_cast<double>(cloud.count_within(radii[j]));
      z[j] = (n - ts[j] * phi) / scale;
    }
    return z;
  });

  std::vector<RunningMoments> comp(nt);
  std::vector<std::vector<RunningMoments>> prod(nt, std::vector<RunningMoments>(nt));
  for (auto& z : values) {
    for (int a = 0; a < nt; ++a) {
      comp[a].add(z[a]);
      for (int b = a; b < nt; ++b) prod[a][b].add(z[a] * z[b]);
    }
  }

  Report rep;
  rep.kind = "fclt";
  rep.config = config.to_json();
  rep.version = kVersion;
  nlohmann::json cov = nlohmann::json::array();
  for (int a = 0; a < nt; ++a) {
    for (int b = a; b < nt; ++b) {
      double c = prod[a][b].mean - comp[a].mean * comp[b].mean;
      double se = prod[a][b].stderr_of_mean();
      double target = std::min(ts[a], ts[b]);
      cov.push_back(nlohmann::json{{"s", ts[a]}, {"t", ts[b]}, {"cov", c}, {"stderr", se},
                                   {"target", target}});
      std::ostringstream name;
      name << "cov(" << ts[a] << "," << ts[b] << ")";
      rep.checks.push_back(band(name.str(), c, target, 4.0 * se + 1e-9));
    }
  }
  nlohmann::json means = nlohmann::json::array();
  for (int a = 0; a < nt; ++a) {
    means.push_back(nlohmann::json{{"t", ts[a]}, {"mean", comp[a].mean},
                                   {"stderr", comp[a].stderr_of_mean()}});
    std::ostringstream name;
    name << "mean(" << ts[a] << ")";
    rep.checks.push_back(band(name.str(), comp[a].mean, 0.0, 4.0 * comp[a].stderr_of_mean() + 1e-9));
  }
  rep.data = nlohmann::json{{"covariance", cov}, {"means", means},
                            {"count", config.samples}};
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Poisson process
// ---------------------------------------------------------------------------

Report run_poisson(const ExperimentConfig& config) {
  if (config.n_points < 1) throw std::invalid_argument("run_poisson: n_points >= 1 required");
  auto t0 = std::chrono::steady_clock::now();
  const bool halved = config.space == SpaceKind::Congruence && config.q == 2;
  const int stride = halved ? 2 : 1;
  const int n = config.n_points;
  const double lambda = halved ? 0.5 : 1.0;

  // Joint-moment levels (1, 2) in volume units.
  const double r_v1 = radius_for_volume(config.d, 1.0);
  const double r_v2 = radius_for_volume(config.d, 2.0);

  auto values = map_samples(config.samples, config.workers, [&](std::int64_t i) {
    Lattice lat = sample_lattice(config, i);
    auto vols = successive_volumes(lat, n, EnumOptions{}, stride);
    auto counts = nested_counts(lat, {r_v1, r_v2});
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n) + 2);
    for (double v : vols) out.push_back(v);
    out.push_back(static_cast<double>(counts[0]));
    out.push_back(static_cast<double>(counts[1]));
    return out;
  });

  RunningMoments gap_stats;
  RunningMoments joint, n1_stats, n2_stats;
  std::vector<double> gaps;
  for (auto& v : values) {
    for (int i = 0; i + 1 < n; ++i) {
      double g = v[i + 1] - v[i];
      gap_stats.add(g);
      gaps.push_back(g);
    }
    double c1 = v[n], c2 = v[n + 1];
    if (halved) {
      c1 *= 0.5;
      c2 *= 0.5;
    }
    n1_stats.add(c1);
    n2_stats.add(c2);
    joint.add(c1 * c2);
  }
  double gap_mean_target = 1.0 / lambda;
  double ks_exp = ks_statistic(
      gaps, [lambda](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-lambda * x); });

  const Rat lambda_rat = halved ? Rat(1, 2) : Rat(1);
  Rat joint_target = poisson_joint_moment(lambda_rat, {Rat(1), Rat(2)});

  Report rep;
  rep.kind = "poisson";
  rep.config = config.to_json();
  rep.version = kVersion;
  rep.data = nlohmann::json{{"gap_mean", gap_stats.mean},
                            {"gap_stderr", gap_stats.stderr_of_mean()},
                            {"gap_ks_exponential", ks_exp},
                            {"joint_moment_n1n2", joint.mean},
                            {"joint_moment_stderr", joint.stderr_of_mean()},
                            {"joint_moment_target", to_double(joint_target)},
                            {"mean_n1", n1_stats.mean},
                            {"mean_n2", n2_stats.mean},
                            {"count", config.samples}};
  rep.checks.push_back(
      band("gap_mean", gap_stats.mean, gap_mean_target, 0.1 * gap_mean_target));
  rep.checks.push_back(band("joint_moment_n1n2", joint.mean, to_double(joint_target),
                            4.0 * joint.stderr_of_mean() + 1e-9));
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Crosscheck
// ---------------------------------------------------------------------------

Report run_crosscheck(const ExperimentConfig& config) {
  const int k_max = config.k_max;
  if (k_max < 1) throw std::invalid_argument("run_crosscheck: k_max >= 1 required");
  if (config.space == SpaceKind::Affine && k_max > config.d)
    throw std::invalid_argument("run_crosscheck: affine requires k_max <= d");
  if (config.space == SpaceKind::Congruence && k_max > config.d - 1)
    throw std::invalid_argument("run_crosscheck: congruence requires k_max <= d-1");
  auto t0 = std::chrono::steady_clock::now();
  const double vol = to_double(config.volume);
  const double radius = radius_for_volume(config.d, vol);

  auto values = map_samples(config.samples, config.workers, [&](std::int64_t i) {
    Lattice lat = sample_lattice(config, i);
    auto cloud = enumerate_in_ball(lat, radius);
    double n = static_cast<double>(cloud.norms.size());
    std::vector<double> powers(static_cast<size_t>(k_max));
    double acc = 1.0;
    for (int k = 0; k < k_max; ++k) {
      acc *= n;
      powers[static_cast<size_t>(k)] = acc;
    }
    return powers;
  });

  std::vector<RunningMoments> rm(static_cast<size_t>(k_max));
  for (auto& v : values)
    for (int k = 0; k < k_max; ++k) rm[static_cast<size_t>(k)].add(v[static_cast<size_t>(k)]);

  Report rep;
  rep.kind = "crosscheck";
  rep.config = config.to_json();
  rep.version = kVersion;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 1; k <= k_max; ++k) {
    RegionFamily regions = RegionFamily::balls(config.d, std::vector<Rat>(k, config.volume));
    MomentEval pred;
    if (config.space == SpaceKind::Affine) {
      pred = affine_moment(k, config.d, regions, config.trunc);
    } else {
      pred = congruence_moment(k, config.d, config.q, regions, config.trunc);
    }
    auto& stats = rm[static_cast<size_t>(k - 1)];
    double se = stats.stderr_of_mean();
    double tol = 4.0 * se + pred.residual + 2.0 * pred.stat_error;
    std::ostringstream name;
    name << "moment_k" << k;
    rep.checks.push_back(band(name.str(), stats.mean, pred.value, tol));
    rows.push_back(nlohmann::json{{"k", k},
                                  {"empirical", stats.mean},
                                  {"stderr", se},
                                  {"predicted", pred.value},
                                  {"residual", pred.residual},
                                  {"pred_stat_error", pred.stat_error}});
  }
  rep.data = nlohmann::json{{"moments", rows}, {"count", config.samples}};
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Report run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::CLT: return run_clt(config);
    case ExperimentKind::FunctionalCLT: return run_functional_clt(config);
    case ExperimentKind::Poisson: return run_poisson(config);
    case ExperimentKind::Crosscheck: return run_crosscheck(config);
  }
  throw std::logic_error("run_experiment: unknown kind");
}

}  // namespace rogers
