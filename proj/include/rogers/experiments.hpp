#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rogers/lattice.hpp"
#include "rogers/moments.hpp"
#include "rogers/stats.hpp"

#include "json.hpp"

namespace rogers {

enum class ExperimentKind { CLT, FunctionalCLT, Poisson, Crosscheck };
enum class SpaceKind { Affine, Congruence };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::CLT;
  SpaceKind space = SpaceKind::Affine;
  int d = 10;
  Rat volume = 100;  // phi(d) for CLT-type runs, V for crosschecks
  int k_max = 2;
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  std::int64_t prime = 1000003;
  std::vector<Rat> t_grid;  // functional case, values in (0, 1]
  int n_points = 5;         // Poisson case
  std::int64_t q = 3;
  std::vector<std::int64_t> p_vec;  // defaults to e_1
  Truncation trunc;
  int workers = 1;

  nlohmann::json to_json() const;
};

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  nlohmann::json config;
  std::string kind;
  nlohmann::json data;  // experiment-specific payload
  std::vector<CheckResult> checks;
  double elapsed_seconds = 0.0;
  std::string version;

  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

Report run_clt(const ExperimentConfig& config);
Report run_functional_clt(const ExperimentConfig& config);
Report run_poisson(const ExperimentConfig& config);
Report run_crosscheck(const ExperimentConfig& config);
Report run_experiment(const ExperimentConfig& config);

/// Deterministic parallel map over sample indices: each sample's value
/// depends only on (seed, index), results land in an index-ordered buffer
/// and are reduced serially, so any worker count gives identical output.
std::vector<std::vector<double>> map_samples(
    std::int64_t samples, int workers,
    const std::function<std::vector<double>(std::int64_t)>& fn);

/// Per-sample lattice draw shared by all experiments.
Lattice sample_lattice(const ExperimentConfig& config, std::int64_t index);

}  // namespace rogers
