#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rogers/admissible.hpp"
#include "rogers/centered.hpp"
#include "rogers/lifts.hpp"
#include "rogers/partition.hpp"
#include "rogers/regions.hpp"
#include "rogers/rng.hpp"

#include "json.hpp"

namespace rogers {

/// Window parameters for truncated formula evaluation. Enumerations probe
/// one shell beyond the window (u_max + 1, entry_bound + 1); probe terms are
/// reported in the residual instead of the value, alongside analytic series
/// tails where a closed-form bound exists.
struct Truncation {
  std::int64_t u_max = 2;
  std::int64_t entry_bound = 2;
  std::int64_t t_max = 50;
  std::int64_t ell_max = 200;
  std::int64_t e_max = 64;
  std::int64_t mc_budget = 0;  // Monte Carlo samples per non-exact term integral
  bool main_only = false;      // keep only main-class terms in the value
  std::uint64_t mc_seed = 0x5eedULL;

  nlohmann::json to_json() const;
};

struct TermContribution {
  nlohmann::json matrix;
  std::string term_class;
  double coefficient = 0.0;
  double integral = 0.0;
  double integral_stderr = 0.0;
  double contribution = 0.0;
  bool in_window = true;
};

struct MomentEval {
  double value = 0.0;
  double residual = 0.0;    // probe-shell magnitude + analytic tails + coefficient slack
  double stat_error = 0.0;  // RSS of Monte Carlo errors inside the window
  std::vector<TermContribution> terms;
  nlohmann::json to_json() const;
};

/// I(D, u): the integral of prod_i rho_i((D/u) y) over (R^d)^m. Exact when
/// every row has a single nonzero entry (column-wise scaled-shell
/// intersections); otherwise pivot-row importance sampling with the given
/// budget. Throws when sampling is needed but mc_budget is zero.
struct Integral {
  double value = 0.0;
  double stderr_value = 0.0;
  bool exact = false;
};

Integral term_integral(const AdmissibleMatrix& d, const RegionFamily& regions,
                       std::int64_t mc_budget, std::uint64_t mc_seed);

// Exact rational main terms -------------------------------------------------

/// Joint moment of a Poisson process with intensity lambda at levels V:
/// sum over set partitions P of lambda^{#P} prod_{B in P} V_{min B}.
Rat poisson_joint_moment(const Rat& lambda, const std::vector<Rat>& volumes);

/// k-th raw moment of a Poisson(lambda * v) count via Stirling numbers;
/// an independent check of the partition sum at equal levels.
Rat poisson_raw_moment_stirling(const Rat& lambda, const Rat& v, int k);

/// Main term of the affine joint moment via main-family enumeration; equals
/// poisson_joint_moment(1, V) exactly.
Rat affine_main_term(int k, const std::vector<Rat>& volumes);

/// Congruence main term; q >= 3 matches the affine value, q = 2 under the
/// half-count normalization equals poisson_joint_moment(1/2, V). The q = 2
/// evaluation requires symmetric regions (volumes here are of symmetric
/// balls; the flag mirrors the caller's region family).
Rat congruence_main_term(int k, const std::vector<Rat>& volumes, std::int64_t q,
                         bool symmetric = true);

// Truncated full formulas ----------------------------------------------------

MomentEval affine_moment(int k, int d, const RegionFamily& regions, const Truncation& trunc);

MomentEval congruence_moment(int k, int d, std::int64_t q, const RegionFamily& regions,
                             const Truncation& trunc);

/// Limit of the mixed centered moments: prod c_i^{k_i/2} (k_i - 1)!! when
/// all k_i are even, zero otherwise.
Rat centered_moment_limit(const std::vector<Rat>& c, const std::vector<int>& kvec);

MomentEval centered_moment_finite(int k, int d, const RegionFamily& regions,
                                  const Truncation& trunc, CenteredFamily family,
                                  std::int64_t q = 0);

}  // namespace rogers
