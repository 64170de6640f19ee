#include "rogers/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rogers {

nlohmann::json Truncation::to_json() const {
  return nlohmann::json{{"u_max", u_max},   {"entry_bound", entry_bound}, {"t_max", t_max},
                        {"ell_max", ell_max}, {"e_max", e_max},           {"mc_budget", mc_budget},
                        {"main_only", main_only}};
}

nlohmann::json MomentEval::to_json() const {
  nlohmann::json ts = nlohmann::json::array();
  for (auto& t : terms) {
    ts.push_back(nlohmann::json{{"matrix", t.matrix},
                                {"class", t.term_class},
                                {"coefficient", t.coefficient},
                                {"integral", t.integral},
                                {"integral_stderr", t.integral_stderr},
                                {"contribution", t.contribution},
                                {"in_window", t.in_window}});
  }
  return nlohmann::json{
      {"value", value}, {"residual", residual}, {"stat_error", stat_error}, {"terms", ts}};
}

// ---------------------------------------------------------------------------
// Term integrals
// ---------------------------------------------------------------------------

namespace {

bool one_nonzero_per_row(const IntMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    if (m.nonzeros_in_row(i) != 1) return false;
  return true;
}

Rat exact_row_scaled_integral(const AdmissibleMatrix& d, const RegionFamily& regions) {
  // Every row i reads rho_i(c_i y_{j(i)} / u), so the integral factors over
  // columns into scaled shell intersections; |u/c|^d scales volume.
  Rat total = 1;
  for (int j = 0; j < d.r(); ++j) {
    std::vector<Shell> shells;
    std::vector<Rat> scales;
    for (int i = 0; i < d.k(); ++i) {
      std::int64_t c = d.entries(i, j);
      if (c == 0) continue;
      shells.push_back(regions.shells[i]);
      Rat scale = rat_pow(Rat(d.u, std::abs(c)), static_cast<unsigned>(regions.d));
      scales.push_back(scale);
    }
    total *= scaled_shell_intersection_volume(shells, scales);
    if (total == 0) return total;
  }
  return total;
}

}  // namespace

Integral term_integral(const AdmissibleMatrix& dmat, const RegionFamily& regions,
                       std::int64_t mc_budget, std::uint64_t mc_seed) {
  if (regions.k() != dmat.k())
    throw std::invalid_argument("term_integral: region count must match row count");
  if (one_nonzero_per_row(dmat.entries)) {
    return Integral{to_double(exact_row_scaled_integral(dmat, regions)), 0.0, true};
  }
  if (mc_budget <= 0)
    throw std::invalid_argument("term_integral: mc_budget required for this matrix");

  const int dim = regions.d;
  const int m = dmat.r();
  auto gen = rng::substream(mc_seed ^ fnv1a_hash(dmat.entries), static_cast<std::uint64_t>(dmat.u));

  double weight = 1.0;
  for (int j = 0; j < m; ++j) weight *= to_double(regions.volume(dmat.pivot_rows[j]));

  std::vector<bool> is_pivot(dmat.k(), false);
  for (int p : dmat.pivot_rows) is_pivot[p] = true;

  std::vector<std::vector<double>> y(m);
  double hits = 0.0;
  for (std::int64_t s = 0; s < mc_budget; ++s) {
    for (int j = 0; j < m; ++j) {
      int p = dmat.pivot_rows[j];
      y[j] = rng::uniform_in_shell(gen, dim, regions.radius_lo(p), regions.radius_hi(p));
    }
    bool ok = true;
    for (int i = 0; i < dmat.k() && ok; ++i) {
      if (is_pivot[i]) continue;
      double norm2 = 0.0;
      for (int c = 0; c < dim; ++c) {
        double v = 0.0;
        for (int j = 0; j < m; ++j)
          if (dmat.entries(i, j) != 0)
            v += static_cast<double>(dmat.entries(i, j)) * y[j][c];
        v /= static_cast<double>(dmat.u);
        norm2 += v * v;
      }
      double r = std::sqrt(norm2);
      ok = r <= regions.radius_hi(i) && r >= regions.radius_lo(i);
    }
    if (ok) hits += 1.0;
  }
  double p = hits / static_cast<double>(mc_budget);
  double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(mc_budget));
  return Integral{weight * p, weight * se, false};
}

// ---------------------------------------------------------------------------
// Exact main terms
// ---------------------------------------------------------------------------

Rat poisson_joint_moment(const Rat& lambda, const std::vector<Rat>& volumes) {
  const int k = static_cast<int>(volumes.size());
  if (k < 1) throw std::invalid_argument("poisson_joint_moment: need at least one level");
  for (int i = 1; i < k; ++i)
    if (volumes[i] < volumes[i - 1])
      throw std::invalid_argument("poisson_joint_moment: volumes must be nondecreasing");
  Rat total = 0;
  for (auto& p : enumerate_partitions(k)) {
    Rat term = rat_pow(lambda, static_cast<unsigned>(p.blocks.size()));
    for (auto& b : p.blocks) term *= volumes[b.front()];
    total += term;
  }
  return total;
}

Rat poisson_raw_moment_stirling(const Rat& lambda, const Rat& v, int k) {
  // E[N^k] = sum_j S(k, j) (lambda v)^j with Stirling numbers of the second kind.
  std::vector<std::vector<Int>> s(k + 1, std::vector<Int>(k + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= k; ++n)
    for (int j = 1; j <= n; ++j) s[n][j] = s[n - 1][j - 1] + Int(j) * s[n - 1][j];
  Rat mean = lambda * v;
  Rat total = 0;
  for (int j = 0; j <= k; ++j) total += Rat(s[k][j]) * rat_pow(mean, static_cast<unsigned>(j));
  return total;
}

Rat affine_main_term(int k, const std::vector<Rat>& volumes) {
  if (static_cast<int>(volumes.size()) != k)
    throw std::invalid_argument("affine_main_term: need k volumes");
  Rat total = 0;
  for (auto& m : enumerate_main_family(k, MainFamily::Affine)) {
    Rat term = 1;
    for (int p : m.pivot_rows) term *= volumes[p];
    total += term;
  }
  return total;
}

Rat congruence_main_term(int k, const std::vector<Rat>& volumes, std::int64_t q, bool symmetric) {
  if (static_cast<int>(volumes.size()) != k)
    throw std::invalid_argument("congruence_main_term: need k volumes");
  if (q < 2) throw std::invalid_argument("congruence_main_term: q >= 2 required");
  if (q == 2 && !symmetric)
    throw std::invalid_argument("congruence_main_term: q = 2 requires symmetric regions");
  if (q >= 3) return affine_main_term(k, volumes);
  // q = 2 under the half-count normalization: the signed family counts
  // 2^{k - #alpha} per division, scaled by 2^{-k}.
  Rat total = 0;
  for (auto& m : enumerate_main_family(k, MainFamily::CongruenceQ2)) {
    Rat term = 1;
    for (int p : m.pivot_rows) term *= volumes[p];
    total += term;
  }
  return total / rat_pow(Rat(2), static_cast<unsigned>(k));
}

// ---------------------------------------------------------------------------
// Truncated formula evaluation
// ---------------------------------------------------------------------------

namespace {

struct Accumulator {
  MomentEval eval;

  void take(const AdmissibleMatrix& m, const Rat& coefficient, double coeff_tail,
            const RegionFamily& regions, const Truncation& trunc, bool in_window) {
    TermClass cls = classify(m);
    if (trunc.main_only && cls != TermClass::Main) in_window = false;
    double coef = to_double(coefficient);

    Integral integral;
    bool bounded_only = false;
    if (one_nonzero_per_row(m.entries) || trunc.mc_budget > 0) {
      integral = term_integral(m, regions, trunc.mc_budget, trunc.mc_seed);
    } else if (!in_window) {
      // Probe-shell term with no sampling budget: bound the integral by the
      // product of the pivot-row volumes.
      double w = 1.0;
      for (int p : m.pivot_rows) w *= to_double(regions.volume(p));
      integral = Integral{w, 0.0, false};
      bounded_only = true;
    } else {
      throw std::invalid_argument("moment evaluation: mc_budget required for a window term");
    }

    double contribution = coef * integral.value;
    TermContribution tc;
    tc.matrix = admissible_to_json(m);
    tc.term_class = term_class_name(cls);
    tc.coefficient = coef;
    tc.integral = integral.value;
    tc.integral_stderr = integral.stderr_value;
    tc.contribution = contribution;
    tc.in_window = in_window;
    if (in_window) {
      eval.value += contribution;
      eval.stat_error = std::hypot(eval.stat_error, coef * integral.stderr_value);
      eval.residual += std::abs(coeff_tail) * integral.value;
    } else {
      eval.residual += std::abs(contribution) + std::abs(coef) * integral.stderr_value;
      (void)bounded_only;
    }
    eval.terms.push_back(std::move(tc));
  }
};

// Majorant of sum over |l|_inf > r_from of the largest volume-scaling factor
// min(1, t/|l_j q + t|)^dim on each sup-norm shell, times the shell count.
double rank1_ell_shell_majorant(int k, int dim, std::int64_t q, std::int64_t t,
                                std::int64_t r_from) {
  double acc = 0.0;
  for (std::int64_t big_r = r_from + 1;; ++big_r) {
    double denom = static_cast<double>(q) * big_r - t;
    double factor = denom <= 0 ? 1.0 : std::min(1.0, std::pow(t / denom, dim));
    double shell_count = 2.0 * (k - 1) * std::pow(2.0 * big_r + 1, std::max(k - 2, 0));
    double term = shell_count * factor;
    acc += term;
    if ((denom > 0 && term < 1e-18 * (acc + 1e-300)) || big_r > r_from + 4000000) {
      // Geometric-style remainder for the truncated majorant itself.
      acc += term * static_cast<double>(big_r) / std::max(dim - k, 1);
      break;
    }
  }
  return acc;
}

// Analytic tail of the rank-one congruence series over t > t_max (all l).
double rank1_tail_t(int k, int dim, std::int64_t q, std::int64_t t_max, double max_volume) {
  double total = 0.0;
  for (std::int64_t t = t_max + 1;; ++t) {
    if (std::gcd(t, q) == 1) {
      double inner = rank1_ell_shell_majorant(k, dim, q, t, 0) + 1.0;  // + the l = 0 cell
      double per = std::pow(static_cast<double>(t), -dim) * inner;
      total += per;
      if (per < 1e-18 * (total + 1e-300)) {
        total += per * static_cast<double>(t) / std::max(dim - k, 1);
        break;
      }
    }
    if (t > t_max + 4000000) break;
  }
  return max_volume * total;
}

// Analytic tail over |l|_inf > ell_max for t <= t_max.
double rank1_tail_ell(int k, int dim, std::int64_t q, std::int64_t t_max, std::int64_t ell_max,
                      double max_volume) {
  double total = 0.0;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    if (std::gcd(t, q) != 1) continue;
    total += std::pow(static_cast<double>(t), -dim) *
             rank1_ell_shell_majorant(k, dim, q, t, ell_max);
  }
  return max_volume * total;
}

}  // namespace

MomentEval affine_moment(int k, int d, const RegionFamily& regions, const Truncation& trunc) {
  if (k < 1) throw std::invalid_argument("affine_moment: k >= 1 required");
  if (k > d) throw std::invalid_argument("affine_moment: requires k <= d");
  if (regions.k() != k) throw std::invalid_argument("affine_moment: need k regions");

  Accumulator acc;
  if (k == 1) {
    // The displayed product and diagonal terms coincide at k = 1; the proof's
    // change of variables yields the single integral.
    acc.eval.value = to_double(regions.volume(0));
    return acc.eval;
  }

  Rat product = 1;
  for (int i = 0; i < k; ++i) product *= regions.volume(i);
  std::vector<Shell> shells = regions.shells;
  std::vector<Rat> ones(shells.size(), Rat(1));
  Rat diagonal = scaled_shell_intersection_volume(shells, ones);
  acc.eval.value = to_double(product + diagonal);

  for (int m = 2; m <= k - 1; ++m) {
    for (std::int64_t u = 1; u <= trunc.u_max + 1; ++u) {
      for (auto& lift : enumerate_affine_lifts(k, m, u, trunc.entry_bound + 1)) {
        bool in_window =
            u <= trunc.u_max && lift.matrix.entries.max_abs() <= trunc.entry_bound;
        Rat coef(int_pow(count_N(lift.matrix), static_cast<unsigned>(d)),
                 int_pow(Int(u), static_cast<unsigned>(d * m)));
        acc.take(lift.matrix, coef, 0.0, regions, trunc, in_window);
      }
    }
  }
  return acc.eval;
}

MomentEval congruence_moment(int k, int d, std::int64_t q, const RegionFamily& regions,
                             const Truncation& trunc) {
  if (d < 3) throw std::invalid_argument("congruence_moment: d >= 3 required");
  if (k < 1 || k > d - 1) throw std::invalid_argument("congruence_moment: requires 1 <= k <= d-1");
  if (q < 2) throw std::invalid_argument("congruence_moment: q >= 2 required");
  if (q == 2 && !regions.symmetric)
    throw std::invalid_argument("congruence_moment: q = 2 requires symmetric regions");
  if (regions.k() != k) throw std::invalid_argument("congruence_moment: need k regions");

  Accumulator acc;
  Rat product = 1;
  for (int i = 0; i < k; ++i) product *= regions.volume(i);
  acc.eval.value = to_double(product);
  if (k == 1) return acc.eval;  // the m-sum is empty

  double max_volume = 0.0;
  for (int i = 0; i < k; ++i) max_volume = std::max(max_volume, to_double(regions.volume(i)));

  // m = 1: the exact rank-one series, truncated with analytic tails.
  for (auto& term : enumerate_congruence_rank1(k, q, trunc.t_max, trunc.ell_max, d)) {
    acc.take(term.matrix, term.coefficient, term.coeff_tail, regions, trunc, true);
  }
  acc.eval.residual += rank1_tail_t(k, d, q, trunc.t_max, max_volume);
  acc.eval.residual += rank1_tail_ell(k, d, q, trunc.t_max, trunc.ell_max, max_volume);

  // m >= 2: windowed lift terms with a one-shell probe margin.
  for (int m = 2; m <= k - 1; ++m) {
    for (auto& term :
         enumerate_congruence_lifts(k, m, q, trunc.u_max + 1, trunc.u_max + 1,
                                    std::min<std::int64_t>(trunc.ell_max, 8),
                                    trunc.entry_bound + 1, d, trunc.e_max)) {
      bool in_window = term.u0 <= trunc.u_max && term.t <= trunc.u_max &&
                       term.matrix.entries.max_abs() <= trunc.entry_bound;
      acc.take(term.matrix, term.coefficient, term.coeff_tail, regions, trunc, in_window);
    }
  }
  return acc.eval;
}

Rat centered_moment_limit(const std::vector<Rat>& c, const std::vector<int>& kvec) {
  if (c.size() != kvec.size())
    throw std::invalid_argument("centered_moment_limit: length mismatch");
  Rat total = 1;
  for (size_t i = 0; i < c.size(); ++i) {
    if (kvec[i] < 1) throw std::invalid_argument("centered_moment_limit: orders must be positive");
    if (kvec[i] % 2 != 0) return Rat(0);
    total *= rat_pow(c[i], static_cast<unsigned>(kvec[i] / 2));
    total *= Rat(double_factorial(kvec[i] - 1));
  }
  return total;
}

MomentEval centered_moment_finite(int k, int d, const RegionFamily& regions,
                                  const Truncation& trunc, CenteredFamily family,
                                  std::int64_t q) {
  if (regions.k() != k) throw std::invalid_argument("centered_moment_finite: need k regions");
  Accumulator acc;
  CenteredWindow window;
  window.ell_bound = std::min<std::int64_t>(trunc.ell_max, 6);
  window.e_max = trunc.e_max;
  for (int n = 1; n <= k - 1; ++n) {
    for (std::int64_t u = 1; u <= trunc.u_max + 1; ++u) {
      auto terms = enumerate_centered(k, n, u, trunc.entry_bound + 1, family, d, q, window);
      for (auto& t : terms) {
        bool in_window = u <= trunc.u_max && t.matrix.entries.max_abs() <= trunc.entry_bound;
        acc.take(t.matrix, t.coefficient, t.coeff_tail, regions, trunc, in_window);
      }
    }
  }
  return acc.eval;
}

}  // namespace rogers
