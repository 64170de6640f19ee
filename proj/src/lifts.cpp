#include "rogers/lifts.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rogers {

// ---------------------------------------------------------------------------
// Affine lifts
// ---------------------------------------------------------------------------

AffineLiftedMatrix affine_lift(const AdmissibleMatrix& source) {
  const int k = source.k() + 1;
  const int m = source.r() + 1;
  const std::int64_t u = source.u;
  IntMatrix dprime(k, m);
  dprime(0, 0) = u;
  for (int i = 1; i < k; ++i) {
    dprime(i, 0) = u;
    for (int j = 1; j < m; ++j) dprime(i, j) = source.entries(i - 1, j - 1);
  }
  IntMatrix tilde = dprime;
  for (int i = 0; i < k; ++i) {
    std::int64_t s = 0;
    for (int j = 1; j < m; ++j) s += dprime(i, j);
    tilde(i, 0) = dprime(i, 0) - s;
  }
  return AffineLiftedMatrix{require_admissible(tilde, u), source, std::move(dprime)};
}

bool is_affine_lift(const AdmissibleMatrix& d) {
  for (int i = 0; i < d.k(); ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < d.r(); ++j) s += d.entries(i, j);
    if (s != d.u) return false;
  }
  return true;
}

std::vector<AffineLiftedMatrix> enumerate_affine_lifts(int k, int m, std::int64_t u,
                                                       std::int64_t entry_bound) {
  if (m < 2 || m > k) throw std::invalid_argument("enumerate_affine_lifts: need 2 <= m <= k");
  std::vector<AffineLiftedMatrix> out;
  // Columns 2..m of ~D' equal the source, so bounded lifts come from bounded
  // sources; only the first column needs the extra filter.
  for (auto& src : enumerate_admissible(k - 1, m - 1, u, entry_bound)) {
    auto lifted = affine_lift(src);
    if (lifted.matrix.entries.max_abs() <= entry_bound) out.push_back(std::move(lifted));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.matrix < b.matrix; });
  return out;
}

// ---------------------------------------------------------------------------
// Quotient representatives
// ---------------------------------------------------------------------------

QuotientReps quotient_reps(const AdmissibleMatrix& d) {
  const int r = d.r();
  const std::int64_t u = d.u;
  // Lambda_D = { l : D l = 0 mod u } = V * diag(u / gcd(s_j, u)) Z^r from the
  // Smith form of D.
  auto snf = smith_normal_form(d.entries);
  IntMatrix lambda(r, r);
  for (int j = 0; j < r; ++j) {
    std::int64_t scale = u / std::gcd(snf.diag[j], u);
    for (int i = 0; i < r; ++i) lambda(i, j) = snf.right(i, j) * scale;
  }
  // Subgroup (D/u) * Lambda_D inside Z^k, generated by integer columns.
  IntMatrix sub(d.k(), r);
  for (int i = 0; i < d.k(); ++i)
    for (int j = 0; j < r; ++j) {
      std::int64_t s = 0;
      for (int t = 0; t < r; ++t) s += d.entries(i, t) * lambda(t, j);
      if (s % u != 0) throw std::logic_error("quotient_reps: lambda basis is not integral");
      sub(i, j) = s / u;
    }
  auto hnf = column_hnf(sub);
  auto pivots = hnf.pivot_rows;
  return QuotientReps{d, std::move(lambda), std::move(hnf), std::move(pivots)};
}

std::vector<std::int64_t> QuotientReps::canonical_rep(std::vector<std::int64_t> v) const {
  return hnf_reduce(hnf, std::move(v));
}

bool QuotientReps::is_representative(const std::vector<std::int64_t>& v) const {
  return canonical_rep(v) == v;
}

// ---------------------------------------------------------------------------
// N_D(l, t) series
// ---------------------------------------------------------------------------

NSubD n_sub_d(const AdmissibleMatrix& d, const QuotientReps& reps,
              const std::vector<std::int64_t>& ell, std::int64_t t, std::int64_t q, int dim,
              std::int64_t e_max) {
  if (dim < 3) throw std::invalid_argument("n_sub_d: dimension must be >= 3");
  if (std::gcd(t, q) != 1) throw std::invalid_argument("n_sub_d: gcd(t, q) must be 1");
  if (static_cast<int>(ell.size()) != d.k())
    throw std::invalid_argument("n_sub_d: l has wrong length");
  bool zero = std::all_of(ell.begin(), ell.end(), [](auto x) { return x == 0; });
  if (zero) return NSubD{Rat(1), 0.0};

  std::int64_t g = t;
  for (auto x : ell) g = std::gcd(g, std::abs(x));
  if (g != 1) throw std::invalid_argument("n_sub_d: gcd(l, t) must be 1");

  Rat num = 0, den = 0;
  std::vector<std::int64_t> scaled(ell.size());
  for (std::int64_t e = 1; e <= e_max; ++e) {
    if (std::gcd(e, q) != 1) continue;
    Rat term(Int(1), int_pow(Int(e), static_cast<unsigned>(dim)));
    den += term;
    for (size_t i = 0; i < ell.size(); ++i) scaled[i] = e * ell[i];
    if (reps.is_representative(scaled)) num += term;
  }
  // Remaining numerator mass is at most the integral tail of e^-dim.
  double tail = std::pow(static_cast<double>(e_max), 1.0 - dim) / (dim - 1);
  double den_d = to_double(den);
  return NSubD{num / den, tail / den_d};
}

// ---------------------------------------------------------------------------
// Congruence lifts
// ---------------------------------------------------------------------------

CongruenceTerm congruence_lift(const AdmissibleMatrix& d, const std::vector<std::int64_t>& ell,
                               std::int64_t t, std::int64_t q, int dim, std::int64_t e_max) {
  const int k = d.k() + 1;
  const int m = d.r() + 1;
  if (std::gcd(t, q) != 1) throw std::invalid_argument("congruence_lift: gcd(t, q) must be 1");
  if (static_cast<int>(ell.size()) != d.k())
    throw std::invalid_argument("congruence_lift: l has wrong length");

  bool zero = std::all_of(ell.begin(), ell.end(), [](auto x) { return x == 0; });
  auto reps = quotient_reps(d);
  if (!zero) {
    std::int64_t g = t;
    for (auto x : ell) g = std::gcd(g, std::abs(x));
    if (g != 1) throw std::invalid_argument("congruence_lift: gcd(l, t) must be 1");
    if (!reps.is_representative(ell))
      throw std::invalid_argument("congruence_lift: l is not a canonical representative");
  }

  const std::int64_t u0 = std::lcm(d.u, t);
  std::vector<Rat> taus(d.k());
  for (int i = 0; i < d.k(); ++i) taus[i] = Rat(ell[i] * q + t, t);

  // D' = u0 * [[1 | 0], [tau | D/u]], assembled exactly.
  std::vector<std::vector<Rat>> dprime(k, std::vector<Rat>(m, Rat(0)));
  dprime[0][0] = u0;
  for (int i = 1; i < k; ++i) {
    dprime[i][0] = Rat(u0) * taus[i - 1];
    for (int j = 1; j < m; ++j) dprime[i][j] = Rat(u0 * d.entries(i - 1, j - 1), d.u);
  }
  // ~D': subtract tau at each source pivot row times that pivot's column.
  std::vector<Rat> col0(k);
  for (int i = 0; i < k; ++i) col0[i] = dprime[i][0];
  for (int j = 1; j < m; ++j) {
    const Rat& tau_piv = taus[d.pivot_rows[j - 1]];
    for (int i = 0; i < k; ++i) col0[i] -= tau_piv * dprime[i][j];
  }
  IntMatrix tilde(k, m);
  for (int i = 0; i < k; ++i) {
    if (denominator(col0[i]) != 1)
      throw std::logic_error("congruence_lift: non-integral tilde column");
    tilde(i, 0) = static_cast<std::int64_t>(numerator(col0[i]).convert_to<long long>());
    for (int j = 1; j < m; ++j) {
      if (denominator(dprime[i][j]) != 1)
        throw std::logic_error("congruence_lift: non-integral block");
      tilde(i, j) = static_cast<std::int64_t>(numerator(dprime[i][j]).convert_to<long long>());
    }
  }
  for (int i = 0; i < k; ++i)
    if (tilde.nonzeros_in_row(i) == 0) throw std::logic_error("congruence_lift: zero row");

  CongruenceTerm term;
  term.matrix = require_admissible(tilde, u0);
  term.u0 = u0;
  term.t = t;
  term.u = d.u;
  term.q = q;
  term.ell = ell;
  term.taus = taus;
  term.rank = m;

  Rat base(int_pow(count_N(d), static_cast<unsigned>(dim)),
           int_pow(Int(d.u), static_cast<unsigned>(dim * d.r())));
  if (zero) {
    term.coefficient = base;
    term.coeff_tail = 0.0;
  } else {
    auto nd = n_sub_d(d, reps, ell, t, q, dim, e_max);
    Rat tpow(Int(1), int_pow(Int(t), static_cast<unsigned>(dim)));
    term.coefficient = nd.value * tpow * base;
    term.coeff_tail = nd.tail_bound * to_double(tpow * base);
  }
  return term;
}

std::vector<CongruenceTerm> enumerate_congruence_rank1(int k, std::int64_t q, std::int64_t t_max,
                                                       std::int64_t ell_bound, int dim) {
  if (q < 2) throw std::invalid_argument("enumerate_congruence_rank1: q >= 2 required");
  if (k < 1) throw std::invalid_argument("enumerate_congruence_rank1: k >= 1 required");
  std::vector<CongruenceTerm> out;
  std::vector<std::int64_t> ell(static_cast<size_t>(k) - 1, -ell_bound);
  for (std::int64_t t = 1; t <= t_max; ++t) {
    if (std::gcd(t, q) != 1) continue;
    std::fill(ell.begin(), ell.end(), -ell_bound);
    while (true) {
      std::int64_t g = t;
      for (auto x : ell) g = std::gcd(g, std::abs(x));
      if (g == 1) {
        IntMatrix col(k, 1);
        col(0, 0) = t;
        for (int i = 1; i < k; ++i) col(i, 0) = ell[i - 1] * q + t;
        CongruenceTerm term;
        term.matrix = require_admissible(col, t);
        term.u0 = t;
        term.t = t;
        term.u = 1;
        term.q = q;
        term.ell = ell;
        term.taus.resize(ell.size());
        for (size_t i = 0; i < ell.size(); ++i) term.taus[i] = Rat(ell[i] * q + t, t);
        term.coefficient = Rat(Int(1), int_pow(Int(t), static_cast<unsigned>(dim)));
        term.coeff_tail = 0.0;
        term.rank = 1;
        out.push_back(std::move(term));
      }
      size_t i = 0;
      for (; i < ell.size(); ++i) {
        if (ell[i] < ell_bound) {
          ++ell[i];
          break;
        }
        ell[i] = -ell_bound;
      }
      if (i == ell.size()) break;
    }
  }
  return out;
}

std::vector<CongruenceTerm> enumerate_congruence_lifts(int k, int m, std::int64_t q,
                                                       std::int64_t u_max, std::int64_t t_max,
                                                       std::int64_t ell_bound,
                                                       std::int64_t entry_bound, int dim,
                                                       std::int64_t e_max) {
  if (m < 2 || m > k) throw std::invalid_argument("enumerate_congruence_lifts: need 2 <= m <= k");
  std::vector<CongruenceTerm> out;
  for (std::int64_t u = 1; u <= u_max; ++u) {
    std::int64_t src_bound = std::max(u, entry_bound);
    for (auto& src : enumerate_admissible(k - 1, m - 1, u, src_bound)) {
      auto reps = quotient_reps(src);
      for (std::int64_t t = 1; t <= t_max; ++t) {
        if (std::gcd(t, q) != 1) continue;
        std::vector<std::int64_t> ell(static_cast<size_t>(k) - 1, -ell_bound);
        while (true) {
          bool zero = std::all_of(ell.begin(), ell.end(), [](auto x) { return x == 0; });
          bool usable = zero ? (t == 1) : true;  // l = 0 belongs to the t = 1 branch only
          if (usable && !zero) {
            std::int64_t g = t;
            for (auto x : ell) g = std::gcd(g, std::abs(x));
            usable = (g == 1) && reps.is_representative(ell);
          }
          if (usable) {
            auto term = congruence_lift(src, ell, t, q, dim, e_max);
            if (term.matrix.entries.max_abs() <= entry_bound) out.push_back(std::move(term));
          }
          size_t i = 0;
          for (; i < ell.size(); ++i) {
            if (ell[i] < ell_bound) {
              ++ell[i];
              break;
            }
            ell[i] = -ell_bound;
          }
          if (i == ell.size()) break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.matrix < b.matrix) return true;
    if (b.matrix < a.matrix) return false;
    return std::tie(a.t, a.u) < std::tie(b.t, b.u);
  });
  return out;
}

}  // namespace rogers
