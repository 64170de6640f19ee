#pragma once

#include <optional>
#include <vector>

#include "rogers/admissible.hpp"
#include "rogers/intlinalg.hpp"
#include "rogers/rational.hpp"

namespace rogers {

// ---------------------------------------------------------------------------
// Affine lifts
// ---------------------------------------------------------------------------

/// The lift D -> D' -> ~D' taking a (k-1) x r source to a k x (r+1) member
/// of the affine family: D' has first row (u,0,...,0), first column all u and
/// the source in the lower-right block; ~D' replaces the first column by
/// column 1 minus the sum of the others.
struct AffineLiftedMatrix {
  AdmissibleMatrix matrix;        // ~D'
  AdmissibleMatrix source;        // D
  IntMatrix intermediate;         // D'
};

AffineLiftedMatrix affine_lift(const AdmissibleMatrix& source);

/// All ~D' in A^k_{m,u} whose entries are bounded by entry_bound.
std::vector<AffineLiftedMatrix> enumerate_affine_lifts(int k, int m, std::int64_t u,
                                                       std::int64_t entry_bound);

/// Membership test: an admissible matrix is an affine lift iff its columns
/// sum to u * (1,...,1)^T (the first row condition is then automatic).
bool is_affine_lift(const AdmissibleMatrix& d);

// ---------------------------------------------------------------------------
// Congruence quotient machinery
// ---------------------------------------------------------------------------

/// Canonical coset representatives of Z^k modulo (D/u) Lambda_D, where
/// Lambda_D = { l in Z^r : (D/u) l integral }. The transversal is the
/// Hermite-normal-form reduction, which keeps zero-row coordinates free and
/// sends isolated-pivot-row coordinates to zero (the paper's convention).
struct QuotientReps {
  AdmissibleMatrix source;
  IntMatrix lambda_basis;  // r x r, columns generate Lambda_D
  ColumnHNF hnf;           // column HNF of (D/u) * lambda_basis
  std::vector<int> pivot_coords;

  std::vector<std::int64_t> canonical_rep(std::vector<std::int64_t> v) const;
  bool is_representative(const std::vector<std::int64_t>& v) const;
};

QuotientReps quotient_reps(const AdmissibleMatrix& d);

/// Truncated evaluation of N_D(l, t): the e-series over e <= e_max coprime
/// to q restricted to e*l in the canonical representative set, normalized by
/// the matching truncated full series. tail_bound is the analytic remainder
/// of the numerator series divided by the same normalizer.
struct NSubD {
  Rat value;
  double tail_bound;
};

NSubD n_sub_d(const AdmissibleMatrix& d, const QuotientReps& reps,
              const std::vector<std::int64_t>& ell, std::int64_t t, std::int64_t q, int dim,
              std::int64_t e_max);

// ---------------------------------------------------------------------------
// Congruence lifts
// ---------------------------------------------------------------------------

/// One summand of the congruence moment formula: ~D' built from
/// (D, l, t, q) with u0 = lcm(u, t) and tau_i = (l_i q + t)/t, together with
/// its coefficient N'(~D', u0). For rank-one columns the coefficient is
/// exactly 1/t^d; otherwise it carries the truncated N_D(l, t) series.
struct CongruenceTerm {
  AdmissibleMatrix matrix;  // ~D', k x m
  std::int64_t u0 = 1;
  std::int64_t t = 1;
  std::int64_t u = 1;       // source denominator
  std::int64_t q = 1;
  std::vector<std::int64_t> ell;
  std::vector<Rat> taus;    // tau_1..tau_{k-1}
  Rat coefficient;          // N'(~D', u0), exact or truncated
  double coeff_tail = 0.0;  // series tail when truncated
  int rank = 1;             // m
};

CongruenceTerm congruence_lift(const AdmissibleMatrix& d, const std::vector<std::int64_t>& ell,
                               std::int64_t t, std::int64_t q, int dim,
                               std::int64_t e_max = 64);

/// The rank-one family C^k_{1,t}: columns (t, l_1 q + t, ..., l_{k-1} q + t)
/// with gcd(t, q) = 1 and gcd(l, t) = 1, coefficient 1/t^d.
std::vector<CongruenceTerm> enumerate_congruence_rank1(int k, std::int64_t q, std::int64_t t_max,
                                                       std::int64_t ell_bound, int dim);

/// Windowed enumeration of the multi-column congruence families C^k_{m,u0}
/// for m >= 2: all lifts from sources with u <= u_max, t <= t_max,
/// |l_i| <= ell_bound, keeping terms whose final entries are within
/// entry_bound.
std::vector<CongruenceTerm> enumerate_congruence_lifts(int k, int m, std::int64_t q,
                                                       std::int64_t u_max, std::int64_t t_max,
                                                       std::int64_t ell_bound,
                                                       std::int64_t entry_bound, int dim,
                                                       std::int64_t e_max = 64);

}  // namespace rogers
