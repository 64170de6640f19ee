#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "rogers/lifts.hpp"
#include "rogers/partition.hpp"
#include "rogers/rng.hpp"

using namespace rogers;

TEST_CASE("affine lift spec examples") {
  auto d1 = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto l1 = affine_lift(d1);
  CHECK(l1.matrix.entries == IntMatrix(3, 2, {1, 0, 0, 1, 0, 1}));

  auto d2 = require_admissible(IntMatrix::column_vec({1, 0}), 1);
  CHECK(affine_lift(d2).matrix.entries == IntMatrix(3, 2, {1, 0, 0, 1, 1, 0}));

  auto d3 = require_admissible(IntMatrix::column_vec({1}), 1);
  CHECK(affine_lift(d3).matrix.entries == IntMatrix::identity(2));
}

TEST_CASE("affine lift intermediate structure") {
  auto d = require_admissible(IntMatrix(3, 2, {1, 0, 0, 1, 2, -1}), 1);
  auto lift = affine_lift(d);
  // D' has first row (u,0,...,0), first column u, source in the block.
  CHECK(lift.intermediate(0, 0) == 1);
  for (int j = 1; j < lift.intermediate.cols(); ++j) CHECK(lift.intermediate(0, j) == 0);
  for (int i = 1; i < lift.intermediate.rows(); ++i) {
    CHECK(lift.intermediate(i, 0) == 1);
    for (int j = 1; j < lift.intermediate.cols(); ++j)
      CHECK(lift.intermediate(i, j) == d.entries(i - 1, j - 1));
  }
}

TEST_CASE("lift count identity N(~D', u) = u N(D, u)") {
  for (int ksrc = 1; ksrc <= 3; ++ksrc) {
    for (int r = 1; r <= ksrc; ++r) {
      for (std::int64_t u = 1; u <= 3; ++u) {
        for (auto& d : enumerate_admissible(ksrc, r, u, 3)) {
          auto lift = affine_lift(d);
          CHECK(count_N(lift.matrix) == Int(u) * count_N(d));
        }
      }
    }
  }
}

TEST_CASE("quotient reps spec examples") {
  // D = (1,1)^T, u = 1: subgroup {(m, m)}, canonical_rep(a, b) = (0, b - a).
  auto d = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto reps = quotient_reps(d);
  for (std::int64_t a = -4; a <= 4; ++a)
    for (std::int64_t b = -4; b <= 4; ++b)
      CHECK(reps.canonical_rep({a, b}) == std::vector<std::int64_t>{0, b - a});

  // Identity: subgroup = Z^k, canonical rep identically 0.
  auto idm = require_admissible(IntMatrix::identity(3), 1);
  auto reps_id = quotient_reps(idm);
  CHECK(reps_id.canonical_rep({5, -2, 7}) == std::vector<std::int64_t>{0, 0, 0});

  // D = (2,1)^T, u = 2: Lambda_D = 2Z, subgroup {(2m, m)}.
  auto d21 = require_admissible(IntMatrix::column_vec({2, 1}), 2);
  auto reps21 = quotient_reps(d21);
  // The subgroup is generated by (2,1): reduce a into [0,2).
  CHECK(reps21.canonical_rep({2, 1}) == std::vector<std::int64_t>{0, 0});
  CHECK(reps21.canonical_rep({3, 0}) == std::vector<std::int64_t>{1, -1});
  CHECK(reps21.is_representative({1, 5}));
}

TEST_CASE("canonical_rep is a retraction with lattice-coset fibers") {
  rng::Xoshiro256ss gen(99);
  for (auto [k, r, u] : {std::tuple{3, 2, 1}, std::tuple{3, 1, 2}, std::tuple{4, 2, 2}}) {
    auto fam = enumerate_admissible(k, r, u, 2);
    for (size_t fi = 0; fi < fam.size(); fi += 3) {
      auto& d = fam[fi];
      auto reps = quotient_reps(d);
      // Every column of (D/u) * lambda_basis is integral.
      for (int j = 0; j < d.r(); ++j)
        for (int i = 0; i < d.k(); ++i) {
          std::int64_t s = 0;
          for (int t = 0; t < d.r(); ++t) s += d.entries(i, t) * reps.lambda_basis(t, j);
          CHECK(s % d.u == 0);
        }
      for (int t = 0; t < 10000; ++t) {
        std::vector<std::int64_t> v(static_cast<size_t>(k));
        for (auto& x : v) x = static_cast<std::int64_t>(rng::uniform_below(gen, 41)) - 20;
        auto rep = reps.canonical_rep(v);
        CHECK(reps.canonical_rep(rep) == rep);
        // v - rep lies in the subgroup spanned by the HNF columns.
        std::vector<std::int64_t> diff(v.size());
        for (size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - rep[i];
        CHECK(reps.canonical_rep(diff) == std::vector<std::int64_t>(v.size(), 0));
      }
    }
  }
}

TEST_CASE("convention block handling: zero rows free, isolated pivot rows zeroed") {
  // Rows 0, 1 are isolated pivots; row 2 is a zero row of D.
  auto d = require_admissible(IntMatrix(3, 2, {1, 0, 0, 1, 0, 0}), 1);
  auto reps = quotient_reps(d);
  // Rows 0 and 1 are isolated pivots (columns e_1, e_2): coordinates zeroed.
  auto rep = reps.canonical_rep({7, -3, 9});
  CHECK(rep[0] == 0);
  CHECK(rep[1] == 0);
  CHECK(rep[2] == 9);  // zero row of D passes through unchanged
}

TEST_CASE("n_sub_d spec examples") {
  auto d = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto reps = quotient_reps(d);
  auto r = n_sub_d(d, reps, {0, 1}, 1, 3, 4, 200);
  CHECK(r.value == Rat(1));
  CHECK(r.tail_bound < 1e-5);

  // l = 0 branch.
  auto r0 = n_sub_d(d, reps, {0, 0}, 1, 3, 4, 100);
  CHECK(r0.value == Rat(1));

  CHECK_THROWS_AS(n_sub_d(d, reps, {0, 1}, 1, 3, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(n_sub_d(d, reps, {0, 1}, 3, 3, 4, 100), std::invalid_argument);
}

TEST_CASE("n_sub_d normalizer matches zeta Euler factors") {
  // Direct truncated summation against zeta(d) prod_{p | q} (1 - p^-d).
  for (auto [q, dim] : {std::pair{3, 4}, std::pair{2, 5}, std::pair{6, 4}}) {
    double direct = 0.0;
    for (std::int64_t e = 1; e <= 40000; ++e)
      if (std::gcd(e, static_cast<std::int64_t>(q)) == 1) direct += std::pow(e, -dim);
    double closed = std::riemann_zeta(static_cast<double>(dim));
    for (std::int64_t p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      bool prime = true;
      for (std::int64_t f = 2; f * f <= p; ++f)
        if (p % f == 0) prime = false;
      if (prime) closed *= 1.0 - std::pow(static_cast<double>(p), -dim);
    }
    CHECK(direct == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("n_sub_d value stays in [0,1] and counts membership failures monotonically") {
  auto d = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto reps = quotient_reps(d);
  for (std::int64_t c = 1; c <= 5; ++c) {
    auto r = n_sub_d(d, reps, {0, c}, 1, 3, 5, 100);
    CHECK(r.value >= 0);
    CHECK(r.value <= 1);
  }
}

TEST_CASE("congruence lift spec examples") {
  // q=3, t=1, u=1, D=(1,1)^T, l=(0,1): ~D' = [[1,0],[0,1],[3,1]], coefficient 1.
  auto d = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto term = congruence_lift(d, {0, 1}, 1, 3, 4);
  CHECK(term.matrix.entries == IntMatrix(3, 2, {1, 0, 0, 1, 3, 1}));
  CHECK(term.coefficient == Rat(1));
  CHECK(term.taus == std::vector<Rat>{Rat(1), Rat(4)});

  // l = 0 branch: coefficient N(D,u)^d / u^{dr}.
  auto term0 = congruence_lift(d, {0, 0}, 1, 3, 4);
  CHECK(term0.coefficient == Rat(1));
  CHECK(term0.matrix.entries == IntMatrix(3, 2, {1, 0, 0, 1, 1, 1}));

  // The corollary pattern: lift of [[1],[1]] with l = 0 is [[1,0],[0,1],[0,1]].
  auto dsrc = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto pattern = congruence_lift(dsrc, {0, 0}, 1, 3, 4);
  CHECK(pattern.coefficient == Rat(1));

  CHECK_THROWS_AS(congruence_lift(d, {1, 1}, 1, 3, 4), std::invalid_argument);
}

TEST_CASE("congruence lift with non-integral taus keeps integral matrices") {
  auto d = require_admissible(IntMatrix::column_vec({1, 1}), 1);
  auto term = congruence_lift(d, {0, 1}, 2, 3, 5);
  CHECK(term.u0 == 2);
  CHECK(term.matrix.u == 2);
  for (int i = 0; i < term.matrix.k(); ++i)
    CHECK(term.matrix.entries.nonzeros_in_row(i) >= 1);
}

TEST_CASE("pattern matrices lift with coefficient exactly one") {
  // Every partition matrix with first row (1,0,...,0), one unit entry per
  // row: reconstruct via the l = 0 lift of its minor (q >= 3).
  for (int k = 2; k <= 4; ++k) {
    for (auto& p : enumerate_partitions(k)) {
      auto pat = partition_to_matrix(p);
      if (pat.r() < 2) continue;
      IntMatrix minor(k - 1, pat.r() - 1);
      for (int i = 1; i < k; ++i)
        for (int j = 1; j < pat.r(); ++j) minor(i - 1, j - 1) = pat.entries(i, j);
      auto src = require_admissible(minor, 1);
      auto term = congruence_lift(src, std::vector<std::int64_t>(k - 1, 0), 1, 3, 5);
      CHECK(term.matrix.entries == pat.entries);
      CHECK(term.coefficient == Rat(1));
    }
  }
}

TEST_CASE("q=2 signed pattern matrices lift with coefficient one") {
  // Signs on non-minima rows; l_i = (s_i - 1)/2 realizes the sign.
  Partition p = normalize_partition({{0, 2}, {1}});
  auto pat = partition_to_matrix_signed(p, {1, 1, -1});
  IntMatrix minor(2, 1);
  for (int i = 1; i < 3; ++i) minor(i - 1, 0) = pat.entries(i, 1);
  auto src = require_admissible(minor, 1);
  std::vector<std::int64_t> ell(2, 0);
  for (int i = 1; i < 3; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < pat.r(); ++j) s += pat.entries(i, j);
    ell[i - 1] = (s - 1) / 2;
  }
  auto term = congruence_lift(src, ell, 1, 2, 5);
  CHECK(term.matrix.entries == pat.entries);
  CHECK(term.coefficient == Rat(1));
}

TEST_CASE("rank-one congruence family spec examples") {
  auto terms = enumerate_congruence_rank1(2, 3, 1, 1, 4);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].matrix.entries == IntMatrix::column_vec({1, -2}));
  CHECK(terms[1].matrix.entries == IntMatrix::column_vec({1, 1}));
  CHECK(terms[2].matrix.entries == IntMatrix::column_vec({1, 4}));
  for (auto& t : terms) CHECK(t.coefficient == Rat(1));

  auto q2 = enumerate_congruence_rank1(2, 2, 1, 1, 4);
  bool found_neg = false;
  for (auto& t : q2)
    if (t.matrix.entries == IntMatrix::column_vec({1, -1})) found_neg = true;
  CHECK(found_neg);

  // gcd(t, q) != 1 excluded: t = 2, q = 2 contributes nothing.
  for (auto& t : enumerate_congruence_rank1(2, 2, 2, 2, 4)) CHECK(t.t % 2 == 1);

  // Coefficient 1/t^d for t = 3, q = 2, d = 4.
  for (auto& t : enumerate_congruence_rank1(2, 2, 3, 1, 4))
    if (t.t == 3) CHECK(t.coefficient == Rat(1, 81));
}
