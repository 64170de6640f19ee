#include "rogers/intlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace rogers {

namespace {

void col_swap(IntMatrix& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void col_negate(IntMatrix& m, int a) {
  for (int i = 0; i < m.rows(); ++i) m(i, a) = -m(i, a);
}

// col_a -= q * col_b
void col_axpy(IntMatrix& m, int a, int b, std::int64_t q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

ColumnHNF column_hnf(const IntMatrix& input) {
  IntMatrix h = input;
  const int k = h.rows(), r = h.cols();
  std::vector<int> pivots;
  int jc = 0;  // next column slot awaiting a pivot
  for (int i = 0; i < k && jc < r; ++i) {
    // Eliminate row i across columns jc..r-1 down to a single gcd entry.
    for (int j = jc + 1; j < r; ++j) {
      while (h(i, j) != 0) {
        if (h(i, jc) == 0) {
          col_swap(h, jc, j);
          continue;
        }
        std::int64_t q = h(i, j) / h(i, jc);
        col_axpy(h, j, jc, q);
        if (h(i, j) != 0) col_swap(h, jc, j);
      }
    }
    if (h(i, jc) == 0) continue;
    if (h(i, jc) < 0) col_negate(h, jc);
    // Reduce earlier columns on this pivot row into [0, pivot).
    for (int j = 0; j < jc; ++j) {
      std::int64_t q = floor_div(h(i, j), h(i, jc));
      col_axpy(h, j, jc, q);
    }
    pivots.push_back(i);
    ++jc;
  }
  if (jc < r) throw std::invalid_argument("column_hnf: matrix does not have full column rank");
  return ColumnHNF{std::move(h), std::move(pivots)};
}

std::vector<std::int64_t> hnf_reduce(const ColumnHNF& hnf, std::vector<std::int64_t> v) {
  const int r = hnf.h.cols();
  if (static_cast<int>(v.size()) != hnf.h.rows())
    throw std::invalid_argument("hnf_reduce: vector length mismatch");
  for (int j = 0; j < r; ++j) {
    int p = hnf.pivot_rows[j];
    std::int64_t q = floor_div(v[p], hnf.h(p, j));
    if (q == 0) continue;
    for (int i = 0; i < hnf.h.rows(); ++i) v[i] -= q * hnf.h(i, j);
  }
  return v;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const int k = a.rows(), r = a.cols();
  IntMatrix v = IntMatrix::identity(r);

  auto row_axpy = [&a](int dst, int src, std::int64_t q) {
    if (q == 0) return;
    for (int j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
  };
  auto col_axpy2 = [&a, &v](int dst, int src, std::int64_t q) {
    col_axpy(a, dst, src, q);
    col_axpy(v, dst, src, q);
  };
  auto col_swap2 = [&a, &v](int x, int y) {
    col_swap(a, x, y);
    col_swap(v, x, y);
  };
  auto col_neg2 = [&a, &v](int x) {
    col_negate(a, x);
    col_negate(v, x);
  };

  std::vector<std::int64_t> diag;
  for (int t = 0; t < r; ++t) {
    // Find a nonzero pivot of minimal absolute value in the working block.
    while (true) {
      int pi = -1, pj = -1;
      std::int64_t best = 0;
      for (int i = t; i < k; ++i)
        for (int j = t; j < r; ++j)
          if (a(i, j) != 0 && (pi < 0 || std::abs(a(i, j)) < best)) {
            pi = i;
            pj = j;
            best = std::abs(a(i, j));
          }
      if (pi < 0) throw std::invalid_argument("smith_normal_form: rank-deficient matrix");
      if (pi != t) {
        for (int j = 0; j < r; ++j) std::swap(a(t, j), a(pi, j));
      }
      if (pj != t) col_swap2(t, pj);
      if (a(t, t) < 0) col_neg2(t);

      bool clean = true;
      for (int i = t + 1; i < k; ++i) {
        std::int64_t q = floor_div(a(i, t), a(t, t));
        row_axpy(i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < r; ++j) {
        std::int64_t q = floor_div(a(t, j), a(t, t));
        col_axpy2(j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility s_t | a(i,j) for the remaining block.
      bool divides_all = true;
      for (int i = t + 1; i < k && divides_all; ++i)
        for (int j = t + 1; j < r && divides_all; ++j)
          if (a(i, j) % a(t, t) != 0) {
            // Fold the offending row into row t and restart the pivot step.
            for (int jj = 0; jj < r; ++jj) a(t, jj) += a(i, jj);
            divides_all = false;
          }
      if (divides_all) break;
    }
    diag.push_back(a(t, t));
  }
  return SmithForm{std::move(diag), std::move(v)};
}

IntMatrix complete_unimodular_row(const std::vector<std::int64_t>& first_row) {
  const int d = static_cast<int>(first_row.size());
  if (d < 1) throw std::invalid_argument("complete_unimodular_row: empty vector");
  std::int64_t g = 0;
  for (auto x : first_row) g = std::gcd(g, std::abs(x));
  if (g != 1) throw std::invalid_argument("complete_unimodular_row: vector is not primitive");

  // Apply column operations to w until it becomes e_1, accumulating the
  // inverse operations on M. Then w = e_1 * M, i.e. M's first row is w.
  std::vector<std::int64_t> w = first_row;
  IntMatrix m = IntMatrix::identity(d);
  auto apply_axpy = [&](int dst, int src, std::int64_t q) {
    // column op on w: w[dst] -= q*w[src];  inverse accumulates as row op.
    w[dst] -= q * w[src];
    for (int j = 0; j < d; ++j) m(src, j) += q * m(dst, j);
  };
  auto apply_swap = [&](int x, int y) {
    std::swap(w[x], w[y]);
    for (int j = 0; j < d; ++j) std::swap(m(x, j), m(y, j));
  };
  auto apply_negate = [&](int x) {
    w[x] = -w[x];
    for (int j = 0; j < d; ++j) m(x, j) = -m(x, j);
  };

  for (int j = 1; j < d; ++j) {
    while (w[j] != 0) {
      if (w[0] == 0) {
        apply_swap(0, j);
        continue;
      }
      std::int64_t q = w[j] / w[0];
      apply_axpy(j, 0, q);
      if (w[j] != 0) apply_swap(0, j);
    }
  }
  if (w[0] == -1) apply_negate(0);
  if (w[0] != 1) throw std::logic_error("complete_unimodular_row: gcd reduction failed");

  // Swaps and negations flip the determinant sign; fix it on a later row.
  if (det_unimodular(m) == -1) {
    if (d < 2) throw std::invalid_argument("complete_unimodular_row: no SL_1 completion of -1");
    for (int j = 0; j < d; ++j) m(1, j) = -m(1, j);
  }
  return m;
}

std::int64_t det_unimodular(const IntMatrix& input) {
  IntMatrix a = input;
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("det: not square");
  std::int64_t sign = 1;
  // Fraction-free forward elimination would overflow; instead use column gcd
  // reduction, which keeps entries integral and bounded for unimodular input.
  for (int t = 0; t < n; ++t) {
    while (true) {
      int p = -1;
      std::int64_t best = 0;
      for (int j = t; j < n; ++j)
        if (a(t, j) != 0 && (p < 0 || std::abs(a(t, j)) < best)) {
          p = j;
          best = std::abs(a(t, j));
        }
      if (p < 0) return 0;
      if (p != t) {
        col_swap(a, t, p);
        sign = -sign;
      }
      bool clean = true;
      for (int j = t + 1; j < n; ++j) {
        std::int64_t q = a(t, j) / a(t, t);
        col_axpy(a, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::int64_t det = sign;
  for (int t = 0; t < n; ++t) det *= a(t, t);
  return det;
}

}  // namespace rogers
