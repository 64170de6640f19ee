#include "rogers/centered.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rogers {

namespace {

Rat affine_coefficient(const AdmissibleMatrix& m, int dim) {
  return Rat(int_pow(count_N(m), static_cast<unsigned>(dim)),
             int_pow(Int(m.u), static_cast<unsigned>(dim * m.r())));
}

}  // namespace

std::vector<CenteredTerm> enumerate_centered_affine(int k, int n, std::int64_t u,
                                                    std::int64_t entry_bound, int dim) {
  if (n < 1 || n > k - 1)
    throw std::invalid_argument("enumerate_centered_affine: need 1 <= n <= k-1");
  std::vector<CenteredTerm> out;
  for (auto& m : enumerate_admissible(k, n, u, std::max(u, entry_bound))) {
    if (m.entries.max_abs() > entry_bound) continue;
    if (!is_affine_lift(m)) continue;  // columns sum to u * ones
    bool cols_ok = true;
    for (int j = 0; j < n && cols_ok; ++j) cols_ok = m.entries.nonzeros_in_col(j) >= 2;
    if (!cols_ok) continue;
    CenteredTerm t;
    t.matrix = m;
    t.sign_exponent = 0;
    t.coefficient = affine_coefficient(m, dim);
    t.family = CenteredFamily::AffineS;
    t.case_tag = CenteredCase::A;
    out.push_back(std::move(t));
  }
  return out;
}

IntMatrix assemble_isolated_rows(int k, const std::vector<int>& isolated_rows,
                                 const IntMatrix& block, std::int64_t u0) {
  const int a = static_cast<int>(isolated_rows.size());
  if (block.rows() + a != k) throw std::invalid_argument("assemble: row count mismatch");
  const int n = a + block.cols();
  std::vector<bool> isolated(k, false);
  for (int i : isolated_rows) isolated[i] = true;
  std::vector<int> rest_rows;  // global row of each block row
  for (int i = 0; i < k; ++i)
    if (!isolated[i]) rest_rows.push_back(i);

  // Global pivot row of every column: fresh columns pivot at their isolated
  // row, block columns at the mapped first nonzero of the block column.
  struct Col {
    int pivot;
    bool fresh;
    int src;  // isolated row or block column index
  };
  std::vector<Col> cols;
  cols.reserve(n);
  for (int i : isolated_rows) cols.push_back({i, true, i});
  for (int j = 0; j < block.cols(); ++j) {
    int first = -1;
    for (int i = 0; i < block.rows(); ++i)
      if (block(i, j) != 0) {
        first = i;
        break;
      }
    if (first < 0) throw std::invalid_argument("assemble: zero block column");
    cols.push_back({rest_rows[first], false, j});
  }
  std::sort(cols.begin(), cols.end(), [](const Col& x, const Col& y) { return x.pivot < y.pivot; });

  IntMatrix out(k, n);
  for (int j = 0; j < n; ++j) {
    if (cols[j].fresh) {
      out(cols[j].src, j) = u0;
    } else {
      for (int i = 0; i < block.rows(); ++i) out(rest_rows[i], j) = block(i, cols[j].src);
    }
  }
  return out;
}

namespace {

struct NetEntry {
  Rat coefficient;
  double tail = 0.0;
  int contributions = 0;
  std::set<std::string> values;  // distinct |sub-coefficient| values seen
};

struct Key {
  IntMatrix m;
  std::int64_t u;
  bool operator<(const Key& o) const {
    if (u != o.u) return u < o.u;
    return m < o.m;
  }
};

}  // namespace

std::vector<CenteredTerm> enumerate_centered_congruence(int k, int n, std::int64_t u0,
                                                        std::int64_t entry_bound, std::int64_t q,
                                                        int dim, const CenteredWindow& window) {
  if (q < 2) throw std::invalid_argument("enumerate_centered_congruence: q >= 2 required");
  if (n < 1 || n > k - 1)
    throw std::invalid_argument("enumerate_centered_congruence: need 1 <= n <= k-1");

  // Sub-formula terms of the congruence moment formula for a block of
  // sub_k rows: the product term (identity, denominator 1) plus every
  // C^{sub_k}_{m,u} term with m <= sub_k - 1 inside the window.
  struct SubTerm {
    IntMatrix m;
    std::int64_t u;
    Rat coef;
    double tail;
  };
  auto sub_terms = [&](int sub_k) {
    std::vector<SubTerm> ts;
    ts.push_back({IntMatrix::identity(sub_k), 1, Rat(1), 0.0});
    if (sub_k >= 2) {
      for (auto& r1 : enumerate_congruence_rank1(sub_k, q, u0, window.ell_bound, dim)) {
        if (r1.matrix.entries.max_abs() > entry_bound) continue;
        ts.push_back({r1.matrix.entries, r1.u0, r1.coefficient, r1.coeff_tail});
      }
      for (int m = 2; m <= sub_k - 1; ++m) {
        for (auto& lift : enumerate_congruence_lifts(sub_k, m, q, u0, u0, window.ell_bound,
                                                     entry_bound, dim, window.e_max)) {
          ts.push_back({lift.matrix.entries, lift.u0, lift.coefficient, lift.coeff_tail});
        }
      }
    }
    return ts;
  };

  std::map<Key, NetEntry> net;
  const int total_subsets = 1 << k;
  for (int mask = 0; mask < total_subsets; ++mask) {
    std::vector<int> a_rows;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) a_rows.push_back(i);
    const int a = static_cast<int>(a_rows.size());
    const int sub_k = k - a;
    const int sign = (a % 2 == 0) ? 1 : -1;
    for (auto& t : sub_terms(sub_k)) {
      if (a + t.m.cols() != n) continue;
      // Fresh columns carry the sub-term's denominator, so only sub-terms
      // with matching denominator can assemble into T^k_{n,u0}.
      if (t.u != u0) continue;
      IntMatrix assembled = assemble_isolated_rows(k, a_rows, t.m, t.u);
      if (assembled.max_abs() > entry_bound) continue;
      auto adm = make_admissible(assembled, t.u);
      if (!adm) continue;
      auto& e = net[Key{assembled, t.u}];
      e.coefficient += (sign > 0 ? t.coef : -t.coef);
      e.tail += t.tail;
      e.contributions += 1;
      e.values.insert(rat_to_string(rat_abs(t.coef)));
    }
  }

  // Lift matrices of the window, used to distinguish cases (b) and (c).
  std::set<std::string> lift_shapes;
  auto shape_key = [](const IntMatrix& m, std::int64_t u) {
    std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + "@" +
                    std::to_string(u);
    for (auto v : m.data()) s += "," + std::to_string(v);
    return s;
  };
  for (int sub_k = 2; sub_k <= k; ++sub_k) {
    for (auto& r1 : enumerate_congruence_rank1(sub_k, q, u0, window.ell_bound, dim))
      lift_shapes.insert(shape_key(r1.matrix.entries, r1.u0));
    for (int m = 2; m <= sub_k; ++m)
      for (auto& lift : enumerate_congruence_lifts(sub_k, m, q, u0, u0, window.ell_bound,
                                                   entry_bound, dim, window.e_max))
        lift_shapes.insert(shape_key(lift.matrix.entries, lift.u0));
  }

  std::vector<CenteredTerm> out;
  for (auto& [key, e] : net) {
    if (e.coefficient == 0) continue;  // exact cancellation
    CenteredTerm t;
    t.matrix = require_admissible(key.m, key.u);
    t.coefficient = e.coefficient;
    t.coeff_tail = e.tail;
    t.family = CenteredFamily::CongruenceT;
    // Maximal isolated prefix: rows 0..a*-1 equal u0*e_i with singleton columns.
    int prefix = 0;
    while (prefix < t.matrix.k() && prefix < t.matrix.r()) {
      bool iso = t.matrix.entries(prefix, prefix) == key.u &&
                 t.matrix.entries.nonzeros_in_row(prefix) == 1 &&
                 t.matrix.entries.nonzeros_in_col(prefix) == 1;
      if (!iso) break;
      ++prefix;
    }
    if (prefix == 0) {
      t.case_tag = CenteredCase::A;
      t.sign_exponent = 0;
    } else {
      // Strip the prefix and test whether the remaining block is itself a
      // congruence lift (case c) or a bare source block (case b).
      IntMatrix rest(t.matrix.k() - prefix, t.matrix.r() - prefix);
      for (int i = 0; i < rest.rows(); ++i)
        for (int j = 0; j < rest.cols(); ++j) rest(i, j) = t.matrix.entries(prefix + i, prefix + j);
      bool is_lift = lift_shapes.count(shape_key(rest, key.u)) > 0;
      t.case_tag = is_lift ? CenteredCase::C : CenteredCase::B;
      t.sign_exponent = is_lift ? prefix : prefix - 1;
      t.two_branch = e.values.size() > 1;
    }
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.matrix < b.matrix; });
  return out;
}

std::vector<CenteredTerm> enumerate_centered(int k, int n, std::int64_t u,
                                             std::int64_t entry_bound, CenteredFamily family,
                                             int dim, std::int64_t q, const CenteredWindow& window) {
  if (family == CenteredFamily::AffineS) return enumerate_centered_affine(k, n, u, entry_bound, dim);
  return enumerate_centered_congruence(k, n, u, entry_bound, q, dim, window);
}

std::vector<AdmissibleMatrix> centered_main_matrices(int k, int n, CenteredFamily family,
                                                     std::int64_t q) {
  std::vector<AdmissibleMatrix> out;
  for (auto& p : enumerate_partitions_min_block(k, 2)) {
    if (static_cast<int>(p.blocks.size()) != n) continue;
    if (family == CenteredFamily::CongruenceT && q == 2) {
      std::vector<int> free_rows;
      std::vector<bool> is_min(k, false);
      for (auto& b : p.blocks) is_min[b.front()] = true;
      for (int i = 0; i < k; ++i)
        if (!is_min[i]) free_rows.push_back(i);
      const size_t count = size_t{1} << free_rows.size();
      for (size_t mask = 0; mask < count; ++mask) {
        std::vector<int> signs(k, 1);
        for (size_t t = 0; t < free_rows.size(); ++t)
          if (mask & (size_t{1} << t)) signs[free_rows[t]] = -1;
        out.push_back(partition_to_matrix_signed(p, signs));
      }
    } else {
      out.push_back(partition_to_matrix(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rogers
