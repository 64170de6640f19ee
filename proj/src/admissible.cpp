#include "rogers/admissible.hpp"

#include <algorithm>
#include <stdexcept>

#include "rogers/intlinalg.hpp"

namespace rogers {

std::optional<AdmissibleMatrix> make_admissible(const IntMatrix& m, std::int64_t u) {
  const int k = m.rows(), r = m.cols();
  if (u < 1 || r < 1 || r > k) return std::nullopt;
  if (m.gcd_all() != 1) return std::nullopt;
  std::vector<int> pivots;
  pivots.reserve(r);
  int prev = -1;
  for (int j = 0; j < r; ++j) {
    int first = -1;
    for (int i = 0; i < k; ++i)
      if (m(i, j) != 0) {
        first = i;
        break;
      }
    if (first < 0 || first <= prev) return std::nullopt;
    // The pivot row must be u * e_j.
    for (int jj = 0; jj < r; ++jj)
      if (m(first, jj) != (jj == j ? u : 0)) return std::nullopt;
    pivots.push_back(first);
    prev = first;
  }
  return AdmissibleMatrix{m, u, std::move(pivots)};
}

AdmissibleMatrix require_admissible(const IntMatrix& m, std::int64_t u) {
  auto a = make_admissible(m, u);
  if (!a) throw std::invalid_argument("matrix is not admissible for the given denominator");
  return *a;
}

std::vector<AdmissibleMatrix> enumerate_admissible(int k, int r, std::int64_t u,
                                                   std::int64_t entry_bound) {
  if (r < 1 || r > k) throw std::invalid_argument("enumerate_admissible: need 1 <= r <= k");
  if (u < 1 || u > entry_bound)
    throw std::invalid_argument("enumerate_admissible: need 1 <= u <= entry_bound");

  std::vector<AdmissibleMatrix> out;
  std::vector<int> pivots(r);

  // Free positions are (i, j) with i not a pivot row and i below the pivot
  // of column j; everything else is forced by admissibility.
  auto scan_pivot_choice = [&](auto&& self, int j, int start) -> void {
    if (j == r) {
      std::vector<std::pair<int, int>> free_pos;
      std::vector<bool> is_pivot(k, false);
      for (int p : pivots) is_pivot[p] = true;
      for (int i = 0; i < k; ++i) {
        if (is_pivot[i]) continue;
        for (int jj = 0; jj < r; ++jj)
          if (i > pivots[jj]) free_pos.emplace_back(i, jj);
      }
      IntMatrix m(k, r);
      for (int jj = 0; jj < r; ++jj) m(pivots[jj], jj) = u;
      const std::int64_t lo = -entry_bound, hi = entry_bound;
      std::vector<std::int64_t> vals(free_pos.size(), lo);
      while (true) {
        for (size_t t = 0; t < free_pos.size(); ++t)
          m(free_pos[t].first, free_pos[t].second) = vals[t];
        if (m.gcd_all() == 1) {
          auto adm = make_admissible(m, u);
          if (adm) out.push_back(std::move(*adm));
        }
        size_t t = 0;
        for (; t < vals.size(); ++t) {
          if (vals[t] < hi) {
            ++vals[t];
            break;
          }
          vals[t] = lo;
        }
        if (t == vals.size()) break;
      }
      return;
    }
    for (int i = start; i < k; ++i) {
      pivots[j] = i;
      self(self, j + 1, i + 1);
    }
  };
  scan_pivot_choice(scan_pivot_choice, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Int count_N_direct(const IntMatrix& m, std::int64_t u) {
  const int k = m.rows(), r = m.cols();
  std::vector<std::int64_t> v(r, 0);
  Int n = 0;
  while (true) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < r; ++j) s += m(i, j) * v[j];
      ok = (s % u) == 0;
    }
    if (ok) ++n;
    int t = 0;
    for (; t < r; ++t) {
      if (v[t] + 1 < u) {
        ++v[t];
        break;
      }
      v[t] = 0;
    }
    if (t == r) break;
  }
  return n;
}

Int count_N_smith(const IntMatrix& m, std::int64_t u) {
  auto snf = smith_normal_form(m);
  Int n = 1;
  for (auto s : snf.diag) n *= std::gcd(s, u);
  return n;
}

Int count_N(const AdmissibleMatrix& d) {
  double cost = 1.0;
  for (int j = 0; j < d.r(); ++j) cost *= static_cast<double>(d.u);
  if (cost <= 1e6) return count_N_direct(d.entries, d.u);
  return count_N_smith(d.entries, d.u);
}

TermClass classify(const AdmissibleMatrix& d) {
  if (d.u >= 2 || d.entries.max_abs() >= 2) return TermClass::R1;
  for (int i = 0; i < d.k(); ++i)
    if (d.entries.nonzeros_in_row(i) >= 2) return TermClass::R2;
  return TermClass::Main;
}

std::string term_class_name(TermClass c) {
  switch (c) {
    case TermClass::Main: return "main";
    case TermClass::R1: return "r1";
    case TermClass::R2: return "r2";
  }
  return "?";
}

nlohmann::json admissible_to_json(const AdmissibleMatrix& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < d.k(); ++i) rows.push_back(d.entries.row(i));
  nlohmann::json piv = nlohmann::json::array();
  for (int p : d.pivot_rows) piv.push_back(p + 1);  // 1-based externally
  return nlohmann::json{{"k", d.k()}, {"r", d.r()}, {"u", d.u}, {"rows", rows},
                        {"pivot_rows", piv}};
}

AdmissibleMatrix admissible_from_json(const nlohmann::json& j) {
  int k = j.at("k").get<int>();
  int r = j.at("r").get<int>();
  std::int64_t u = j.at("u").get<std::int64_t>();
  IntMatrix m(k, r);
  const auto& rows = j.at("rows");
  for (int i = 0; i < k; ++i)
    for (int jj = 0; jj < r; ++jj) m(i, jj) = rows.at(i).at(jj).get<std::int64_t>();
  return require_admissible(m, u);
}

}  // namespace rogers
