#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rogers {

/// Dense row-major integer matrix. Small: moment-formula matrices have at
/// most ~8 rows and columns, so no effort is spent on storage tricks.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }
  IntMatrix(int rows, int cols, std::vector<std::int64_t> data)
      : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
      throw std::invalid_argument("matrix data size mismatch");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix column_vec(const std::vector<std::int64_t>& v) {
    IntMatrix m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<std::int64_t> row(int i) const {
    std::vector<std::int64_t> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }
  std::vector<std::int64_t> col(int j) const {
    std::vector<std::int64_t> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  // Row-major lexicographic; used for deterministic enumeration order.
  bool operator<(const IntMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return a_ < o.a_;
  }

  std::int64_t gcd_all() const {
    std::int64_t g = 0;
    for (auto v : a_) g = std::gcd(g, std::abs(v));
    return g;
  }

  std::int64_t max_abs() const {
    std::int64_t m = 0;
    for (auto v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  int nonzeros_in_col(int j) const {
    int n = 0;
    for (int i = 0; i < rows_; ++i)
      if ((*this)(i, j) != 0) ++n;
    return n;
  }
  int nonzeros_in_row(int i) const {
    int n = 0;
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) ++n;
    return n;
  }

  const std::vector<std::int64_t>& data() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline std::uint64_t fnv1a_hash(const IntMatrix& m, std::uint64_t h = 1469598103934665603ull) {
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(m.rows()));
  mix(static_cast<std::uint64_t>(m.cols()));
  for (auto v : m.data()) mix(static_cast<std::uint64_t>(v));
  return h;
}

}  // namespace rogers
