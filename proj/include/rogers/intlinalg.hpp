#pragma once

#include <optional>
#include <vector>

#include "rogers/matrix.hpp"

namespace rogers {

/// Column-style Hermite normal form of an integer matrix with full column
/// rank. Pivot rows are strictly increasing, each pivot entry is positive,
/// entries above a pivot are zero, and earlier columns are reduced into
/// [0, pivot) on every pivot row. The result is the unique Hermite basis of
/// the column lattice.
struct ColumnHNF {
  IntMatrix h;                  // same shape as input
  std::vector<int> pivot_rows;  // 0-based, strictly increasing
};

ColumnHNF column_hnf(const IntMatrix& m);

/// Reduces v modulo the column lattice of a Hermite basis. The result is the
/// canonical coset representative: pivot-row coordinates lie in [0, pivot),
/// non-pivot coordinates are whatever the reduction leaves (they are free).
std::vector<std::int64_t> hnf_reduce(const ColumnHNF& hnf, std::vector<std::int64_t> v);

/// Smith normal form of a k x r integer matrix of full column rank.
/// Returns the diagonal (s_1 | s_2 | ... | s_r, all positive) and the right
/// transform V in GL_r(Z) such that the input equals U^-1 * diag(s) * V^-1
/// for some unimodular U; equivalently input * V = U^-1 * diag(s).
struct SmithForm {
  std::vector<std::int64_t> diag;
  IntMatrix right;  // V, r x r unimodular
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Completes a primitive integer vector to a matrix in SL_d(Z) whose first
/// row is the given vector. Throws if the vector is not primitive.
IntMatrix complete_unimodular_row(const std::vector<std::int64_t>& first_row);

std::int64_t det_unimodular(const IntMatrix& m);  // exact determinant, small matrices

}  // namespace rogers
