#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rogers/matrix.hpp"
#include "rogers/rational.hpp"

#include "json.hpp"

namespace rogers {

/// An admissible k x r integer matrix D with denominator u: gcd of all
/// entries is 1, the pivot rows I_D form u * Id_r (transposed), and every
/// entry strictly above a pivot vanishes. Pivot rows are the canonical
/// (lexicographically least, hence forced) choice: the first nonzero row of
/// each column.
struct AdmissibleMatrix {
  IntMatrix entries;
  std::int64_t u = 1;
  std::vector<int> pivot_rows;  // 0-based, strictly increasing, one per column

  int k() const { return entries.rows(); }
  int r() const { return entries.cols(); }

  bool operator==(const AdmissibleMatrix& o) const {
    return u == o.u && entries == o.entries;
  }
  bool operator<(const AdmissibleMatrix& o) const {
    if (u != o.u) return u < o.u;
    return entries < o.entries;
  }
};

/// Validates the admissibility conditions and fills in the canonical pivot
/// rows. Returns nullopt if the matrix is not admissible for this u.
std::optional<AdmissibleMatrix> make_admissible(const IntMatrix& m, std::int64_t u);

AdmissibleMatrix require_admissible(const IntMatrix& m, std::int64_t u);

/// All D in the family with |entries| <= entry_bound, in row-major
/// lexicographic order. Throws on r > k or u > entry_bound.
std::vector<AdmissibleMatrix> enumerate_admissible(int k, int r, std::int64_t u,
                                                   std::int64_t entry_bound);

/// N(D,u): the number of v in {0,...,u-1}^r with (1/u) D v integral.
Int count_N(const AdmissibleMatrix& d);
Int count_N_direct(const IntMatrix& m, std::int64_t u);  // enumeration path
Int count_N_smith(const IntMatrix& m, std::int64_t u);   // kernel-counting path

enum class TermClass { Main, R1, R2 };

/// Remainder classification of a lifted-family member: R1 when u >= 2 or
/// some |entry| >= 2, R2 when some row has two or more nonzero entries,
/// Main otherwise.
TermClass classify(const AdmissibleMatrix& d);

std::string term_class_name(TermClass c);

nlohmann::json admissible_to_json(const AdmissibleMatrix& d);
AdmissibleMatrix admissible_from_json(const nlohmann::json& j);

}  // namespace rogers
