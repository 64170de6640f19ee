#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rogers/admissible.hpp"
#include "rogers/lifts.hpp"
#include "rogers/partition.hpp"

namespace rogers {

enum class CenteredFamily { AffineS, CongruenceT };
enum class CenteredCase { A, B, C };

/// One summand of a centered-moment formula: a matrix D'' with its signed
/// coefficient ((-1)^a N(D'',u)^d / u^{dn} for the affine family, N'' for the
/// congruence family, evaluated at a fixed dimension).
struct CenteredTerm {
  AdmissibleMatrix matrix;
  int sign_exponent = 0;
  Rat coefficient;          // signed net coefficient at dimension dim
  double coeff_tail = 0.0;  // series-truncation slack carried by N'
  CenteredFamily family = CenteredFamily::AffineS;
  CenteredCase case_tag = CenteredCase::A;
  bool two_branch = false;  // congruence case (c): both representative branches met
};

/// Window parameters for the congruence expansion; the affine family needs
/// only the entry bound.
struct CenteredWindow {
  std::int64_t ell_bound = 4;
  std::int64_t e_max = 64;
};

/// The affine family S^k_{n,u} within an entry window: admissible matrices
/// whose columns sum to u * (1,...,1)^T with at least two nonzero entries in
/// every column. Coefficients are +N(D'',u)^d / u^{dn}.
std::vector<CenteredTerm> enumerate_centered_affine(int k, int n, std::int64_t u,
                                                    std::int64_t entry_bound, int dim);

/// The congruence family T^k_{n,u0} within a window, built by expanding
/// prod_i (f-hat_i - V_i) over the congruence moment formula and collecting
/// the net signed coefficient of every assembled matrix. Terms that cancel
/// exactly are dropped.
std::vector<CenteredTerm> enumerate_centered_congruence(int k, int n, std::int64_t u0,
                                                        std::int64_t entry_bound, std::int64_t q,
                                                        int dim,
                                                        const CenteredWindow& window = {});

std::vector<CenteredTerm> enumerate_centered(int k, int n, std::int64_t u,
                                             std::int64_t entry_bound, CenteredFamily family,
                                             int dim, std::int64_t q = 0,
                                             const CenteredWindow& window = {});

/// Main-class members of S^k_{n,1} (or T^k_{n,1}): partition matrices with
/// every block of size >= 2; the q = 2 congruence variant adds sign choices
/// on rows outside the block minima. This is the fast path behind the
/// (k-1)!! counting identities.
std::vector<AdmissibleMatrix> centered_main_matrices(int k, int n, CenteredFamily family,
                                                     std::int64_t q = 0);

/// Interleaves isolated rows (value u0 in a fresh column each) with a block
/// matrix placed on the remaining rows, keeping columns ordered by pivot row.
IntMatrix assemble_isolated_rows(int k, const std::vector<int>& isolated_rows,
                                 const IntMatrix& block, std::int64_t u0);

}  // namespace rogers
