#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rogers/intlinalg.hpp"
#include "rogers/rng.hpp"

#include "json.hpp"

namespace rogers {

/// Square real matrix with rows as basis vectors.
struct RealMatrix {
  int n = 0;
  std::vector<double> a;

  RealMatrix() = default;
  explicit RealMatrix(int n) : n(n), a(static_cast<size_t>(n) * n, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  double det() const;
};

enum class ShiftKind { None, AffineUniform, CongruenceRational };

struct Provenance {
  std::string method;
  std::int64_t prime = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

struct Lattice {
  int d = 0;
  RealMatrix basis;           // rows span the lattice
  std::vector<double> shift;  // zero for linear lattices
  ShiftKind shift_kind = ShiftKind::None;
  std::vector<std::int64_t> p_vec;  // congruence numerators
  std::int64_t q = 0;               // congruence denominator
  Provenance provenance;
};

/// Hecke-point sampler: basis p^{-1/d} * [(p,0,...,0); (a_i, e_{i+1})] with
/// a_i uniform in {0,...,p-1}. Equidistributes toward Haar as p grows.
Lattice sample_unimodular(int d, std::int64_t prime, rng::Xoshiro256ss& gen);

/// Unimodular sample plus shift xi = x * g with x uniform on [0,1)^d.
Lattice sample_affine(int d, std::int64_t prime, rng::Xoshiro256ss& gen);

/// Congruence sample: a uniform coset of Gamma_1(q) \ SL_d(Z) realized by a
/// unimodular completion of a primitive-mod-q first row, times a unimodular
/// sample; the lattice is (Z^d + p/q) gamma g.
Lattice sample_congruence(int d, const std::vector<std::int64_t>& p_vec, std::int64_t q,
                          std::int64_t prime, rng::Xoshiro256ss& gen);

/// Lifts a residue v in (Z/q)^d with gcd(v, q) = 1 to a primitive integer
/// vector congruent to v mod q.
std::vector<std::int64_t> primitive_lift_mod(const std::vector<std::int64_t>& v, std::int64_t q);

/// LLL reduction on the rows with Lovasz parameter delta in (1/4, 1).
/// The returned basis spans the same lattice; the optional transform
/// receives the unimodular row transform applied.
RealMatrix lll_reduce(const RealMatrix& basis, double delta, IntMatrix* transform = nullptr);

struct PointCloud {
  std::vector<std::vector<double>> vectors;  // sorted by norm
  std::vector<double> norms;                 // nondecreasing
  std::size_t count_within(double radius) const;
};

struct EnumOptions {
  bool include_zero = true;            // count the zero vector when it is a point
  std::int64_t node_budget = 50000000; // enumeration tree guard
  double delta = 0.75;
};

/// Exact enumeration of all lattice points (with shift) of norm <= radius
/// via Fincke-Pohst on the LLL-reduced basis. Throws a runtime error when
/// the tree exceeds the node budget.
PointCloud enumerate_in_ball(const Lattice& lattice, double radius, const EnumOptions& opts = {});

/// Counts at a nested radius list from one enumeration at the largest.
std::vector<std::int64_t> nested_counts(const Lattice& lattice, const std::vector<double>& radii,
                                        const EnumOptions& opts = {});

/// Ball volumes at the n smallest norms (with multiplicity). stride = 2
/// takes every second norm, the natural reading for q = 2 symmetric pairs.
std::vector<double> successive_volumes(const Lattice& lattice, int n, const EnumOptions& opts = {},
                                       int stride = 1);

nlohmann::json lattice_to_json(const Lattice& lattice);
std::string point_cloud_csv(const PointCloud& cloud);

}  // namespace rogers
