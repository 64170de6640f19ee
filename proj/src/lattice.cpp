#include "rogers/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rogers/regions.hpp"

namespace rogers {

double RealMatrix::det() const {
  RealMatrix lu = *this;
  double det = 1.0;
  for (int i = 0; i < n; ++i) {
    int p = i;
    for (int r = i + 1; r < n; ++r)
      if (std::abs(lu(r, i)) > std::abs(lu(p, i))) p = r;
    if (lu(p, i) == 0.0) return 0.0;
    if (p != i) {
      for (int c = 0; c < n; ++c) std::swap(lu(i, c), lu(p, c));
      det = -det;
    }
    det *= lu(i, i);
    for (int r = i + 1; r < n; ++r) {
      double f = lu(r, i) / lu(i, i);
      for (int c = i; c < n; ++c) lu(r, c) -= f * lu(i, c);
    }
  }
  return det;
}

namespace {

std::vector<double> row_times_matrix(const std::vector<double>& x, const RealMatrix& m) {
  std::vector<double> out(m.n, 0.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out[j] += x[i] * m(i, j);
  return out;
}

}  // namespace

Lattice sample_unimodular(int d, std::int64_t prime, rng::Xoshiro256ss& gen) {
  if (d < 2) throw std::invalid_argument("sample_unimodular: d >= 2 required");
  if (prime < 100000) throw std::invalid_argument("sample_unimodular: prime >= 1e5 required");
  Lattice lat;
  lat.d = d;
  lat.basis = RealMatrix(d);
  const double scale = std::pow(static_cast<double>(prime), -1.0 / d);
  lat.basis(0, 0) = scale * static_cast<double>(prime);
  for (int i = 1; i < d; ++i) {
    std::int64_t a = static_cast<std::int64_t>(
        rng::uniform_below(gen, static_cast<std::uint64_t>(prime)));
    lat.basis(i, 0) = scale * static_cast<double>(a);
    lat.basis(i, i) = scale;
  }
  lat.shift.assign(d, 0.0);
  lat.shift_kind = ShiftKind::None;
  lat.provenance.method = "hecke";
  lat.provenance.prime = prime;
  return lat;
}

Lattice sample_affine(int d, std::int64_t prime, rng::Xoshiro256ss& gen) {
  Lattice lat = sample_unimodular(d, prime, gen);
  std::vector<double> x(d);
  for (int i = 0; i < d; ++i) x[i] = rng::uniform01(gen);
  lat.shift = row_times_matrix(x, lat.basis);
  lat.shift_kind = ShiftKind::AffineUniform;
  lat.provenance.method = "hecke+uniform-shift";
  return lat;
}

std::vector<std::int64_t> primitive_lift_mod(const std::vector<std::int64_t>& v, std::int64_t q) {
  std::vector<std::int64_t> w(v.size());
  std::int64_t gq = q;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = ((v[i] % q) + q) % q;
    gq = std::gcd(gq, w[i]);
  }
  if (gq != 1) throw std::invalid_argument("primitive_lift_mod: gcd(v, q) != 1");
  std::int64_t g = 0;
  for (auto x : w) g = std::gcd(g, x);
  if (g == 1) return w;
  // gcd(w) = g is coprime to q. Adjust one coordinate by a multiple of q to
  // reach a primitive vector; only primes not dividing q need attention.
  std::int64_t rest = 0;
  for (size_t i = 1; i < w.size(); ++i) rest = std::gcd(rest, w[i]);
  if (rest == 0) {
    // v = (v_1, 0, ..., 0) with gcd(v_1, q) = 1: make another coordinate q.
    w[1] = q;
    return w;
  }
  for (std::int64_t c = 1;; ++c) {
    if (std::gcd(w[0] + c * q, rest) == 1) {
      w[0] += c * q;
      return w;
    }
  }
}

Lattice sample_congruence(int d, const std::vector<std::int64_t>& p_vec, std::int64_t q,
                          std::int64_t prime, rng::Xoshiro256ss& gen) {
  if (d < 3) throw std::invalid_argument("sample_congruence: d >= 3 required");
  if (q < 2) throw std::invalid_argument("sample_congruence: q >= 2 required");
  if (static_cast<int>(p_vec.size()) != d)
    throw std::invalid_argument("sample_congruence: p_vec must have d entries");
  std::int64_t g = q;
  for (auto x : p_vec) g = std::gcd(g, std::abs(x));
  if (g != 1) throw std::invalid_argument("sample_congruence: gcd(p_vec, q) != 1");

  // Uniform residue v in (Z/q)^d with gcd(v, q) = 1 by rejection.
  std::vector<std::int64_t> v(d);
  while (true) {
    std::int64_t gv = q;
    for (int i = 0; i < d; ++i) {
      v[i] = static_cast<std::int64_t>(rng::uniform_below(gen, static_cast<std::uint64_t>(q)));
      gv = std::gcd(gv, v[i]);
    }
    if (gv == 1) break;
  }
  auto w = primitive_lift_mod(v, q);
  IntMatrix gamma = complete_unimodular_row(w);

  Lattice base = sample_unimodular(d, prime, gen);

  Lattice lat;
  lat.d = d;
  lat.basis = RealMatrix(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int t = 0; t < d; ++t) s += static_cast<double>(gamma(i, t)) * base.basis(t, j);
      lat.basis(i, j) = s;
    }
  std::vector<double> frac(d);
  for (int i = 0; i < d; ++i) frac[i] = static_cast<double>(p_vec[i]) / static_cast<double>(q);
  lat.shift = row_times_matrix(frac, lat.basis);
  lat.shift_kind = ShiftKind::CongruenceRational;
  lat.p_vec = p_vec;
  lat.q = q;
  lat.provenance.method = "hecke+gamma1-coset";
  lat.provenance.prime = prime;
  return lat;
}

// ---------------------------------------------------------------------------
// LLL
// ---------------------------------------------------------------------------

RealMatrix lll_reduce(const RealMatrix& basis, double delta, IntMatrix* transform) {
  if (delta <= 0.25 || delta >= 1.0)
    throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
  const int n = basis.n;
  if (std::abs(basis.det()) < 1e-300) throw std::invalid_argument("lll_reduce: singular basis");
  RealMatrix b = basis;
  IntMatrix u = IntMatrix::identity(n);

  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> bstar_norm2(n, 0.0);
  std::vector<std::vector<double>> bstar(n, std::vector<double>(n, 0.0));

  auto gram_schmidt = [&]() {
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < n; ++c) bstar[i][c] = b(i, c);
      for (int j = 0; j < i; ++j) {
        double dot = 0.0;
        for (int c = 0; c < n; ++c) dot += b(i, c) * bstar[j][c];
        mu[i][j] = dot / bstar_norm2[j];
        for (int c = 0; c < n; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
      }
      bstar_norm2[i] = 0.0;
      for (int c = 0; c < n; ++c) bstar_norm2[i] += bstar[i][c] * bstar[i][c];
    }
  };
  auto size_reduce_row = [&](int i, int j) {
    double r = std::round(mu[i][j]);
    if (r == 0.0) return;
    auto ri = static_cast<std::int64_t>(r);
    for (int c = 0; c < n; ++c) b(i, c) -= r * b(j, c);
    for (int c = 0; c < n; ++c) u(i, c) -= ri * u(j, c);
    for (int c = 0; c <= j; ++c) mu[i][c] -= r * mu[j][c];
  };

  gram_schmidt();
  int k = 1;
  long iters = 0;
  while (k < n) {
    if (++iters > 1000000) throw std::runtime_error("lll_reduce: iteration budget exceeded");
    for (int j = k - 1; j >= 0; --j) size_reduce_row(k, j);
    if (bstar_norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_norm2[k - 1]) {
      ++k;
    } else {
      for (int c = 0; c < n; ++c) std::swap(b(k, c), b(k - 1, c));
      for (int c = 0; c < n; ++c) std::swap(u(k, c), u(k - 1, c));
      gram_schmidt();  // small n: recomputing keeps the floating point honest
      k = std::max(k - 1, 1);
    }
  }
  if (transform) *transform = u;
  return b;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

struct GramSchmidt {
  std::vector<std::vector<double>> mu;
  std::vector<double> norm2;
};

GramSchmidt gram_schmidt_of(const RealMatrix& b) {
  const int n = b.n;
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<double>(n, 0.0));
  gs.norm2.assign(n, 0.0);
  std::vector<std::vector<double>> bstar(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) bstar[i][c] = b(i, c);
    for (int j = 0; j < i; ++j) {
      double dot = 0.0;
      for (int c = 0; c < n; ++c) dot += b(i, c) * bstar[j][c];
      gs.mu[i][j] = dot / gs.norm2[j];
      for (int c = 0; c < n; ++c) bstar[i][c] -= gs.mu[i][j] * bstar[j][c];
    }
    gs.mu[i][i] = 1.0;
    for (int c = 0; c < n; ++c) gs.norm2[i] += bstar[i][c] * bstar[i][c];
  }
  return gs;
}

}  // namespace

PointCloud enumerate_in_ball(const Lattice& lattice, double radius, const EnumOptions& opts) {
  if (radius <= 0) throw std::invalid_argument("enumerate_in_ball: radius must be positive");
  const int n = lattice.d;
  RealMatrix red = lll_reduce(lattice.basis, opts.delta, nullptr);
  auto gs = gram_schmidt_of(red);

  // Express the target -shift in the Gram-Schmidt frame of the reduced
  // basis: we enumerate integer x with || x * red + shift || <= radius.
  // Writing x * red + shift = sum_i (x_i + tau_i(x_{>i})) b*_i is the
  // classic sphere-decoder recursion; tau depends on deeper coordinates.
  // Work with coordinates of shift over the reduced basis rows.
  std::vector<double> shift_coords(n, 0.0);
  {
    // Solve y * red = shift by back-substitution on the GS decomposition:
    // just use Gaussian elimination on red^T.
    RealMatrix m(n);
    std::vector<double> rhs = lattice.shift.empty() ? std::vector<double>(n, 0.0) : lattice.shift;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = red(j, i);  // columns are basis rows
    // LU solve
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int col = 0; col < n; ++col) {
      int p = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(m(r, col)) > std::abs(m(p, col))) p = r;
      if (p != col) {
        for (int c = 0; c < n; ++c) std::swap(m(col, c), m(p, c));
        std::swap(rhs[col], rhs[p]);
      }
      for (int r = col + 1; r < n; ++r) {
        double f = m(r, col) / m(col, col);
        for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        rhs[r] -= f * rhs[col];
      }
    }
    for (int r = n - 1; r >= 0; --r) {
      double s = rhs[r];
      for (int c = r + 1; c < n; ++c) s -= m(r, c) * shift_coords[c];
      shift_coords[r] = s / m(r, r);
    }
  }

  PointCloud cloud;
  std::vector<double> x(n, 0.0);        // real coordinates incl. shift, x_i = c_i + s_i
  std::vector<double> center(n, 0.0);   // enumeration centers per level
  std::vector<double> partial(n + 1, 0.0);
  std::vector<std::int64_t> c(n, 0);
  std::int64_t nodes = 0;
  const double r2 = radius * radius;

  // Depth-first from the last coordinate; at level i the contribution of
  // levels > i is fixed and x_i ranges over an interval.
  struct Frame {
    std::int64_t lo, hi, cur;
  };
  std::vector<Frame> frames(n);

  auto project_center = [&](int i) {
    // center_i = -(shift_i + sum_{j>i} (c_j + shift_j) mu_{j,i})
    double t = shift_coords[i];
    for (int j = i + 1; j < n; ++j) t += (static_cast<double>(c[j]) + shift_coords[j]) * gs.mu[j][i];
    return -t;
  };

  int level = n - 1;
  bool descending = true;
  while (level < n) {
    if (descending) {
      double rem = r2 - partial[level + 1];
      if (rem < 0) rem = 0;
      double halfwidth = std::sqrt(rem / gs.norm2[level]);
      double ctr = project_center(level);
      frames[level].lo = static_cast<std::int64_t>(std::ceil(ctr - halfwidth - 1e-9));
      frames[level].hi = static_cast<std::int64_t>(std::floor(ctr + halfwidth + 1e-9));
      frames[level].cur = frames[level].lo;
    }
    if (frames[level].cur > frames[level].hi) {
      ++level;
      if (level < n) ++frames[level].cur;
      descending = false;
      continue;
    }
    if (++nodes > opts.node_budget)
      throw std::runtime_error("enumerate_in_ball: node budget exceeded");
    c[level] = frames[level].cur;
    double ctr = project_center(level);
    double coord = static_cast<double>(c[level]) - ctr;
    partial[level] = partial[level + 1] + coord * coord * gs.norm2[level];
    if (partial[level] > r2 * (1 + 1e-12) + 1e-12) {
      ++frames[level].cur;
      descending = false;
      continue;
    }
    if (level == 0) {
      // Materialize the point.
      std::vector<double> pt(n, 0.0);
      for (int j = 0; j < n; ++j) {
        double coef = static_cast<double>(c[j]) + shift_coords[j];
        for (int col = 0; col < n; ++col) pt[col] += coef * red(j, col);
      }
      double norm2 = 0.0;
      for (double vcol : pt) norm2 += vcol * vcol;
      double norm = std::sqrt(norm2);
      if (norm <= radius * (1 + 1e-12)) {
        if (opts.include_zero || norm > 1e-9) {
          cloud.vectors.push_back(std::move(pt));
          cloud.norms.push_back(norm);
        }
      }
      ++frames[level].cur;
      descending = false;
    } else {
      --level;
      descending = true;
    }
  }

  // Sort by norm.
  std::vector<size_t> order(cloud.norms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return cloud.norms[a] < cloud.norms[b]; });
  PointCloud sorted;
  sorted.vectors.reserve(order.size());
  sorted.norms.reserve(order.size());
  for (size_t idx : order) {
    sorted.vectors.push_back(std::move(cloud.vectors[idx]));
    sorted.norms.push_back(cloud.norms[idx]);
  }
  return sorted;
}

std::size_t PointCloud::count_within(double radius) const {
  return static_cast<std::size_t>(
      std::upper_bound(norms.begin(), norms.end(), radius) - norms.begin());
}

std::vector<std::int64_t> nested_counts(const Lattice& lattice, const std::vector<double>& radii,
                                        const EnumOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("nested_counts: need at least one radius");
  for (size_t i = 1; i < radii.size(); ++i)
    if (radii[i] < radii[i - 1])
      throw std::invalid_argument("nested_counts: radii must be nondecreasing");
  auto cloud = enumerate_in_ball(lattice, radii.back(), opts);
  std::vector<std::int64_t> counts;
  counts.reserve(radii.size());
  for (double r : radii) counts.push_back(static_cast<std::int64_t>(cloud.count_within(r)));
  return counts;
}

std::vector<double> successive_volumes(const Lattice& lattice, int n, const EnumOptions& opts,
                                       int stride) {
  if (n < 1) throw std::invalid_argument("successive_volumes: n >= 1 required");
  if (stride < 1) throw std::invalid_argument("successive_volumes: stride >= 1 required");
  const int needed = n * stride;
  // Start from the radius whose ball has expected count ~ needed plus slack
  // and grow until enough points are found.
  double volume_guess = static_cast<double>(needed) + 6.0 * std::sqrt(static_cast<double>(needed)) + 8.0;
  for (int attempt = 0; attempt < 16; ++attempt) {
    double r = radius_for_volume(lattice.d, volume_guess);
    auto cloud = enumerate_in_ball(lattice, r, opts);
    if (static_cast<int>(cloud.norms.size()) >= needed) {
      std::vector<double> vols;
      vols.reserve(n);
      for (int i = 0; i < n; ++i)
        vols.push_back(ball_volume(lattice.d, cloud.norms[static_cast<size_t>(i + 1) * stride - 1]));
      return vols;
    }
    volume_guess *= 2.0;
  }
  throw std::runtime_error("successive_volumes: could not collect enough points");
}

nlohmann::json lattice_to_json(const Lattice& lattice) {
  nlohmann::json basis = nlohmann::json::array();
  for (int i = 0; i < lattice.d; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < lattice.d; ++j) row.push_back(lattice.basis(i, j));
    basis.push_back(row);
  }
  std::string kind = lattice.shift_kind == ShiftKind::None
                         ? "none"
                         : (lattice.shift_kind == ShiftKind::AffineUniform ? "affine_uniform"
                                                                           : "congruence_rational");
  nlohmann::json j{{"d", lattice.d},
                   {"basis", basis},
                   {"shift", lattice.shift},
                   {"shift_kind", kind},
                   {"provenance",
                    {{"method", lattice.provenance.method},
                     {"prime", lattice.provenance.prime},
                     {"seed", lattice.provenance.seed},
                     {"index", lattice.provenance.index}}}};
  if (lattice.shift_kind == ShiftKind::CongruenceRational) {
    j["p_vec"] = lattice.p_vec;
    j["q"] = lattice.q;
  }
  return j;
}

std::string point_cloud_csv(const PointCloud& cloud) {
  std::ostringstream out;
  out.precision(17);
  out << "norm";
  if (!cloud.vectors.empty())
    for (size_t c = 0; c < cloud.vectors.front().size(); ++c) out << ",x" << c;
  out << "\n";
  for (size_t i = 0; i < cloud.norms.size(); ++i) {
    out << cloud.norms[i];
    for (double v : cloud.vectors[i]) out << "," << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace rogers
