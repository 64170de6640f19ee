#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rogers::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded via splitmix64. Small, fast, and fully specified, so
/// streams are identical across platforms and worker counts.
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256ss(std::uint64_t seed = 1) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Counter-based substream derivation: the stream for (seed, index) depends
/// only on those two values, never on how work is scheduled.
inline Xoshiro256ss substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t mix = seed;
  std::uint64_t a = splitmix64(mix);
  mix ^= index * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull;
  std::uint64_t b = splitmix64(mix);
  return Xoshiro256ss(a ^ (b + 0x9e3779b97f4a7c15ull));
}

inline double uniform01(Xoshiro256ss& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(Xoshiro256ss& g, std::uint64_t n) {
  // Rejection sampling on the top bits keeps the draw unbiased.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t v;
  do {
    v = g();
  } while (v > limit);
  return v % n;
}

/// Deterministic Box-Muller pair source (std::normal_distribution is
/// implementation-defined, which would break reproducibility contracts).
class NormalSource {
 public:
  double operator()(Xoshiro256ss& g) {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = uniform01(g), u2 = uniform01(g);
    while (u1 <= 1e-300) u1 = uniform01(g);
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

 private:
  bool have_ = false;
  double spare_ = 0.0;
};

/// Uniform point in the spherical shell with volumes [lo_vol, hi_vol] of
/// balls centered at the origin (lo_vol = 0 gives the full ball).
std::vector<double> uniform_in_shell(Xoshiro256ss& g, int d, double lo_radius, double hi_radius);

}  // namespace rogers::rng
