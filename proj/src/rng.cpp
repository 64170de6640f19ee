#include "rogers/rng.hpp"

#include <stdexcept>

namespace rogers::rng {

std::vector<double> uniform_in_shell(Xoshiro256ss& g, int d, double lo_radius, double hi_radius) {
  if (hi_radius <= 0 || hi_radius < lo_radius)
    throw std::invalid_argument("uniform_in_shell: bad radii");
  // Direction from a deterministic Gaussian source, radius by inverting the
  // volume CDF on [lo^d, hi^d].
  NormalSource normal;
  std::vector<double> x(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      x[i] = normal(g);
      norm2 += x[i] * x[i];
    }
  } while (norm2 == 0.0);
  double lo_d = std::pow(lo_radius, d);
  double hi_d = std::pow(hi_radius, d);
  double r = std::pow(lo_d + (hi_d - lo_d) * uniform01(g), 1.0 / d);
  double scale = r / std::sqrt(norm2);
  for (int i = 0; i < d; ++i) x[i] *= scale;
  return x;
}

}  // namespace rogers::rng
