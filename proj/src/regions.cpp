#include "rogers/regions.hpp"

#include <cmath>
#include <stdexcept>

namespace rogers {

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: d >= 1 required");
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double ball_volume(int d, double radius) {
  if (radius <= 0) throw std::invalid_argument("ball_volume: radius must be positive");
  return unit_ball_volume(d) * std::pow(radius, d);
}

double radius_for_volume(int d, double volume) {
  if (volume <= 0) throw std::invalid_argument("radius_for_volume: volume must be positive");
  return std::pow(volume / unit_ball_volume(d), 1.0 / d);
}

RegionFamily RegionFamily::balls(int d, std::vector<Rat> volumes) {
  RegionFamily f;
  f.kind = RegionKind::Ball;
  f.d = d;
  Rat prev = 0;
  for (auto& v : volumes) {
    if (v <= 0) throw std::invalid_argument("RegionFamily: volumes must be positive");
    if (v < prev) throw std::invalid_argument("RegionFamily: ball volumes must be nondecreasing");
    prev = v;
    f.shells.push_back(Shell{Rat(0), v});
  }
  return f;
}

RegionFamily RegionFamily::star_scaled(int d, const Rat& base_volume, const std::vector<Rat>& ts) {
  RegionFamily f;
  f.kind = RegionKind::StarScaled;
  f.d = d;
  Rat prev = 0;
  for (auto& t : ts) {
    Rat v = t * base_volume;
    if (v <= 0 || t < prev)
      throw std::invalid_argument("RegionFamily: scaling parameters must be increasing positive");
    prev = t;
    f.shells.push_back(Shell{Rat(0), v});
  }
  return f;
}

RegionFamily RegionFamily::annuli(int d, const std::vector<Shell>& shells) {
  RegionFamily f;
  f.kind = RegionKind::Annulus;
  f.d = d;
  for (auto& s : shells) {
    if (s.lo < 0 || s.hi <= s.lo) throw std::invalid_argument("RegionFamily: bad shell");
    f.shells.push_back(s);
  }
  return f;
}

double RegionFamily::radius_hi(int i) const { return radius_for_volume(d, to_double(shells[i].hi)); }

double RegionFamily::radius_lo(int i) const {
  if (shells[i].lo == 0) return 0.0;
  return radius_for_volume(d, to_double(shells[i].lo));
}

Rat scaled_shell_intersection_volume(const std::vector<Shell>& shells,
                                     const std::vector<Rat>& volume_scales) {
  if (shells.empty()) throw std::invalid_argument("shell intersection: no shells");
  if (shells.size() != volume_scales.size())
    throw std::invalid_argument("shell intersection: scale count mismatch");
  Rat lo = 0, hi;
  bool first = true;
  for (size_t i = 0; i < shells.size(); ++i) {
    Rat slo = shells[i].lo * volume_scales[i];
    Rat shi = shells[i].hi * volume_scales[i];
    if (first) {
      lo = slo;
      hi = shi;
      first = false;
    } else {
      if (slo > lo) lo = slo;
      if (shi < hi) hi = shi;
    }
  }
  if (hi <= lo) return Rat(0);
  return hi - lo;
}

}  // namespace rogers
