#pragma once

#include <vector>

#include "rogers/rational.hpp"

namespace rogers {

double unit_ball_volume(int d);
double ball_volume(int d, double radius);
double radius_for_volume(int d, double volume);

enum class RegionKind { Ball, Annulus, StarScaled };

/// One origin-centered spherical shell, held by the exact volumes of its
/// inner and outer balls (lo = 0 gives a ball). Exact volumes keep the main
/// terms of the moment formulas in rational arithmetic.
struct Shell {
  Rat lo;
  Rat hi;
  bool contains_origin() const { return lo == 0; }
};

/// A list of regions, one per moment index. Balls must come with
/// nondecreasing volumes; annuli are arbitrary disjoint or nested shells;
/// star-scaled families are balls of volume t * phi. All regions here are
/// origin-symmetric; the asymmetric flag exists so q = 2 preconditions can
/// be exercised.
struct RegionFamily {
  RegionKind kind = RegionKind::Ball;
  int d = 2;
  std::vector<Shell> shells;
  bool symmetric = true;

  static RegionFamily balls(int d, std::vector<Rat> volumes);
  static RegionFamily star_scaled(int d, const Rat& base_volume, const std::vector<Rat>& ts);
  static RegionFamily annuli(int d, const std::vector<Shell>& shells);

  int k() const { return static_cast<int>(shells.size()); }
  const Rat& volume_hi(int i) const { return shells[i].hi; }
  Rat volume(int i) const { return shells[i].hi - shells[i].lo; }
  double radius_hi(int i) const;
  double radius_lo(int i) const;
};

/// Exact volume of the intersection of shells scaled by rational factors:
/// vol( intersect_i  s_i * Shell_i ) where s_i scales VOLUME (radius^d).
Rat scaled_shell_intersection_volume(const std::vector<Shell>& shells,
                                     const std::vector<Rat>& volume_scales);

}  // namespace rogers
