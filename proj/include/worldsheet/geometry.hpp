#pragma once

#include "worldsheet/types.hpp"

#include <span>
#include <vector>

namespace worldsheet::geom {

/// Symmetric Hausdorff distance between two finite point sets (uniform-grid accelerated).
double hausdorff(std::span<const Vec> a, std::span<const Vec> b);

/// Directed distance sup_{p in a} dist(p, b).
double directed_hausdorff(std::span<const Vec> a, std::span<const Vec> b);

/// Quasi-uniform points on S^{dim-1} (Fibonacci lattice for dim 3, seeded Gaussian otherwise).
std::vector<Vec> sphere_points(int dim, int count, unsigned seed = 12345);

/// Stereographic projection from the pole q (unit vector) onto the hyperplane q^perp,
/// expressed in an orthonormal basis of q^perp. Result has dimension dim-1.
class Stereographic {
 public:
  explicit Stereographic(const Vec& pole);
  Vec operator()(const Vec& p) const;
  const Vec& pole() const { return pole_; }

 private:
  Vec pole_;
  Mat basis_;  // (dim-1) x dim, rows orthonormal, orthogonal to pole
};

/// Rotation R with R * from = to, acting only in the plane spanned by from and to.
Mat rotation_taking(const Vec& from, const Vec& to);

}  // namespace worldsheet::geom
