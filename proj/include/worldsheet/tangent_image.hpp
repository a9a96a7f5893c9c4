#pragma once

#include "worldsheet/curves.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace worldsheet {

/// A closed curve theta -> S^{n-1}, 2 pi periodic in theta.
struct SphericalCurve {
  int dim = 3;
  std::function<Vec(double)> value;
  std::function<Vec(double)> derivative;  // optional d/dtheta
  std::string name = "spherical";
};

namespace spherical {

/// cos(theta) u + sin(theta) v.
SphericalCurve great_circle(const Vec& u, const Vec& v);
/// Circle of angular radius rho around unit `center`, starting toward `toward`.
SphericalCurve small_circle(const Vec& center, const Vec& toward, double rho);
/// Thin closed loop hugging the arc of the great circle through u (angle 0) toward v,
/// covering angles [lo, hi]; width is the maximal angular offset from the arc.
SphericalCurve arc_loop(const Vec& u, const Vec& v, double lo, double hi, double width);
SphericalCurve rotated(const SphericalCurve& c, const Mat& rotation);
SphericalCurve negated(const SphericalCurve& c);
std::vector<Vec> sample(const SphericalCurve& c, int m);

}  // namespace spherical

/// Smoothstep of degree 2k+1 on [0,1]: derivatives 1..k vanish at both ends.
double plateau(double u, int k);
double plateau_derivative(double u, int k);

struct TangentImageOptions {
  int smoothness = 3;
  double period = kTwoPi;          // final parameter length
  double min_dwell = 1e-3;         // lower bound on each dwell (pre-scaling units)
  std::vector<double> forced_anchors;  // theta values that must be dwell points
  /// Require the dwell at forced anchor `dwell_anchor` to last at least `dwell_length`
  /// in final units.
  std::optional<int> dwell_anchor;
  double dwell_length = 0.0;
  /// Shift the parameter so the dwell at this forced anchor is centered at x = 0.
  std::optional<int> center_anchor;
  /// Open variant: the curve has length `period` and displacement `displacement`
  /// instead of being closed. Starts and ends with a full dwell at forced anchor 0.
  std::optional<Vec> displacement;
  int image_samples = 2048;
  Vec basepoint;                   // empty means origin
};

struct TangentImageResult {
  UnitSpeedCurve curve;
  std::vector<double> anchors;          // theta values of the dwell points, ascending
  std::vector<double> dwell_start;      // final-unit parameter of each dwell start
  std::vector<double> dwell_length;     // final-unit length of each dwell
  double hausdorff = 0.0;               // sampled Image(a') vs Image(c)
  double closure = 0.0;                 // |integral a' - displacement|
};

/// Closed unit-speed curve whose tangent traces exactly the image of c, with dwells at
/// finitely many anchor points balancing the mean tangent. Throws PreconditionError
/// "convex hull does not contain origin" if no positive anchor combination exists.
TangentImageResult from_tangent_image(const SphericalCurve& c, const TangentImageOptions& options = {});

/// True iff 0 is a strictly positive combination of the given points (interior of the hull).
bool hull_contains_origin(const std::vector<Vec>& points, double margin = 1e-4);

}  // namespace worldsheet
