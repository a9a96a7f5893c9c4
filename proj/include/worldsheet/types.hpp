#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace worldsheet {

// Spatial dimensions up to 6 are stored inline; no heap traffic in the hot loops.
inline constexpr int kMaxDim = 6;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates an operation's precondition (bad domain, wrong dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not certify its result (under-resolution, failed solve).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double residual)
      : NumericalError(what + " (achieved residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

inline Vec unit_vector(int dim, int axis) {
  Vec v = Vec::Zero(dim);
  v[axis] = 1.0;
  return v;
}

/// Wraps x into [0, period).
inline double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

/// Signed distance between x and y on the circle of length `period`, in (-period/2, period/2].
inline double circular_diff(double x, double y, double period) {
  double d = wrap(x - y, period);
  if (d > 0.5 * period) d -= period;
  return d;
}

/// Angle between nonzero vectors; stable near 0 and pi.
inline double angle_between(const Vec& u, const Vec& v) {
  const Vec p = u / u.norm(), q = v / v.norm();
  return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
}

}  // namespace worldsheet
