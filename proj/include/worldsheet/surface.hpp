#pragma once

#include "worldsheet/gauge.hpp"

namespace worldsheet {

inline constexpr double kTimelikeThreshold = 1e-12;

struct SurfaceSample {
  double t = 0.0, x = 0.0;
  Vec gamma, gamma_x, gamma_t;
  double metric_det = 0.0;
  bool timelike = false;
};

/// gamma(t, x) = (a(x + t) + b(x - t)) / 2.
Vec gamma(const OrthogonalGauge& g, double t, double x);

struct Derivatives {
  Vec gamma_x;  // (a'(x+t) + b'(x-t)) / 2
  Vec gamma_t;  // (a'(x+t) - b'(x-t)) / 2
};
Derivatives derivatives(const OrthogonalGauge& g, double t, double x);

/// Determinant of the induced metric for signature (-, +, ..., +).
double metric_det(const OrthogonalGauge& g, double t, double x);
SurfaceSample sample(const OrthogonalGauge& g, double t, double x);

struct ConstraintReport {
  int nt = 0, nx = 0;
  // | |gx|^2 + |gt|^2 - 1 |. This is the form implied by gamma = (a(x+t) + b(x-t)) / 2
  // with |a'| = |b'| = 1, and by g = -|gx|^4.
  double max_norm_residual = 0.0;
  double max_orthogonality_residual = 0.0;  // | gx . gt |
  double max_det_mismatch = 0.0;         // | g + |gx|^4 |
  double h = 0.0;
  double max_wave_residual = 0.0;        // second differences of gamma, |gtt - gxx|
  /// Convergence order check on the central second-difference estimators of gamma_tt:
  /// max|D(h) - D(h/2)| / max|D(h/2) - D(h/4)|, which tends to 4 for a second-order scheme.
  double richardson_ratio = 0.0;
  bool second_order = false;             // ratio in [3.5, 4.5]
};

/// Residuals on an nt x nx grid over [0, E0)^2 with difference step h.
ConstraintReport constraint_residuals(const OrthogonalGauge& g, int nt = 200, int nx = 200,
                                      double h = 1e-3, int threads = 0);

struct SliceCurve {
  double t = 0.0;
  std::vector<double> x;
  std::vector<Vec> points;
  double closure_gap = 0.0;  // |gamma(t, E0) - gamma(t, 0)|
};

/// m equispaced samples of gamma(t, .) over [0, E0).
SliceCurve slice(const OrthogonalGauge& g, double t, int m);

/// max over a samples x samples grid of |gamma(t + E0, x) - gamma(t, x)|.
double time_periodicity_defect(const OrthogonalGauge& g, int samples = 50);

}  // namespace worldsheet
