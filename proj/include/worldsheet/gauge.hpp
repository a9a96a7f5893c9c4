#pragma once

#include "worldsheet/curves.hpp"

#include <functional>

namespace worldsheet {

/// Initial data (gamma0, v0) of period L: an immersed closed curve and a subluminal
/// velocity field orthogonal to it.
struct AdmissibleCouple {
  using Fn = std::function<Vec(double)>;
  int dim = 2;
  double period = kTwoPi;
  Fn gamma0;   // position
  Fn dgamma0;  // derivative gamma0'
  Fn v0;       // velocity
  Fn dv0;      // optional v0'
  Fn ddgamma0; // optional gamma0''
  nlohmann::json spec;
};

struct CoupleCheck {
  double max_orthogonality = 0.0;  // max |v0 . gamma0'|
  double max_speed = 0.0;          // max |v0|
  double min_immersion = 0.0;      // min |gamma0'|
  double max_normalization = 0.0;  // max | |gamma0'|^2 + |v0|^2 - 1 |
  bool admissible = false;
  bool normalized = false;
};

/// Samples the admissibility invariants on `samples` equispaced points.
CoupleCheck check_couple(const AdmissibleCouple& couple, int samples = 4096);

/// E0 = integral over one period of |gamma0'| / sqrt(1 - |v0|^2).
double period_E0(const AdmissibleCouple& couple);

/// Equivalent couple reparametrized so that |gamma0'|^2 + |v0|^2 = 1; new period E0.
AdmissibleCouple normalize(const AdmissibleCouple& couple, int nodes = 4096);

/// A pair of unit-speed curves with a common period; one extremal surface.
struct OrthogonalGauge {
  UnitSpeedCurve a;
  UnitSpeedCurve b;
  double E0 = 0.0;
  bool periodic = false;  // a', b', a + b periodic (membership in X_per)
  std::string name = "gauge";

  int dim() const { return a.dim(); }
};

/// Validates a, b (same dimension and period, a' + b' never vanishing on `samples` points).
OrthogonalGauge make_gauge(UnitSpeedCurve a, UnitSpeedCurve b, std::string name = "gauge",
                           int samples = 10000);

/// min over samples of |a'(x) + b'(x)|.
double min_tangent_sum(const UnitSpeedCurve& a, const UnitSpeedCurve& b, int samples = 10000);

/// a' = gamma0' + v0, b' = gamma0' - v0 with a(0) = b(0) = gamma0(0). Couple must be normalized.
OrthogonalGauge gauge_from_couple(const AdmissibleCouple& couple, std::string name = "gauge");

/// gamma0 = (a + b) / 2, v0 = (a' - b') / 2.
AdmissibleCouple couple_from_gauge(const OrthogonalGauge& g);

/// Checks c(x) = a(s0 x + x0) + z0 and d(x) = b(s0 x + x0) - z0 on sample points, s0 = +-1.
/// Returns the maximal deviation.
double equivalence_defect(const OrthogonalGauge& g, const OrthogonalGauge& h, double x0,
                          const Vec& z0, int s0, int samples = 512);

namespace couple {

/// Planar curve gamma0 with v0 = speed(x) * (left unit normal); speed evaluated pointwise.
/// Second derivatives (ddgamma0, dspeed) are optional and enable exact v0'.
AdmissibleCouple planar_with_normal_speed(double period, AdmissibleCouple::Fn gamma0,
                                          AdmissibleCouple::Fn dgamma0,
                                          AdmissibleCouple::Fn ddgamma0,
                                          std::function<double(double)> speed,
                                          std::function<double(double)> dspeed = {});
/// Circle of radius r parametrized on [0, 2 pi) with v0 = scale * inward normal.
AdmissibleCouple circle(double radius, double inward_speed = 0.0);
/// Star-shaped planar curve r(x)(cos x, sin x), r and normal speed random trigonometric
/// polynomials with `modes` modes; deterministic in the seed.
AdmissibleCouple random_fourier(int modes, unsigned seed);

}  // namespace couple

}  // namespace worldsheet
