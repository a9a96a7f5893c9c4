#pragma once

#include "worldsheet/gauge.hpp"

namespace worldsheet::gauges {

/// a = b = unit circle in the e1, e2 plane of R^dim; gamma(t, x) = cos t (cos x, sin x, 0, ...).
OrthogonalGauge circle(int dim = 2);

/// n = 4: a' = (cos x, sin x, 0, 0), b' = (0, 0, cos x, sin x). Images lie in orthogonal planes.
OrthogonalGauge hopf(bool mirrored = false);

/// Planar gauge from angle functions: a' = e^{i alpha}, -b' = e^{i beta}.
OrthogonalGauge angle_pair(AngleRep alpha, AngleRep beta, double period, const Vec& a0,
                           const Vec& b0, std::string name);

/// alpha(x) = x, beta(x) = x + pi/2: gamma_x vanishes on the whole slice t = pi/4.
OrthogonalGauge full_slice();

/// Planar gauge with a' = e^{i alpha}, alpha = x + A sin 2x (nonconvex for A > 1/2),
/// and b(x) = -a(x + E0/2).
OrthogonalGauge nonconvex(double amplitude = 0.8);

/// a = b = centrally symmetric oval with tangent angle x + eps sin 2x + pi/2.
OrthogonalGauge oval(double eps = 0.2);

/// Closed gauge with trigonometric tangent fields of odd harmonics (1, 3, 5), so that
/// a'(x + pi) = -a'(x) and both curves close. b is a perturbation of a.
OrthogonalGauge random_fourier(int dim, unsigned seed);

/// a = unit circle, b a closed odd-harmonic perturbation of it of size eps.
OrthogonalGauge perturbed_circle(unsigned seed, double eps = 0.15);

/// n = 3: a' traces a thin loop around a long arc of the xz great circle through -e1,
/// -b' a thin loop around an equatorial arc through +e1. The loops are disjoint.
OrthogonalGauge meridian_loops();

/// n = 3: a' = equator, -b' = the great circle tilted by `tilt` about e1. Two transversal
/// diagram crossings at +-e1.
OrthogonalGauge two_crossings(double tilt = kPi / 3);

}  // namespace worldsheet::gauges
