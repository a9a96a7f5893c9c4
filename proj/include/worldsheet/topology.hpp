#pragma once

#include "worldsheet/gauge.hpp"

#include <functional>
#include <span>
#include <vector>

namespace worldsheet {

inline constexpr double kDiagramEps = 1e-4;

/// The curves a' and -b' on S^{n-1}; the gauge is a global immersion iff they are disjoint.
struct SphereDiagram {
  int dim = 0;
  double period = 0.0;
  std::vector<Vec> curve_a;   // a'(x_i)
  std::vector<Vec> curve_mb;  // -b'(x_i)
  double min_distance = 0.0;  // min |a'(s) + b'(sigma)|
  double s_min = 0.0, sigma_min = 0.0;
  bool disjoint = false;
  std::function<Vec(double)> a_fn, mb_fn;  // for resampling
};

SphereDiagram diagram(const OrthogonalGauge& g, int m = 1024);

/// Diagram of two explicit closed spherical curves, each parametrized over [0, period).
SphereDiagram diagram(std::function<Vec(double)> a, std::function<Vec(double)> mb, int dim,
                      double period, int m = 1024);

struct WindingReport {
  int winding = 0;
  double raw = 0.0;             // unrounded planar winding
  Vec center, second_center;    // projection centers
  int second_winding = 0;
  double clearance = 0.0;       // angular clearance of the first center from both curves
};

/// Winding number (n = 3) of a' around the image of -b' after stereographic projection from
/// the point of S^2 farthest from both curves; checked against a second center and against
/// sample doubling.
WindingReport winding_report(const SphereDiagram& d);
int winding_number(const SphereDiagram& d);

/// Planar winding number of the closed polygon `curve` around `p`.
double planar_winding(std::span<const Vec> curve, const Vec& p);

struct LinkingReport {
  int linking = 0;     // signed, parameter-increasing orientation on both curves
  double integral = 0.0;
  double residual = 0.0;  // |integral - linking|
  Vec center;
};

/// Gauss linking integral of two closed polygons in R^3 (midpoint rule on segment pairs).
double gauss_linking_integral(std::span<const Vec> c1, std::span<const Vec> c2);

/// Linking number (n = 4) of a' and -b' in S^3 after stereographic projection.
LinkingReport linking_report(const SphereDiagram& d);
int linking_number(const SphereDiagram& d);

struct PerturbationOptions {
  double epsilon = 0.05;
  int trials = 50;
  unsigned seed = 1;
  int modes = 8;
  int grid_n = 256;
  int threads = 0;
};

struct PerturbationReport {
  double epsilon = 0.0;
  int trials = 0;
  int smooth = 0, singular = 0, discarded = 0;
  double margin_min = 0.0, margin_max = 0.0, margin_mean = 0.0;
  std::vector<double> margins;
};

/// Tangent of `c` perturbed by a random band-limited field of C^1 size <= epsilon,
/// renormalized and re-closed to the original drift. Throws NumericalError if the closure
/// defect exceeds 0.1.
UnitSpeedCurve perturb_curve(const UnitSpeedCurve& c, double epsilon, unsigned seed, int modes = 8);

OrthogonalGauge perturb_gauge(const OrthogonalGauge& g, double epsilon, unsigned seed, int modes = 8);

PerturbationReport genericity_probe(const OrthogonalGauge& g, const PerturbationOptions& opt = {});

/// Number of singular components per fundamental domain (n = 3), requiring each to be a
/// transversal intersection of a' with -b'.
int transversal_count(const OrthogonalGauge& g, int grid_n = 512);

}  // namespace worldsheet
