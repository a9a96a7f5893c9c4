#pragma once

#include "worldsheet/gauge.hpp"

#include <array>
#include <functional>
#include <vector>

namespace worldsheet {

// ---- Cantor functions with sign-changing derivative ----

/// Parameters of the two middle-ratio Cantor sets: the domain set C_beta (dimension nu) is
/// mapped onto C_alpha (dimension mu) with the even binary digits flipped.
struct CantorSpec {
  int k = 1;        // smoothness of f
  int m = 8;        // mu = 1/k - 1/m
  int depth = 8;    // truncation level L
  double mu = 0.0, nu = 0.0, delta = 0.0;
  double alpha = 0.0, beta = 0.0;

  /// Fills mu, delta = (1/mu - k)/2 (so nu = (k mu + 1)/2 < 1), alpha and beta.
  static CantorSpec make(int k, int depth = 8, int m = 8);
  void validate() const;
};

/// Closed interval C_sigma(i) for the binary word i (most significant digit first).
struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};
Interval cantor_interval(double sigma, unsigned word, int level);

/// Digit flip on even positions (1-based): i*_j = i_j for odd j, 1 - i_j for even j.
unsigned flip_even_digits(unsigned word, int level);

/// Depth-L truncation: f is constant on every level-L interval C_beta(i), equal to
/// scale * mid(C_alpha(i*)), and joins consecutive intervals across each gap by the degree
/// 2k+1 smoothstep, whose derivatives 1..k vanish at both ends. f' = 0 outside [0, 1].
class CantorFunction {
 public:
  explicit CantorFunction(const CantorSpec& spec);

  double operator()(double x) const { return eval(x, 0); }
  /// d^order f / dx^order, order <= 2k + 1.
  double eval(double x, int order) const;

  const CantorSpec& spec() const { return spec_; }
  double scale() const { return scale_; }          // chosen so max |f'| = 1/2
  double max_slope() const { return max_slope_; }  // max |f'| after scaling
  const std::vector<Interval>& intervals() const { return leaves_; }  // domain order
  const std::vector<double>& levels() const { return values_; }       // f on each leaf
  int gap_sign(int g) const;  // sign of f' on the gap after leaf g
  /// Midpoints of the level-L intervals of C_beta, the truncated sign-change set Sigma.
  std::vector<double> sigma_samples() const;
  /// Joins of the piecewise description (gap endpoints), ascending.
  std::vector<double> breaks() const;

 private:
  CantorSpec spec_;
  std::vector<Interval> leaves_;
  std::vector<double> values_;
  std::vector<double> poly_;  // smoothstep coefficients, ascending powers
  double scale_ = 1.0, max_slope_ = 0.0;
};

CantorFunction cantor_function(const CantorSpec& spec);

/// Sum over m = k+1..m_max of h_m f_m(2^{m+1}(x - 2^{-m})), where f_m uses mu = 1/k - 1/m and
/// h_m = 2^{-m} / |f_m|_{C^k}. Off by default; the single-mu function is used elsewhere.
class CantorSeries {
 public:
  CantorSeries(int k, int m_max, int depth);
  double eval(double x, int order = 0) const;

 private:
  int k_;
  std::vector<CantorFunction> terms_;
  std::vector<double> weights_;
  std::vector<int> ms_;
};

struct SharpExample {
  OrthogonalGauge gauge;
  CantorFunction f;
  double shift = 4.0;  // a(x) is the unshifted curve evaluated at x - shift
  std::vector<double> sigma;  // truncated Sigma in the unshifted parameter
  /// Predicted Sing* points psi(t, x) for x + t - shift in Sigma and |t - t_center| <= 1/2.
  std::vector<Vec> predicted;
  std::vector<std::array<double, 2>> predicted_tx;
  double t_center = 2.0;
};

/// n = 2 gauge with a = (f, g) on [0, 1] (g' = sqrt(1 - f'^2)), b = (0, -x) on [-1, 2],
/// period E0 = 8, closed by tangent-image padding arcs and shifted so that the gauge is
/// immersed at t = 0. `t_samples` sets the t-resolution of the predicted set.
SharpExample sharp_example_gauge(const CantorSpec& spec, int t_samples = 4097);

// ---- Nonuniqueness by reassembly of period-1 pieces ----

struct NonuniquenessPair {
  OrthogonalGauge id;
  OrthogonalGauge pi;
  double delta = 0.0;
  std::array<int, 3> permutation{0, 1, 2};
  std::vector<UnitSpeedCurve> a, b;  // the period-1 pieces
};

/// Six period-1 closed curves agreeing with x e1 on [-2 delta, 2 delta] and with no antipodal
/// tangent pairs, assembled into period-3 gauges for the identity and a transposition.
NonuniquenessPair nonuniqueness_pair(int n = 3, double delta = 0.05);

/// Same with a1 = a2 = a3: both gauges trace the same curve at every time.
NonuniquenessPair same_surface_family(int n = 3, double delta = 0.05);

/// Period-3 assembly x in [i-1, i) -> piece perm[i-1].
UnitSpeedCurve assemble(const std::vector<UnitSpeedCurve>& pieces, const std::array<int, 3>& perm,
                        const std::string& name);

/// Hausdorff distance between the slices at time t, sampled at m points (m divisible by 3
/// keeps the sample grids invariant under integer shifts).
double slice_distance(const OrthogonalGauge& g, const OrthogonalGauge& h, double t, int m = 3072);

// ---- Extinction ----

struct ExtinctionPair {
  OrthogonalGauge gauge1, gauge2;  // a = b = curve_i
  double tbar = 0.0;
  std::function<double(double)> s_map;  // s(x) = -tbar + (a1')^{-1}(a2'(x + tbar))
  /// gamma_1(t, s(x)) for t < tbar, gamma_2(t, x) for t >= tbar.
  Vec glued(double t, double x) const;
};

/// Both curves planar, centrally symmetric, uniformly convex (strictly increasing angle),
/// with the same period.
ExtinctionPair extinction_pair(const UnitSpeedCurve& c1, const UnitSpeedCurve& c2);

}  // namespace worldsheet
