#pragma once

#include "worldsheet/types.hpp"

#include <functional>

namespace worldsheet::quad {

namespace detail {

template <typename T>
double magnitude(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(v);
  } else {
    return v.template lpNorm<Eigen::Infinity>();
  }
}

template <typename T, typename F>
T simpson_step(const F& f, double a, double b, const T& fa, const T& fm, const T& fb,
               const T& whole, double tol, int depth, double& worst) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  const double err = magnitude(delta);
  if (err <= 15.0 * tol || b - a < 1e-14) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    worst = std::max(worst, err);
    return left + right + delta / 15.0;
  }
  return simpson_step<T>(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, worst) +
         simpson_step<T>(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, worst);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// Works for scalar and Eigen vector valued integrands.
/// Throws QuadratureError if the recursion limit is reached before the tolerance is met.
template <typename T, typename F>
T adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 40) {
  const T fa = f(a);
  const T fb = f(b);
  const T fm = f(0.5 * (a + b));
  if (a == b) return T(0.0 * fa);
  const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double worst = 0.0;
  T result = detail::simpson_step<T>(f, a, b, fa, fm, fb, whole, tol, max_depth, worst);
  if (worst > 0.0) {
    throw QuadratureError("adaptive Simpson did not reach tolerance", worst);
  }
  return result;
}

/// Composite rule on a fixed uniform grid for periodic integrands (trapezoid == spectral here).
template <typename T, typename F>
T periodic_trapezoid(const F& f, double period, int nodes) {
  T sum = f(0.0);
  for (int i = 1; i < nodes; ++i) sum += f(period * i / nodes);
  return sum * (period / nodes);
}

}  // namespace worldsheet::quad
