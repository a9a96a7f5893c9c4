#include "worldsheet/constructions.hpp"

#include "worldsheet/surface.hpp"

namespace worldsheet {

namespace {

void check_convex_symmetric(const UnitSpeedCurve& c, const char* which) {
  if (c.dim() != 2 || !c.angle()) throw PreconditionError(std::string(which) + ": need a planar curve with an angle function");
  if (c.angle()->winding != 1) throw PreconditionError(std::string(which) + ": angle must wind once");
  const double P = c.period();
  for (int i = 0; i < 4096; ++i) {
    const double x = P * i / 4096;
    if (!(c.angle()->dalpha(x) > 0.0)) throw PreconditionError(std::string(which) + ": not uniformly convex");
    if ((c.tangent(x + 0.5 * P) + c.tangent(x)).norm() > 1e-9)
      throw PreconditionError(std::string(which) + ": not centrally symmetric");
  }
}

// Same tangent, translated so that the curve is symmetric about the origin.
UnitSpeedCurve centered(const UnitSpeedCurve& c) {
  const Vec center = 0.5 * (c.eval(0.0) + c.eval(0.5 * c.period()));
  return c.with_basepoint(c.basepoint() - center);
}

// Solves alpha(y) = target for y; alpha is strictly increasing with alpha(y + P) = alpha(y) + 2 pi.
double invert_angle(const AngleRep& rep, double P, double target) {
  double y = P * (target - rep.alpha(0.0)) / kTwoPi;
  double lo = y, hi = y;
  while (rep.alpha(lo) > target) lo -= P;
  while (rep.alpha(hi) < target) hi += P;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * P; ++it) {
    const double f = rep.alpha(y) - target;
    if (f == 0.0) return y;
    (f < 0.0 ? lo : hi) = y;
    const double step = y - f / rep.dalpha(y);
    y = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    if (std::abs(f) < 1e-15) break;
  }
  return y;
}

}  // namespace

ExtinctionPair extinction_pair(const UnitSpeedCurve& c1, const UnitSpeedCurve& c2) {
  check_convex_symmetric(c1, "extinction_pair curve1");
  check_convex_symmetric(c2, "extinction_pair curve2");
  if (std::abs(c1.period() - c2.period()) > 1e-12) throw PreconditionError("extinction_pair: periods differ");
  const auto a1 = centered(c1), a2 = centered(c2);
  const double P = a1.period(), tbar = 0.25 * P;
  const AngleRep r1 = *a1.angle(), r2 = *a2.angle();

  // Pick the branch of the inverse that keeps s(0) closest to 0; s is then continuous in x.
  const double y0 = invert_angle(r1, P, r2.alpha(tbar));
  const double shift = std::round((y0 - tbar) / P);
  const double target_shift = -kTwoPi * shift;
  auto s_map = [r1, r2, P, tbar, target_shift](double x) {
    return invert_angle(r1, P, r2.alpha(x + tbar) + target_shift) - tbar;
  };
  return {make_gauge(a1, a1, "extinction_1"), make_gauge(a2, a2, "extinction_2"), tbar, s_map};
}

Vec ExtinctionPair::glued(double t, double x) const {
  return t < tbar ? gamma(gauge1, t, s_map(x)) : gamma(gauge2, t, x);
}

}  // namespace worldsheet
