#include "worldsheet/gauges.hpp"

#include "worldsheet/tangent_image.hpp"

#include <random>

namespace worldsheet::gauges {

namespace {

AngleRep shifted(const AngleRep& a, double dx, double dphase) {
  auto f = a.alpha;
  auto df = a.dalpha;
  AngleRep r;
  r.alpha = [f, dx, dphase](double x) { return f(x + dx) + dphase; };
  if (df) r.dalpha = [df, dx](double x) { return df(x + dx); };
  r.winding = a.winding;
  return r;
}

}  // namespace

OrthogonalGauge circle(int dim) {
  const Vec u = unit_vector(dim, 0), v = unit_vector(dim, 1);
  auto a = UnitSpeedCurve::planar_circle(u, v, kTwoPi, kPi / 2, u);
  return make_gauge(a, a, "circle");
}

OrthogonalGauge hopf(bool mirrored) {
  const Vec e1 = unit_vector(4, 0), e2 = unit_vector(4, 1), e3 = unit_vector(4, 2),
            e4 = unit_vector(4, 3);
  auto a = UnitSpeedCurve::planar_circle(e1, e2, kTwoPi, 0.0, -e2);
  // Mirroring reverses the orientation of b' within its plane.
  auto b = mirrored ? UnitSpeedCurve::planar_circle(e3, -e4, kTwoPi, 0.0, e4)
                    : UnitSpeedCurve::planar_circle(e3, e4, kTwoPi, 0.0, -e4);
  return make_gauge(a, b, mirrored ? "hopf_mirrored" : "hopf");
}

OrthogonalGauge angle_pair(AngleRep alpha, AngleRep beta, double period, const Vec& a0,
                           const Vec& b0, std::string name) {
  auto a = UnitSpeedCurve::from_angle(alpha, period, a0, name + ".a");
  auto b = UnitSpeedCurve::from_angle(shifted(beta, 0.0, kPi), period, b0, name + ".b");
  return make_gauge(a, b, std::move(name));
}

OrthogonalGauge full_slice() {
  const Vec e1 = unit_vector(2, 0), e2 = unit_vector(2, 1);
  // a' = e^{ix}, b' = -e^{i(x + pi/2)} = e^{i(x + 3 pi/2)}.
  auto a = UnitSpeedCurve::planar_circle(e1, e2, kTwoPi, 0.0, -e2);
  auto b = UnitSpeedCurve::planar_circle(e1, e2, kTwoPi, 1.5 * kPi, e1);
  return make_gauge(a, b, "full_slice");
}

OrthogonalGauge nonconvex(double amplitude) {
  auto a = UnitSpeedCurve::fourier_angle(kTwoPi, 1, kPi / 2, {}, {0.0, amplitude}, Vec::Zero(2));
  auto b = UnitSpeedCurve::from_angle(shifted(*a.angle(), kPi, kPi), kTwoPi, -a.eval(kPi),
                                      "nonconvex.b", 100);
  return make_gauge(a, b, "nonconvex");
}

namespace {

// Moves an antiperiodic-tangent curve so that a(x + P/2) = -a(x).
UnitSpeedCurve centered(const UnitSpeedCurve& c) {
  const Vec half = c.eval(0.5 * c.period()) - c.eval(0.0);
  return c.with_basepoint(-0.5 * half);
}

}  // namespace

OrthogonalGauge oval(double eps) {
  auto a = centered(UnitSpeedCurve::fourier_angle(kTwoPi, 1, kPi / 2, {}, {0.0, eps}, Vec::Zero(2)));
  return make_gauge(a, a, "oval");
}

OrthogonalGauge random_fourier(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rnd = [&](double scale) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = scale * gauss(rng);
    return v;
  };
  const std::vector<int> harmonics{1, 3, 5};
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec c1 = rnd(1.0);
    c1 /= c1.norm();
    Vec s1 = rnd(1.0);
    s1 -= s1.dot(c1) * c1;
    s1 /= s1.norm();
    const double s = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Vec> ca{c1, rnd(0.12 * s), rnd(0.06 * s)}, sa{s1, rnd(0.12 * s), rnd(0.06 * s)};
    std::vector<Vec> cb = ca, sb = sa;
    cb[0] += rnd(0.2 * s);
    sb[0] += rnd(0.2 * s);
    cb[1] += rnd(0.08 * s);
    sb[1] += rnd(0.08 * s);
    // Keep the fields well away from zero so the normalized tangents stay smooth.
    bool ok = true;
    for (int i = 0; i < 512 && ok; ++i) {
      const double x = kTwoPi * i / 512;
      Vec wa = Vec::Zero(dim), wb = Vec::Zero(dim);
      for (int j = 0; j < 3; ++j) {
        wa += std::cos(harmonics[j] * x) * ca[j] + std::sin(harmonics[j] * x) * sa[j];
        wb += std::cos(harmonics[j] * x) * cb[j] + std::sin(harmonics[j] * x) * sb[j];
      }
      ok = wa.norm() > 0.3 && wb.norm() > 0.3 && (wa / wa.norm() + wb / wb.norm()).norm() > 0.1;
    }
    if (!ok) continue;
    auto a = UnitSpeedCurve::fourier_field(kTwoPi, harmonics, ca, sa, Vec::Zero(dim));
    auto b = UnitSpeedCurve::fourier_field(kTwoPi, harmonics, cb, sb, Vec::Zero(dim));
    return make_gauge(a, b, "random_fourier_" + std::to_string(seed));
  }
  throw NumericalError("random_fourier: could not draw a regular gauge");
}

OrthogonalGauge perturbed_circle(unsigned seed, double eps) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rnd = [&](double scale) {
    Vec v(2);
    v << scale * gauss(rng), scale * gauss(rng);
    return v;
  };
  const std::vector<int> harmonics{1, 3};
  const Vec c1 = unit_vector(2, 1), s1 = -unit_vector(2, 0);  // (-sin x, cos x)
  auto a = UnitSpeedCurve::fourier_field(kTwoPi, harmonics, {c1, Vec::Zero(2)}, {s1, Vec::Zero(2)},
                                         unit_vector(2, 0));
  auto b = UnitSpeedCurve::fourier_field(kTwoPi, harmonics, {c1 + rnd(eps), rnd(eps)},
                                         {s1 + rnd(eps), rnd(eps)}, unit_vector(2, 0));
  return make_gauge(a, b, "perturbed_circle_" + std::to_string(seed));
}

OrthogonalGauge meridian_loops() {
  const Vec ex = unit_vector(3, 0), ey = unit_vector(3, 1), ez = unit_vector(3, 2);
  const double deg = kPi / 180.0;
  // Thin loop around the xz great circle, open at +e3.
  const auto c1 = spherical::arc_loop(ez, ex, 30 * deg, 330 * deg, 0.25);
  // Thin loop around the yz great circle, open at -e3. The loops meet the other's plane
  // only inside its opening, so a'(s) = -b'(sigma) never happens.
  const auto c2 = spherical::arc_loop(ez, ey, -150 * deg, 150 * deg, 0.25);
  TangentImageOptions opt;
  opt.smoothness = 3;
  const auto a = from_tangent_image(c1, opt);
  const auto b = from_tangent_image(spherical::negated(c2), opt);
  return make_gauge(a.curve, b.curve, "meridian_loops");
}

OrthogonalGauge two_crossings(double tilt) {
  const Vec e1 = unit_vector(3, 0), e2 = unit_vector(3, 1);
  Vec w(3);
  w << 0.0, std::cos(tilt), std::sin(tilt);
  auto a = UnitSpeedCurve::planar_circle(e1, e2, kTwoPi, 0.0, Vec::Zero(3));
  // Phase offset keeps a'(x) + b'(x) away from zero at equal parameters.
  auto b = UnitSpeedCurve::planar_circle(-e1, -w, kTwoPi, kPi / 2, Vec::Zero(3));
  return make_gauge(a, b, "two_crossings");
}

}  // namespace worldsheet::gauges
