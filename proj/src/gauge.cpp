#include "worldsheet/gauge.hpp"

#include "worldsheet/quadrature.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace worldsheet {

namespace {

constexpr double kSubluminalMargin = 1e-9;
constexpr double kImmersionFloor = 1e-6;

double speed_density(const AdmissibleCouple& c, double x) {
  const double v2 = c.v0(x).squaredNorm();
  return c.dgamma0(x).norm() / std::sqrt(1.0 - v2);
}

void require_admissible(const AdmissibleCouple& c) {
  if (!c.gamma0 || !c.dgamma0 || !c.v0) throw PreconditionError("couple: missing gamma0, gamma0' or v0");
  const CoupleCheck chk = check_couple(c);
  if (chk.max_speed >= 1.0 - kSubluminalMargin) {
    throw PreconditionError("velocity not uniformly subluminal");
  }
  if (chk.min_immersion <= kImmersionFloor) throw PreconditionError("gamma0 is not an immersion");
  if (chk.max_orthogonality > 1e-9) throw PreconditionError("v0 is not orthogonal to gamma0'");
}

// 5-point Gauss-Legendre on [a, b].
double gauss5(const std::function<double(double)>& f, double a, double b) {
  static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += ws[i] * f(m + h * xs[i]);
  return h * s;
}

}  // namespace

CoupleCheck check_couple(const AdmissibleCouple& c, int samples) {
  CoupleCheck r;
  r.min_immersion = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = c.period * i / samples;
    const Vec dg = c.dgamma0(x);
    const Vec v = c.v0(x);
    r.max_orthogonality = std::max(r.max_orthogonality, std::abs(v.dot(dg)));
    r.max_speed = std::max(r.max_speed, v.norm());
    r.min_immersion = std::min(r.min_immersion, dg.norm());
    r.max_normalization = std::max(r.max_normalization, std::abs(dg.squaredNorm() + v.squaredNorm() - 1.0));
  }
  r.admissible = r.max_orthogonality <= 1e-9 && r.max_speed < 1.0 && r.min_immersion > kImmersionFloor;
  r.normalized = r.admissible && r.max_normalization <= 1e-9;
  return r;
}

double period_E0(const AdmissibleCouple& c) {
  require_admissible(c);
  auto f = [&c](double x) { return speed_density(c, x); };
  // Split into panels so the absolute tolerance is met comfortably on smooth data.
  const int panels = 64;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += quad::adaptive_simpson<double>(f, c.period * i / panels, c.period * (i + 1) / panels,
                                          1e-10 / panels);
  }
  return sum;
}

AdmissibleCouple normalize(const AdmissibleCouple& c, int nodes) {
  require_admissible(c);
  auto density = [c](double x) { return speed_density(c, x); };
  struct Table {
    std::vector<double> x, phi, slope;
    double L = 0.0, E0 = 0.0;
  };
  auto tab = std::make_shared<Table>();
  tab->L = c.period;
  tab->x.resize(nodes + 1);
  tab->phi.resize(nodes + 1);
  tab->slope.resize(nodes + 1);
  double acc = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double x = c.period * i / nodes;
    if (i > 0) acc += quad::adaptive_simpson<double>(density, tab->x[i - 1], x, 1e-15);
    tab->x[i] = x;
    tab->phi[i] = acc;
    tab->slope[i] = 1.0 / density(x);
  }
  tab->E0 = acc;

  // lambda = phi^{-1}: cubic Hermite with exact slopes, then Newton polish on phi itself.
  auto lambda = [tab, density](double y) {
    const double turns = std::floor(y / tab->E0);
    const double r = y - turns * tab->E0;
    const auto& phi = tab->phi;
    auto it = std::upper_bound(phi.begin(), phi.end(), r);
    std::size_t i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - phi.begin() - 1, 0,
                                                                        static_cast<std::ptrdiff_t>(phi.size()) - 2));
    const double h = phi[i + 1] - phi[i];
    const double u = (r - phi[i]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    double x = h00 * tab->x[i] + h10 * h * tab->slope[i] + h01 * tab->x[i + 1] +
               h11 * h * tab->slope[i + 1];
    for (int it2 = 0; it2 < 2; ++it2) {
      const double val = phi[i] + gauss5(density, tab->x[i], x);
      x -= (val - r) / density(x);
    }
    return x + turns * tab->L;
  };

  AdmissibleCouple out;
  out.dim = c.dim;
  out.period = tab->E0;
  auto g = c.gamma0, dg = c.dgamma0, v = c.v0, dv = c.dv0, ddg = c.ddgamma0;
  out.gamma0 = [g, lambda](double y) { return g(lambda(y)); };
  out.v0 = [v, lambda](double y) { return v(lambda(y)); };
  out.dgamma0 = [dg, v, lambda](double y) {
    const double x = lambda(y);
    const Vec d = dg(x);
    // lambda' = sqrt(1 - |v0|^2) / |gamma0'| makes the normalization exact pointwise.
    return Vec(d * (std::sqrt(1.0 - v(x).squaredNorm()) / d.norm()));
  };
  if (dv) {
    out.dv0 = [dv, dg, v, lambda](double y) {
      const double x = lambda(y);
      return Vec(dv(x) * (std::sqrt(1.0 - v(x).squaredNorm()) / dg(x).norm()));
    };
  }
  out.spec = {{"normalized_from", c.spec}};
  return out;
}

double min_tangent_sum(const UnitSpeedCurve& a, const UnitSpeedCurve& b, int samples) {
  const double P = a.period(), h = P / samples;
  auto f = [&](double x) { return (a.tangent(x) + b.tangent(x)).norm(); };
  std::vector<double> v(samples);
  for (int i = 0; i < samples; ++i) v[i] = f(h * i);
  double best = *std::min_element(v.begin(), v.end());
  // A transversal zero between samples shows up as a sampled value of order h; refine every
  // such local minimum by golden-section search on its two neighbouring cells.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < samples; ++i) {
    const double here = v[i], left = v[(i + samples - 1) % samples], right = v[(i + 1) % samples];
    if (here > left || here > right || here > 10.0 * h) continue;
    double lo = h * (i - 1), hi = h * (i + 1);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo), f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * P; ++it) {
      if (f1 < f2) {
        hi = x2, x2 = x1, f2 = f1, x1 = hi - gr * (hi - lo), f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2, x2 = lo + gr * (hi - lo), f2 = f(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

OrthogonalGauge make_gauge(UnitSpeedCurve a, UnitSpeedCurve b, std::string name, int samples) {
  if (a.dim() != b.dim()) throw PreconditionError("gauge: a and b have different dimensions");
  if (std::abs(a.period() - b.period()) > 1e-12 * a.period()) {
    throw PreconditionError("gauge: a and b must share the period E0");
  }
  if (min_tangent_sum(a, b, samples) <= 1e-6) {
    throw PreconditionError("gauge: a' + b' vanishes somewhere (not in X)");
  }
  const double E0 = a.period();
  const bool periodic = (a.drift() + b.drift()).norm() <= 1e-6;
  return OrthogonalGauge{std::move(a), std::move(b), E0, periodic, std::move(name)};
}

OrthogonalGauge gauge_from_couple(const AdmissibleCouple& c, std::string name) {
  const CoupleCheck chk = check_couple(c);
  if (chk.max_normalization > 1e-6) {
    throw PreconditionError("couple is not normalized: call normalize first");
  }
  auto dg = c.dgamma0, v = c.v0, ddg = c.ddgamma0, dv = c.dv0;
  UnitSpeedCurve::Options oa, ob;
  oa.name = name + ".a";
  ob.name = name + ".b";
  oa.kind = ob.kind = TangentKind::Analytic;
  oa.smoothness = ob.smoothness = 2;
  if (ddg && dv) {
    oa.derivative = [ddg, dv](double x) { return Vec(ddg(x) + dv(x)); };
    ob.derivative = [ddg, dv](double x) { return Vec(ddg(x) - dv(x)); };
  }
  oa.spec = {{"kind", "couple_half"}, {"sign", 1}, {"couple", c.spec}};
  ob.spec = {{"kind", "couple_half"}, {"sign", -1}, {"couple", c.spec}};
  const Vec base = c.gamma0(0.0);
  UnitSpeedCurve a(c.dim, c.period, base, [dg, v](double x) { return Vec(dg(x) + v(x)); }, oa);
  UnitSpeedCurve b(c.dim, c.period, base, [dg, v](double x) { return Vec(dg(x) - v(x)); }, ob);
  const double tol = 1e-9;
  if (a.unit_speed_violation(4096) > tol || b.unit_speed_violation(4096) > tol) {
    throw NumericalError("gauge_from_couple: |a'| or |b'| deviates from 1");
  }
  return make_gauge(std::move(a), std::move(b), std::move(name));
}

AdmissibleCouple couple_from_gauge(const OrthogonalGauge& g) {
  if (min_tangent_sum(g.a, g.b) <= 1e-6) throw PreconditionError("couple_from_gauge: gauge not in X");
  AdmissibleCouple c;
  c.dim = g.dim();
  c.period = g.E0;
  const auto a = g.a, b = g.b;
  c.gamma0 = [a, b](double x) { return Vec(0.5 * (a.eval(x) + b.eval(x))); };
  c.dgamma0 = [a, b](double x) { return Vec(0.5 * (a.tangent(x) + b.tangent(x))); };
  c.v0 = [a, b](double x) { return Vec(0.5 * (a.tangent(x) - b.tangent(x))); };
  c.ddgamma0 = [a, b](double x) {
    return Vec(0.5 * (a.tangent_derivative(x) + b.tangent_derivative(x)));
  };
  c.dv0 = [a, b](double x) { return Vec(0.5 * (a.tangent_derivative(x) - b.tangent_derivative(x))); };
  c.spec = {{"from_gauge", g.name}};
  return c;
}

double equivalence_defect(const OrthogonalGauge& g, const OrthogonalGauge& h, double x0,
                          const Vec& z0, int s0, int samples) {
  if (s0 != 1 && s0 != -1) throw PreconditionError("equivalence_defect: s0 must be +-1");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = h.E0 * i / samples;
    const double y = s0 * x + x0;
    worst = std::max(worst, (h.a.eval(x) - g.a.eval(y) - z0).norm());
    worst = std::max(worst, (h.b.eval(x) - g.b.eval(y) + z0).norm());
  }
  return worst;
}

namespace couple {

namespace {

Vec left_normal(const Vec& t) {
  Vec n(2);
  n << -t[1], t[0];
  return n;
}

}  // namespace

AdmissibleCouple planar_with_normal_speed(double period, AdmissibleCouple::Fn gamma0,
                                          AdmissibleCouple::Fn dgamma0,
                                          AdmissibleCouple::Fn ddgamma0,
                                          std::function<double(double)> speed,
                                          std::function<double(double)> dspeed) {
  AdmissibleCouple c;
  c.dim = 2;
  c.period = period;
  c.gamma0 = gamma0;
  c.dgamma0 = dgamma0;
  c.ddgamma0 = ddgamma0;
  c.v0 = [dgamma0, speed](double x) {
    const Vec d = dgamma0(x);
    return Vec(speed(x) * left_normal(d / d.norm()));
  };
  if (ddgamma0 && dspeed) {
    c.dv0 = [dgamma0, ddgamma0, speed, dspeed](double x) {
      const Vec d = dgamma0(x);
      const double r = d.norm();
      const Vec T = d / r;
      const Vec dT = (ddgamma0(x) - T.dot(ddgamma0(x)) * T) / r;
      return Vec(dspeed(x) * left_normal(T) + speed(x) * left_normal(dT));
    };
  }
  return c;
}

AdmissibleCouple circle(double radius, double inward_speed) {
  auto g = [radius](double x) {
    Vec p(2);
    p << radius * std::cos(x), radius * std::sin(x);
    return p;
  };
  auto dg = [radius](double x) {
    Vec p(2);
    p << -radius * std::sin(x), radius * std::cos(x);
    return p;
  };
  auto ddg = [radius](double x) {
    Vec p(2);
    p << -radius * std::cos(x), -radius * std::sin(x);
    return p;
  };
  AdmissibleCouple c = planar_with_normal_speed(
      kTwoPi, g, dg, ddg, [inward_speed](double) { return inward_speed; },
      [](double) { return 0.0; });
  c.spec = {{"gamma0", {{"kind", "circle"}, {"radius", radius}}},
            {"v0", {{"kind", inward_speed == 0.0 ? "zero" : "normal_scale"}, {"scale", inward_speed}}}};
  return c;
}

AdmissibleCouple random_fourier(int modes, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> rc(modes), rs(modes), sc(modes), ss(modes);
  for (int k = 0; k < modes; ++k) {
    rc[k] = 0.12 * u(rng) / (k + 1);
    rs[k] = 0.12 * u(rng) / (k + 1);
    sc[k] = 0.15 * u(rng) / (k + 1);
    ss[k] = 0.15 * u(rng) / (k + 1);
  }
  const double s0 = 0.3 * u(rng);
  // r(x) = 1 + sum rc cos + rs sin, with derivatives up to order 2.
  auto radial = [=](double x, int order) {
    double r = order == 0 ? 1.0 : 0.0;
    for (int k = 0; k < modes; ++k) {
      const double f = k + 1, c = std::cos(f * x), s = std::sin(f * x);
      if (order == 0) r += rc[k] * c + rs[k] * s;
      if (order == 1) r += f * (-rc[k] * s + rs[k] * c);
      if (order == 2) r += -f * f * (rc[k] * c + rs[k] * s);
    }
    return r;
  };
  auto speed = [=](double x) {
    double v = s0;
    for (int k = 0; k < modes; ++k) v += sc[k] * std::cos((k + 1) * x) + ss[k] * std::sin((k + 1) * x);
    return v;
  };
  auto dspeed = [=](double x) {
    double v = 0.0;
    for (int k = 0; k < modes; ++k) {
      const double f = k + 1;
      v += f * (-sc[k] * std::sin(f * x) + ss[k] * std::cos(f * x));
    }
    return v;
  };
  auto g = [radial](double x) {
    Vec p(2);
    p << radial(x, 0) * std::cos(x), radial(x, 0) * std::sin(x);
    return p;
  };
  auto dg = [radial](double x) {
    const double r = radial(x, 0), dr = radial(x, 1);
    Vec p(2);
    p << dr * std::cos(x) - r * std::sin(x), dr * std::sin(x) + r * std::cos(x);
    return p;
  };
  auto ddg = [radial](double x) {
    const double r = radial(x, 0), dr = radial(x, 1), d2r = radial(x, 2);
    Vec p(2);
    p << (d2r - r) * std::cos(x) - 2 * dr * std::sin(x), (d2r - r) * std::sin(x) + 2 * dr * std::cos(x);
    return p;
  };
  AdmissibleCouple c = planar_with_normal_speed(kTwoPi, g, dg, ddg, speed, dspeed);
  c.spec = {{"gamma0", {{"kind", "star_fourier"}, {"cos", rc}, {"sin", rs}}},
            {"v0", {{"kind", "fourier"}, {"mean", s0}, {"cos", sc}, {"sin", ss}}},
            {"seed", seed}};
  return c;
}

}  // namespace couple

}  // namespace worldsheet
