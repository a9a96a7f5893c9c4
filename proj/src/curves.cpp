#include "worldsheet/curves.hpp"

#include "worldsheet/quadrature.hpp"

#include <algorithm>

namespace worldsheet {

namespace {

constexpr double kCellTolerance = 1e-13;

}  // namespace

std::string to_string(TangentKind kind) {
  switch (kind) {
    case TangentKind::Analytic: return "analytic";
    case TangentKind::AngleFunction: return "angle_function";
    case TangentKind::SpherePath: return "sphere_path";
  }
  return "unknown";
}

double unit_tolerance(TangentKind kind) {
  return kind == TangentKind::SpherePath ? 1e-6 : 1e-9;
}

UnitSpeedCurve::UnitSpeedCurve(int dim, double period, Vec basepoint, TangentFn tangent,
                               Options options)
    : dim_(dim), period_(period), basepoint_(std::move(basepoint)), tangent_(std::move(tangent)) {
  if (dim < 2 || dim > kMaxDim) throw PreconditionError("curve dimension must be in [2, 6]");
  if (!(period > 0.0)) throw PreconditionError("curve period must be positive");
  if (basepoint_.size() != dim) throw PreconditionError("basepoint dimension mismatch");
  if (!tangent_) throw PreconditionError("missing tangent function");
  if (options.angle && dim != 2) throw PreconditionError("angle representation needs n = 2");
  options_ = std::make_shared<const Options>(std::move(options));
  build_table();
}

void UnitSpeedCurve::build_table() {
  auto table = std::make_shared<Table>();
  const int cells = std::max(8, options_->cells);
  std::vector<double> nodes;
  nodes.reserve(cells + options_->breaks.size() + 1);
  for (int i = 0; i <= cells; ++i) nodes.push_back(period_ * i / cells);
  for (double b : options_->breaks) {
    if (b > 0.0 && b < period_) nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-15; }),
              nodes.end());
  table->nodes = nodes;
  table->cumulative.resize(nodes.size());
  Vec acc = Vec::Zero(dim_);
  table->cumulative[0] = acc;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    acc += integrate_cell(nodes[i - 1], nodes[i]);
    table->cumulative[i] = acc;
  }
  drift_ = acc;
  table_ = std::move(table);
}

Vec UnitSpeedCurve::integrate_cell(double from, double to) const {
  if (options_->kind == TangentKind::SpherePath) {
    // 5-point Gauss-Legendre on the smooth interpolant within each sample cell.
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double half = 0.5 * (to - from);
    const double mid = 0.5 * (to + from);
    Vec sum = Vec::Zero(dim_);
    for (int i = 0; i < 5; ++i) sum += ws[i] * tangent_(mid + half * xs[i]);
    return half * sum;
  }
  return quad::adaptive_simpson<Vec>(tangent_, from, to, kCellTolerance * (to - from) + 1e-16);
}

Vec UnitSpeedCurve::eval(double x) const {
  if (options_->position) return options_->position(x);
  const double turns = std::floor(x / period_);
  double r = x - turns * period_;
  if (r >= period_) r = 0.0;
  const auto& nodes = table_->nodes;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  const std::size_t lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - nodes.begin() - 1));
  const double start = nodes[lo];
  Vec result = basepoint_ + turns * drift_ + table_->cumulative[lo];
  if (r > start) result += integrate_cell(start, r);
  return result;
}

Vec UnitSpeedCurve::tangent_derivative(double x) const {
  if (options_->derivative) return options_->derivative(x);
  const double h = 1e-5 * period_;
  return (tangent_(x + h) - tangent_(x - h)) / (2.0 * h);
}

UnitSpeedCurve UnitSpeedCurve::with_basepoint(const Vec& basepoint) const {
  UnitSpeedCurve copy = *this;
  if (options_->position) {
    Options opts = *options_;
    const Vec shift = basepoint - basepoint_;
    auto pos = opts.position;
    opts.position = [pos, shift](double x) { return Vec(pos(x) + shift); };
    copy.options_ = std::make_shared<const Options>(std::move(opts));
  }
  copy.basepoint_ = basepoint;
  return copy;
}

double UnitSpeedCurve::unit_speed_violation(int samples) const {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = period_ * i / samples;
    worst = std::max(worst, std::abs(tangent_(x).norm() - 1.0));
  }
  return worst;
}

UnitSpeedCurve UnitSpeedCurve::planar_circle(const Vec& u, const Vec& v, double period,
                                             double phase, const Vec& basepoint, int turns) {
  const int dim = static_cast<int>(u.size());
  if (v.size() != dim) throw PreconditionError("planar_circle: u, v dimension mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-12 || std::abs(v.norm() - 1.0) > 1e-12 ||
      std::abs(u.dot(v)) > 1e-12) {
    throw PreconditionError("planar_circle: u, v must be orthonormal");
  }
  const double omega = kTwoPi * turns / period;
  Options opts;
  opts.kind = TangentKind::Analytic;
  opts.smoothness = 100;
  opts.name = "planar_circle";
  opts.derivative = [u, v, omega, phase](double x) {
    const double th = omega * x + phase;
    return Vec(omega * (-std::sin(th) * u + std::cos(th) * v));
  };
  opts.position = [u, v, omega, phase, basepoint](double x) {
    const double th = omega * x + phase;
    return Vec(basepoint + ((std::sin(th) - std::sin(phase)) * u -
                            (std::cos(th) - std::cos(phase)) * v) / omega);
  };
  if (dim == 2 && std::abs(u[0] - 1.0) < 1e-15 && std::abs(v[1] - 1.0) < 1e-15) {
    opts.angle = AngleRep{[omega, phase](double x) { return omega * x + phase; },
                          [omega](double) { return omega; }, turns};
  }
  opts.spec = {{"kind", "planar_circle"},
               {"n", dim},
               {"period", period},
               {"params",
                {{"u", std::vector<double>(u.data(), u.data() + dim)},
                 {"v", std::vector<double>(v.data(), v.data() + dim)},
                 {"phase", phase},
                 {"turns", turns}}}};
  opts.cells = 16;
  auto tangent = [u, v, omega, phase](double x) {
    const double th = omega * x + phase;
    return Vec(std::cos(th) * u + std::sin(th) * v);
  };
  return UnitSpeedCurve(dim, period, basepoint, tangent, std::move(opts));
}

UnitSpeedCurve UnitSpeedCurve::unit_circle() {
  Vec base(2);
  base << 1.0, 0.0;
  return planar_circle(unit_vector(2, 0), unit_vector(2, 1), kTwoPi, kPi / 2, base);
}

UnitSpeedCurve UnitSpeedCurve::fourier_angle(double period, int winding, double phase,
                                             std::vector<double> cos_coeffs,
                                             std::vector<double> sin_coeffs,
                                             const Vec& basepoint) {
  const double w0 = kTwoPi / period;
  auto alpha = [=](double x) {
    double a = w0 * winding * x + phase;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) a += cos_coeffs[k] * std::cos(w0 * (k + 1) * x);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) a += sin_coeffs[k] * std::sin(w0 * (k + 1) * x);
    return a;
  };
  auto dalpha = [=](double x) {
    double a = w0 * winding;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) a -= cos_coeffs[k] * w0 * (k + 1) * std::sin(w0 * (k + 1) * x);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) a += sin_coeffs[k] * w0 * (k + 1) * std::cos(w0 * (k + 1) * x);
    return a;
  };
  UnitSpeedCurve c = from_angle(AngleRep{alpha, dalpha, winding}, period, basepoint,
                                "fourier_angle", 100);
  Options opts = *c.options_;
  opts.spec = {{"kind", "fourier_angle"},
               {"n", 2},
               {"period", period},
               {"params",
                {{"winding", winding}, {"phase", phase}, {"cos", cos_coeffs}, {"sin", sin_coeffs}}}};
  c.options_ = std::make_shared<const Options>(std::move(opts));
  return c;
}

UnitSpeedCurve UnitSpeedCurve::from_angle(AngleRep angle, double period, const Vec& basepoint,
                                          std::string name, int smoothness) {
  if (basepoint.size() != 2) throw PreconditionError("angle curves live in R^2");
  Options opts;
  opts.kind = TangentKind::AngleFunction;
  opts.smoothness = smoothness;
  opts.name = std::move(name);
  auto alpha = angle.alpha;
  auto dalpha = angle.dalpha;
  if (dalpha) {
    opts.derivative = [alpha, dalpha](double x) {
      const double a = alpha(x);
      Vec d(2);
      d << -std::sin(a), std::cos(a);
      return Vec(dalpha(x) * d);
    };
  }
  opts.angle = std::move(angle);
  auto tangent = [alpha](double x) {
    const double a = alpha(x);
    Vec t(2);
    t << std::cos(a), std::sin(a);
    return t;
  };
  return UnitSpeedCurve(2, period, basepoint, tangent, std::move(opts));
}

UnitSpeedCurve UnitSpeedCurve::fourier_field(double period, std::vector<int> harmonics,
                                             std::vector<Vec> cos_coeffs,
                                             std::vector<Vec> sin_coeffs,
                                             const Vec& basepoint) {
  const int dim = static_cast<int>(basepoint.size());
  if (harmonics.size() != cos_coeffs.size() || harmonics.size() != sin_coeffs.size()) {
    throw PreconditionError("fourier_field: coefficient count mismatch");
  }
  const double w0 = kTwoPi / period;
  auto field = [=](double x, Vec& w, Vec& dw) {
    w = Vec::Zero(dim);
    dw = Vec::Zero(dim);
    for (std::size_t j = 0; j < harmonics.size(); ++j) {
      const double f = w0 * harmonics[j];
      const double c = std::cos(f * x), s = std::sin(f * x);
      w += c * cos_coeffs[j] + s * sin_coeffs[j];
      dw += f * (-s * cos_coeffs[j] + c * sin_coeffs[j]);
    }
  };
  Options opts;
  opts.kind = TangentKind::Analytic;
  opts.smoothness = 100;
  opts.name = "fourier_field";
  opts.derivative = [field](double x) {
    Vec w, dw;
    field(x, w, dw);
    const double r = w.norm();
    return Vec((dw - (w.dot(dw) / (r * r)) * w) / r);
  };
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t j = 0; j < harmonics.size(); ++j) {
    coeffs.push_back({{"k", harmonics[j]},
                      {"cos", std::vector<double>(cos_coeffs[j].data(), cos_coeffs[j].data() + dim)},
                      {"sin", std::vector<double>(sin_coeffs[j].data(), sin_coeffs[j].data() + dim)}});
  }
  opts.spec = {{"kind", "fourier_field"}, {"n", dim}, {"period", period},
               {"params", {{"terms", coeffs}}}};
  opts.cells = 256;
  auto tangent = [field](double x) {
    Vec w, dw;
    field(x, w, dw);
    return Vec(w / w.norm());
  };
  return UnitSpeedCurve(dim, period, basepoint, tangent, std::move(opts));
}

UnitSpeedCurve UnitSpeedCurve::sphere_path(std::vector<Vec> samples, double period,
                                           const Vec& basepoint) {
  const int n = static_cast<int>(samples.size());
  if (n < 8) throw PreconditionError("sphere_path needs at least 8 samples");
  const int dim = static_cast<int>(basepoint.size());
  for (auto& s : samples) {
    if (s.size() != dim) throw PreconditionError("sphere_path sample dimension mismatch");
    const double r = s.norm();
    if (std::abs(r - 1.0) > 1e-3) throw PreconditionError("sphere_path samples must be unit vectors");
    s /= r;
  }
  auto data = std::make_shared<const std::vector<Vec>>(std::move(samples));
  const double h = period / n;
  // Catmull-Rom on the raw samples, normalized onto the sphere.
  auto interp = [data, h, n](double x, Vec* deriv) {
    const auto& p = *data;
    double u = x / h;
    const double fl = std::floor(u);
    const double tau = u - fl;
    const long long i0 = static_cast<long long>(fl);
    auto at = [&](long long i) -> const Vec& { return p[((i % n) + n) % n]; };
    const Vec& pm = at(i0 - 1);
    const Vec& p0 = at(i0);
    const Vec& p1 = at(i0 + 1);
    const Vec& p2 = at(i0 + 2);
    const Vec m0 = 0.5 * (p1 - pm);
    const Vec m1 = 0.5 * (p2 - p0);
    const double t2 = tau * tau, t3 = t2 * tau;
    const Vec q = (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + tau) * m0 +
                  (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
    const double r = q.norm();
    if (deriv) {
      const Vec dq = ((6 * t2 - 6 * tau) * p0 + (3 * t2 - 4 * tau + 1) * m0 +
                      (-6 * t2 + 6 * tau) * p1 + (3 * t2 - 2 * tau) * m1) / h;
      *deriv = (dq - (q.dot(dq) / (r * r)) * q) / r;
    }
    return Vec(q / r);
  };
  Options opts;
  opts.kind = TangentKind::SpherePath;
  opts.smoothness = 1;
  opts.name = "sphere_path";
  opts.derivative = [interp](double x) {
    Vec d;
    interp(x, &d);
    return d;
  };
  opts.cells = n;
  nlohmann::json js = nlohmann::json::array();
  for (const auto& s : *data) js.push_back(std::vector<double>(s.data(), s.data() + dim));
  opts.spec = {{"kind", "sphere_path"}, {"n", dim}, {"period", period}, {"samples", js}};
  auto tangent = [interp](double x) { return interp(x, nullptr); };
  return UnitSpeedCurve(dim, period, basepoint, tangent, std::move(opts));
}

ClosureReport closure_defect(const UnitSpeedCurve& curve) {
  ClosureReport rep;
  rep.defect = (curve.eval(curve.period()) - curve.eval(0.0)).norm();
  rep.closed = rep.defect <= 1e-6 * curve.period();
  return rep;
}

CurveSamples sample_curve(const UnitSpeedCurve& curve, int m) {
  CurveSamples out;
  out.x.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double x = curve.period() * i / m;
    out.x.push_back(x);
    out.position.push_back(curve.eval(x));
    out.tangent.push_back(curve.tangent(x));
  }
  return out;
}

}  // namespace worldsheet
