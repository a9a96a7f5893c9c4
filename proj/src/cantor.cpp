#include "worldsheet/constructions.hpp"

#include "worldsheet/quadrature.hpp"
#include "worldsheet/surface.hpp"
#include "worldsheet/tangent_image.hpp"

namespace worldsheet {

CantorSpec CantorSpec::make(int k, int depth, int m) {
  if (k < 1 || m <= k) throw PreconditionError("cantor spec: need k >= 1 and m > k");
  CantorSpec s;
  s.k = k;
  s.m = m;
  s.depth = depth;
  s.mu = 1.0 / k - 1.0 / m;
  s.delta = 0.5 * (1.0 / s.mu - k);
  s.nu = (k + s.delta) * s.mu;
  s.alpha = 1.0 - 2.0 * std::pow(2.0, -1.0 / s.mu);
  s.beta = 1.0 - 2.0 * std::pow(2.0, -1.0 / s.nu);
  s.validate();
  return s;
}

void CantorSpec::validate() const {
  if (k < 1) throw PreconditionError("cantor spec: k must be positive");
  if (!(mu > 0.0 && mu < 1.0 / k)) throw PreconditionError("cantor spec: mu must lie in (0, 1/k)");
  if (!(delta > 0.0 && nu < 1.0 && std::abs((k + delta) * mu - nu) <= 1e-12)) {
    throw PreconditionError("cantor spec: need (k + delta) mu = nu < 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
    throw PreconditionError("cantor spec: ratios must lie in (0, 1)");
  }
  if (depth < 1 || depth > 20) throw PreconditionError("cantor spec: depth must be in [1, 20]");
  if (std::pow(0.5 * (1.0 - beta), depth) <= 1e-7) {
    throw PreconditionError("cantor spec: depth too large for float resolution");
  }
}

Interval cantor_interval(double sigma, unsigned word, int level) {
  double lo = 0.0, len = 1.0;
  for (int j = 1; j <= level; ++j) {
    if ((word >> (level - j)) & 1u) lo += len * 0.5 * (1.0 + sigma);
    len *= 0.5 * (1.0 - sigma);
  }
  return {lo, lo + len};
}

unsigned flip_even_digits(unsigned word, int level) {
  for (int j = 2; j <= level; j += 2) word ^= 1u << (level - j);
  return word;
}

namespace {

double poly_eval(const std::vector<double>& c, double u, int order) {
  double v = 0.0;
  for (int p = static_cast<int>(c.size()) - 1; p >= order; --p) {
    double coef = c[p];
    for (int q = 0; q < order; ++q) coef *= p - q;
    v = v * u + coef;
  }
  return v;
}

// Smoothstep S with S' proportional to u^k (1-u)^k, S(0) = 0, S(1) = 1.
std::vector<double> smoothstep(int k) {
  std::vector<double> c(2 * k + 2, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    c[k + j + 1] = (j % 2 ? -binom : binom) / (k + j + 1);
    binom = binom * (k - j) / (j + 1);
  }
  const double total = poly_eval(c, 1.0, 0);
  for (auto& v : c) v /= total;
  return c;
}

}  // namespace

CantorFunction::CantorFunction(const CantorSpec& spec) : spec_(spec), poly_(smoothstep(spec.k)) {
  spec_.validate();
  const int L = spec_.depth;
  const unsigned count = 1u << L;
  for (unsigned w = 0; w < count; ++w) {
    leaves_.push_back(cantor_interval(spec_.beta, w, L));
    values_.push_back(cantor_interval(spec_.alpha, flip_even_digits(w, L), L).mid());
  }
  const double peak = poly_eval(poly_, 0.5, 1);
  double slope = 0.0;
  for (unsigned g = 0; g + 1 < count; ++g) {
    slope = std::max(slope, std::abs(values_[g + 1] - values_[g]) / (leaves_[g + 1].lo - leaves_[g].hi) * peak);
  }
  scale_ = 0.5 / slope;
  for (auto& v : values_) v *= scale_;
  max_slope_ = 0.5;
}

double CantorFunction::eval(double x, int order) const {
  if (order < 0 || order > 2 * spec_.k + 1) throw PreconditionError("cantor function: derivative order out of range");
  if (x <= leaves_.front().hi) return order == 0 ? values_.front() : 0.0;
  if (x >= leaves_.back().lo) return order == 0 ? values_.back() : 0.0;
  const auto it = std::upper_bound(leaves_.begin(), leaves_.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo; });
  const std::size_t i = static_cast<std::size_t>(it - leaves_.begin()) - 1;
  if (x <= leaves_[i].hi) return order == 0 ? values_[i] : 0.0;
  const double x0 = leaves_[i].hi, width = leaves_[i + 1].lo - x0;
  const double u = (x - x0) / width, dv = values_[i + 1] - values_[i];
  if (order == 0) return values_[i] + dv * poly_eval(poly_, u, 0);
  return dv * poly_eval(poly_, u, order) / std::pow(width, order);
}

int CantorFunction::gap_sign(int g) const {
  const double d = values_.at(g + 1) - values_.at(g);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

std::vector<double> CantorFunction::sigma_samples() const {
  std::vector<double> out;
  for (const auto& iv : leaves_) out.push_back(iv.mid());
  return out;
}

std::vector<double> CantorFunction::breaks() const {
  std::vector<double> out;
  for (const auto& iv : leaves_) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  return out;
}

CantorFunction cantor_function(const CantorSpec& spec) { return CantorFunction(spec); }

CantorSeries::CantorSeries(int k, int m_max, int depth) : k_(k) {
  for (int m = k + 1; m <= m_max; ++m) {
    CantorFunction f(CantorSpec::make(k, depth, m));
    // C^k norm over the piecewise description: values plus derivative maxima over the gaps.
    double norm = 0.0;
    for (double v : f.levels()) norm = std::max(norm, std::abs(v));
    for (int j = 1; j <= k; ++j) {
      double mj = 0.0;
      const auto& iv = f.intervals();
      for (std::size_t g = 0; g + 1 < iv.size(); ++g) {
        for (int q = 0; q <= 32; ++q) {
          const double x = iv[g].hi + (iv[g + 1].lo - iv[g].hi) * q / 32.0;
          mj = std::max(mj, std::abs(f.eval(x, j)));
        }
      }
      norm += mj;
    }
    weights_.push_back(std::pow(2.0, -m) / norm);
    ms_.push_back(m);
    terms_.push_back(std::move(f));
  }
}

double CantorSeries::eval(double x, int order) const {
  double v = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double r = std::pow(2.0, ms_[i] + 1);
    v += weights_[i] * std::pow(r, order) * terms_[i].eval(r * (x - std::pow(2.0, -ms_[i])), order);
  }
  return v;
}

namespace {

constexpr double kSharpPeriod = 8.0;

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

}  // namespace

SharpExample sharp_example_gauge(const CantorSpec& spec, int t_samples) {
  const CantorFunction f(spec);
  const int k = spec.k;
  const double shift = 0.5 * kSharpPeriod;

  // Displacement of the Cantor part a|[0, 1] = (f, g).
  double gain = 0.0;
  {
    const auto br = f.breaks();
    std::vector<double> nodes{0.0};
    nodes.insert(nodes.end(), br.begin(), br.end());
    nodes.push_back(1.0);
    std::sort(nodes.begin(), nodes.end());
    auto speed = [&f](double x) { const double d = f.eval(x, 1); return std::sqrt(1.0 - d * d); };
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      if (nodes[i + 1] > nodes[i]) gain += quad::adaptive_simpson<double>(speed, nodes[i], nodes[i + 1], 1e-14);
    }
  }
  const Vec cantor_disp = vec2(f(1.0) - f(0.0), gain);

  const auto circle = spherical::great_circle(vec2(1, 0), vec2(0, 1));
  TangentImageOptions pa;
  pa.smoothness = std::max(k, 2);
  pa.period = kSharpPeriod - 1.0;
  pa.forced_anchors = {kPi / 2};
  pa.displacement = Vec(-cantor_disp);
  const auto padA = from_tangent_image(circle, pa);

  TangentImageOptions pb = pa;
  pb.period = 5.0;
  pb.forced_anchors = {1.5 * kPi};
  pb.displacement = vec2(0.0, 3.0);
  const auto padB = from_tangent_image(circle, pb);

  // Unshifted a: Cantor part on [0, 1], padding on [1, 8].
  auto ta = [f, pad = padA.curve](double y) -> Vec {
    y = wrap(y, kSharpPeriod);
    if (y <= 1.0) {
      const double d = f.eval(y, 1);
      return vec2(d, std::sqrt(1.0 - d * d));
    }
    return pad.tangent(y - 1.0);
  };
  auto da = [f, pad = padA.curve](double y) -> Vec {
    y = wrap(y, kSharpPeriod);
    if (y <= 1.0) {
      const double d = f.eval(y, 1), dd = f.eval(y, 2);
      return vec2(dd, -d * dd / std::sqrt(1.0 - d * d));
    }
    return pad.tangent_derivative(y - 1.0);
  };
  UnitSpeedCurve::Options oa;
  oa.kind = TangentKind::Analytic;
  oa.smoothness = k;
  oa.name = "sharp_example.a";
  oa.cells = 4096;
  oa.derivative = [da, shift](double x) { return da(x - shift); };
  for (double b : f.breaks()) oa.breaks.push_back(wrap(b + shift, kSharpPeriod));
  for (double b : padA.curve.breaks()) oa.breaks.push_back(wrap(1.0 + b + shift, kSharpPeriod));
  oa.breaks.push_back(wrap(shift, kSharpPeriod));
  oa.breaks.push_back(wrap(1.0 + shift, kSharpPeriod));
  std::sort(oa.breaks.begin(), oa.breaks.end());
  oa.spec = {{"kind", "sharp_example"}, {"part", "a"}, {"k", k}, {"depth", spec.depth}, {"m", spec.m}};
  UnitSpeedCurve a(2, kSharpPeriod, Vec::Zero(2), [ta, shift](double x) { return ta(x - shift); }, oa);
  // Place a(shift) = (f(0), 0), so the Cantor arc starts at height g(0) = 0.
  a = a.with_basepoint(Vec(vec2(f(0.0), 0.0) - (a.eval(shift) - a.eval(0.0))));

  auto tb = [pad = padB.curve](double y) -> Vec {
    y = wrap(y, kSharpPeriod);
    if (y >= 2.0 && y <= 7.0) return pad.tangent(y - 2.0);
    return vec2(0.0, -1.0);
  };
  UnitSpeedCurve::Options ob;
  ob.kind = TangentKind::Analytic;
  ob.smoothness = k;
  ob.name = "sharp_example.b";
  ob.cells = 2048;
  ob.derivative = [pad = padB.curve](double y) -> Vec {
    y = wrap(y, kSharpPeriod);
    if (y >= 2.0 && y <= 7.0) return pad.tangent_derivative(y - 2.0);
    return Vec::Zero(2);
  };
  ob.breaks = {2.0, 7.0};
  for (double b : padB.curve.breaks()) ob.breaks.push_back(2.0 + b);
  std::sort(ob.breaks.begin(), ob.breaks.end());
  ob.spec = {{"kind", "sharp_example"}, {"part", "b"}, {"k", k}, {"depth", spec.depth}, {"m", spec.m}};
  UnitSpeedCurve b(2, kSharpPeriod, Vec::Zero(2), tb, ob);

  SharpExample out{make_gauge(a, b, "sharp_example_k" + std::to_string(k)), f, shift, f.sigma_samples(), {}, {}, 0.5 * shift};
  out.predicted.reserve(out.sigma.size() * t_samples);
  for (double s : out.sigma) {
    for (int j = 0; j < t_samples; ++j) {
      const double u = t_samples == 1 ? 0.0 : -0.5 + static_cast<double>(j) / (t_samples - 1);
      const double t = out.t_center + u, x = s + out.t_center - u;
      Vec p(3);
      p << t, gamma(out.gauge, t, x);
      out.predicted.push_back(p);
      out.predicted_tx.push_back({t, x});
    }
  }
  return out;
}

}  // namespace worldsheet
