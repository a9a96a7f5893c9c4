#include "worldsheet/parallel.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/topology.hpp"

#include <random>

namespace worldsheet {

namespace {

constexpr int kNodes = 2048;

struct Field {
  std::vector<Vec> c, s;  // Fourier coefficients for harmonics 1..modes
  double period;
  Vec operator()(double x) const {
    Vec v = Vec::Zero(c.front().size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double th = kTwoPi * (k + 1) * x / period;
      v += std::cos(th) * c[k] + std::sin(th) * s[k];
    }
    return v;
  }
  Vec derivative(double x) const {
    Vec v = Vec::Zero(c.front().size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double w = kTwoPi * (k + 1) / period, th = w * x;
      v += w * (-std::sin(th) * c[k] + std::cos(th) * s[k]);
    }
    return v;
  }
};

// The perturbed unit tangent before re-closure, and its closure correction C:
// normalize(a'(x) + delta(x) - C w(x)) with the bump w(x) = (1 + cos(2 pi x/P))/P.
struct Perturbed {
  UnitSpeedCurve::TangentFn base;
  Field delta;
  Vec C;
  double period;
  Vec operator()(double x) const {
    const double w = (1.0 + std::cos(kTwoPi * x / period)) / period;
    const Vec u = base(x) + delta(x) - w * C;
    return u / u.norm();
  }
};

Vec drift_of(const Perturbed& p) {
  Vec sum = Vec::Zero(p.C.size());
  for (int i = 0; i < kNodes; ++i) sum += p(p.period * i / kNodes);
  return sum * (p.period / kNodes);
}

}  // namespace

UnitSpeedCurve perturb_curve(const UnitSpeedCurve& c, double epsilon, unsigned seed, int modes) {
  const int n = c.dim();
  const double P = c.period();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field f{{}, {}, P};
  for (int k = 1; k <= modes; ++k) {
    Vec a(n), b(n);
    for (int d = 0; d < n; ++d) {
      a[d] = gauss(rng);
      b[d] = gauss(rng);
    }
    f.c.push_back(a);
    f.s.push_back(b);
  }
  // Scale so the C^1 size of delta is epsilon / 2; renormalization and re-closure at most
  // roughly double it.
  double sup0 = 0.0, sup1 = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double x = P * i / kNodes;
    sup0 = std::max(sup0, f(x).norm());
    sup1 = std::max(sup1, f.derivative(x).norm());
  }
  const double scale = 0.5 * epsilon / std::max(sup0, sup1);
  for (auto& v : f.c) v *= scale;
  for (auto& v : f.s) v *= scale;

  Perturbed p{c.tangent_fn(), f, Vec::Zero(n), P};
  // Target: the drift of c itself, measured by the same rule.
  Vec target = Vec::Zero(n);
  for (int i = 0; i < kNodes; ++i) target += c.tangent(P * i / kNodes);
  target *= P / kNodes;

  Vec defect = drift_of(p) - target;
  if (defect.norm() > 0.1) throw NumericalError("perturbation re-closure failed: defect " + std::to_string(defect.norm()));
  for (int it = 0; it < 30 && defect.norm() > 1e-13 * P; ++it) {
    Mat J(n, n);
    const double h = 1e-6;
    for (int d = 0; d < n; ++d) {
      Perturbed q = p;
      q.C[d] += h;
      J.col(d) = (drift_of(q) - target - defect) / h;
    }
    p.C -= J.fullPivLu().solve(defect);
    defect = drift_of(p) - target;
  }
  if (defect.norm() > 1e-9) throw NumericalError("perturbation re-closure did not converge");

  UnitSpeedCurve::Options opt;
  opt.kind = c.kind() == TangentKind::SpherePath ? TangentKind::SpherePath : TangentKind::Analytic;
  opt.smoothness = std::min(c.smoothness(), 2);
  opt.name = c.name() + "+perturbation";
  opt.breaks = c.breaks();
  opt.spec = {{"kind", "perturbed"}, {"epsilon", epsilon}, {"seed", seed}, {"modes", modes}, {"base", c.spec()}};
  return UnitSpeedCurve(n, P, c.basepoint(), p, std::move(opt));
}

OrthogonalGauge perturb_gauge(const OrthogonalGauge& g, double epsilon, unsigned seed, int modes) {
  auto a = perturb_curve(g.a, epsilon, 2 * seed + 1, modes);
  auto b = perturb_curve(g.b, epsilon, 2 * seed + 2, modes);
  return make_gauge(std::move(a), std::move(b), g.name + "+perturbation");
}

PerturbationReport genericity_probe(const OrthogonalGauge& g, const PerturbationOptions& opt) {
  if (!g.periodic) throw PreconditionError("genericity_probe requires a periodic gauge");
  PerturbationReport rep;
  rep.epsilon = opt.epsilon;
  rep.trials = opt.trials;
  std::vector<int> outcome(opt.trials, -1);  // -1 discarded, 0 singular, 1 smooth
  std::vector<double> margin(opt.trials, 0.0);
  parallel_for(opt.trials, [&](int i) {
    try {
      const auto h = perturb_gauge(g, opt.epsilon, opt.seed * 7919u + static_cast<unsigned>(i), opt.modes);
      DetectOptions d;
      d.grid_n = opt.grid_n;
      d.threads = 1;
      const auto r = find_antipodal_pairs(h, d);
      outcome[i] = r.empty() ? 1 : 0;
      margin[i] = r.min_residual;
    } catch (const Error&) {
      outcome[i] = -1;
    }
  }, opt.threads);
  double sum = 0.0;
  rep.margin_min = 1e300;
  rep.margin_max = 0.0;
  for (int i = 0; i < opt.trials; ++i) {
    if (outcome[i] < 0) {
      ++rep.discarded;
      continue;
    }
    (outcome[i] ? rep.smooth : rep.singular)++;
    rep.margins.push_back(margin[i]);
    rep.margin_min = std::min(rep.margin_min, margin[i]);
    rep.margin_max = std::max(rep.margin_max, margin[i]);
    sum += margin[i];
  }
  if (rep.margins.empty()) rep.margin_min = 0.0;
  rep.margin_mean = rep.margins.empty() ? 0.0 : sum / rep.margins.size();
  return rep;
}

int transversal_count(const OrthogonalGauge& g, int grid_n) {
  if (g.dim() != 3) throw PreconditionError("transversal_count requires n = 3");
  DetectOptions d;
  d.grid_n = grid_n;
  const auto rep = find_antipodal_pairs(g, d);
  for (const auto& comp : rep.components) {
    if (comp.kind != SingKind::Isolated) throw NumericalError("count undefined: non-isolated singular component");
    for (const auto& p : comp.pairs) {
      Eigen::Matrix<double, 3, 2> J;
      J.col(0) = g.a.tangent_derivative(p.s).head<3>();
      J.col(1) = g.b.tangent_derivative(p.sigma).head<3>();
      const Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J);
      const auto sv = svd.singularValues();
      if (sv[1] <= 1e-12 || sv[0] / sv[1] >= 1e6) throw NumericalError("count undefined: non-transversal intersection");
    }
  }
  return static_cast<int>(rep.components.size());
}

}  // namespace worldsheet
