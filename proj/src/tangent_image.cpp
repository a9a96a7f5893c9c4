#include "worldsheet/tangent_image.hpp"

#include <functional>

#include "worldsheet/geometry.hpp"
#include "worldsheet/linprog.hpp"
#include "worldsheet/quadrature.hpp"

#include <algorithm>
#include <numeric>

namespace worldsheet {

namespace spherical {

SphericalCurve great_circle(const Vec& u, const Vec& v) {
  SphericalCurve c;
  c.dim = static_cast<int>(u.size());
  c.name = "great_circle";
  c.value = [u, v](double th) { return Vec(std::cos(th) * u + std::sin(th) * v); };
  c.derivative = [u, v](double th) { return Vec(-std::sin(th) * u + std::cos(th) * v); };
  return c;
}

SphericalCurve small_circle(const Vec& center, const Vec& toward, double rho) {
  const Vec z = center / center.norm();
  Vec e = toward - toward.dot(z) * z;
  e /= e.norm();
  // Complete e, z to an orthonormal triple for the circle plane (dimension >= 3).
  Vec f = Vec::Zero(z.size());
  for (int axis = 0; axis < z.size(); ++axis) {
    Vec cand = unit_vector(static_cast<int>(z.size()), axis);
    cand -= cand.dot(z) * z + cand.dot(e) * e;
    if (cand.norm() > 0.5) {
      f = cand / cand.norm();
      break;
    }
  }
  SphericalCurve c;
  c.dim = static_cast<int>(z.size());
  c.name = "small_circle";
  const double cr = std::cos(rho), sr = std::sin(rho);
  c.value = [=](double th) { return Vec(cr * z + sr * (std::cos(th) * e + std::sin(th) * f)); };
  c.derivative = [=](double th) { return Vec(sr * (-std::sin(th) * e + std::cos(th) * f)); };
  return c;
}

SphericalCurve arc_loop(const Vec& u, const Vec& v, double lo, double hi, double width) {
  // Chart (phi, psi) -> cos(psi) (cos(phi) u + sin(phi) v) + sin(psi) w, with w normal to u, v.
  const int dim = static_cast<int>(u.size());
  Vec w = Vec::Zero(dim);
  for (int axis = 0; axis < dim; ++axis) {
    Vec cand = unit_vector(dim, axis);
    cand -= cand.dot(u) * u + cand.dot(v) * v;
    if (cand.norm() > 0.5) {
      w = cand / cand.norm();
      break;
    }
  }
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  auto chart = [=](double th, Vec* d) {
    const double phi = mid + half * std::cos(th);
    const double psi = width * std::sin(th);
    const Vec ring = std::cos(phi) * u + std::sin(phi) * v;
    if (d) {
      const Vec dring = -std::sin(phi) * u + std::cos(phi) * v;
      const double dphi = -half * std::sin(th), dpsi = width * std::cos(th);
      *d = std::cos(psi) * dphi * dring + dpsi * (-std::sin(psi) * ring + std::cos(psi) * w);
    }
    return Vec(std::cos(psi) * ring + std::sin(psi) * w);
  };
  SphericalCurve c;
  c.dim = dim;
  c.name = "arc_loop";
  c.value = [chart](double th) { return chart(th, nullptr); };
  c.derivative = [chart](double th) {
    Vec d;
    chart(th, &d);
    return d;
  };
  return c;
}

SphericalCurve rotated(const SphericalCurve& c, const Mat& rotation) {
  SphericalCurve r = c;
  auto val = c.value;
  r.value = [val, rotation](double th) { return Vec(rotation * val(th)); };
  if (c.derivative) {
    auto der = c.derivative;
    r.derivative = [der, rotation](double th) { return Vec(rotation * der(th)); };
  }
  return r;
}

SphericalCurve negated(const SphericalCurve& c) {
  return rotated(c, -Mat::Identity(c.dim, c.dim));
}

std::vector<Vec> sample(const SphericalCurve& c, int m) {
  std::vector<Vec> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) out.push_back(c.value(kTwoPi * i / m));
  return out;
}

}  // namespace spherical

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (2k+1)! / (k!)^2
double plateau_scale(int k) { return (2 * k + 1) * binomial(2 * k, k); }

}  // namespace

double plateau(double u, int k) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  // Regularized incomplete beta I_u(k+1, k+1) via binomial expansion of (1-t)^k.
  double s = 0.0;
  for (int j = 0; j <= k; ++j) {
    s += binomial(k, j) * ((j % 2) ? -1.0 : 1.0) * std::pow(u, k + j + 1) / (k + j + 1);
  }
  return plateau_scale(k) * s;
}

double plateau_derivative(double u, int k) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return plateau_scale(k) * std::pow(u * (1.0 - u), k);
}

namespace {

// Orthonormal basis (columns) of the linear span of the points.
Mat span_basis(const std::vector<Vec>& points) {
  const int n = static_cast<int>(points[0].size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : points) G += p * p.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const double top = es.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (es.eigenvalues()[i] > 1e-10 * top) keep.push_back(i);
  }
  Mat Q(n, static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) Q.col(j) = es.eigenvectors().col(keep[j]);
  return Q;
}

}  // namespace

bool hull_contains_origin(const std::vector<Vec>& raw, double margin) {
  if (raw.empty()) return false;
  // Interior relative to the linear span: a planar image in R^3 is allowed.
  const Mat Q = span_basis(raw);
  std::vector<Vec> points;
  for (const auto& p : raw) points.push_back(Q.transpose() * p);
  const int dim = static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());
  if (m < dim + 1 || m * margin >= 1.0) return false;
  Eigen::MatrixXd A(dim + 1, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < dim; ++i) A(i, j) = points[j][i];
    A(dim, j) = 1.0;
  }
  Eigen::VectorXd r = Eigen::VectorXd::Zero(dim + 1);
  r[dim] = 1.0;
  const auto res = lp::minimize(A, r, Eigen::VectorXd::Zero(m), Eigen::VectorXd::Constant(m, margin));
  return res.feasible;
}

namespace {

struct Piece {
  double start;       // pre-scaling parameter
  double length;
  double theta0;
  double dtheta;      // 0 for dwells
};

class Layout {
 public:
  Layout(std::vector<Piece> pieces, double total, int k)
      : pieces_(std::move(pieces)), total_(total), k_(k) {}

  // theta and d theta / dy at pre-scaling parameter y in [0, total).
  std::pair<double, double> at(double y) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), y,
                               [](double v, const Piece& p) { return v < p.start; });
    const Piece& p = (it == pieces_.begin()) ? pieces_.front() : *(it - 1);
    if (p.dtheta == 0.0) return {p.theta0, 0.0};
    const double u = (y - p.start) / p.length;
    return {p.theta0 + p.dtheta * plateau(u, k_), p.dtheta / p.length * plateau_derivative(u, k_)};
  }
  double total() const { return total_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
  double total_;
  int k_;
};

std::vector<int> farthest_point_order(const std::vector<Vec>& samples, std::vector<int> seeds,
                                      int wanted) {
  std::vector<double> dist(samples.size(), std::numeric_limits<double>::infinity());
  auto absorb = [&](int idx) {
    for (std::size_t j = 0; j < samples.size(); ++j) {
      dist[j] = std::min(dist[j], (samples[j] - samples[idx]).norm());
    }
  };
  for (int s : seeds) absorb(s);
  while (static_cast<int>(seeds.size()) < wanted) {
    const int next = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    seeds.push_back(next);
    absorb(next);
  }
  return seeds;
}

}  // namespace

TangentImageResult from_tangent_image(const SphericalCurve& c, const TangentImageOptions& opt) {
  const int dim = c.dim;
  const int k = std::max(1, opt.smoothness);
  const int M = std::max(256, opt.image_samples);
  if (!c.value) throw PreconditionError("from_tangent_image: missing curve");
  const std::vector<Vec> samples = spherical::sample(c, M);
  for (const auto& s : samples) {
    if (s.size() != dim || std::abs(s.norm() - 1.0) > 1e-9) {
      throw PreconditionError("from_tangent_image: target must lie on the unit sphere");
    }
  }

  // Forced anchors are inserted as extra samples so farthest-point selection can use them.
  std::vector<double> thetas(M);
  for (int i = 0; i < M; ++i) thetas[i] = kTwoPi * i / M;
  std::vector<Vec> pool = samples;
  std::vector<int> seeds;
  for (double th : opt.forced_anchors) {
    thetas.push_back(wrap(th, kTwoPi));
    pool.push_back(c.value(th));
    seeds.push_back(static_cast<int>(pool.size()) - 1);
  }
  if (seeds.empty()) seeds.push_back(0);
  const int forced = static_cast<int>(opt.forced_anchors.size());

  const double P = opt.period;
  const bool open = opt.displacement.has_value();
  const Vec D = open ? *opt.displacement : Vec::Zero(dim);
  if (open && (D.size() != dim || D.norm() >= P)) {
    throw PreconditionError("from_tangent_image: displacement must be shorter than the length");
  }
  if (open && forced == 0) throw PreconditionError("open tangent-image curve needs a forced start anchor");

  auto curve_dtheta = [value = c.value, derivative = c.derivative](double th) -> Vec {
    if (derivative) return derivative(th);
    const double h = 1e-6;
    return (value(th + h) - value(th - h)) / (2 * h);
  };

  const Mat Q = span_basis(samples);
  const int rank = static_cast<int>(Q.cols());
  if (open && (D - Q * (Q.transpose() * D)).norm() > 1e-9) {
    throw PreconditionError("from_tangent_image: displacement outside the span of the image");
  }

  std::optional<lp::Result> solution;
  std::vector<double> anchors;
  std::vector<int> forced_pos(forced, -1);
  Eigen::MatrixXd A;
  for (int count = std::max(rank + 1, forced); count <= std::max(4 * dim, forced + rank + 1); ++count) {
    const std::vector<int> pick = farthest_point_order(pool, seeds, count);
    // Sort anchors by theta, measured from the first forced anchor in the open variant.
    const double origin = open ? thetas[seeds[0]] : 0.0;
    std::vector<std::pair<double, int>> order;
    for (int idx : pick) order.push_back({wrap(thetas[idx] - origin, kTwoPi) + origin, idx});
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end(),
                            [](auto& a, auto& b) { return std::abs(a.first - b.first) < 1e-12; }),
                order.end());
    anchors.clear();
    for (auto& [th, idx] : order) anchors.push_back(th);
    const int m = static_cast<int>(anchors.size());
    for (int f = 0; f < forced; ++f) {
      for (int j = 0; j < m; ++j) {
        if (std::abs(anchors[j] - (wrap(thetas[seeds[f]] - origin, kTwoPi) + origin)) < 1e-12) forced_pos[f] = j;
      }
    }

    // Traversal contribution: integral of c(theta_i + Delta_i S_k(y / Delta_i)) over y.
    Vec Ip = Vec::Zero(dim);
    for (int i = 0; i < m; ++i) {
      const double th0 = anchors[i];
      const double delta = (i + 1 < m ? anchors[i + 1] : anchors[0] + kTwoPi) - th0;
      auto f = [&](double u) { return Vec(delta * c.value(th0 + delta * plateau(u, k))); };
      Ip += quad::adaptive_simpson<Vec>(f, 0.0, 1.0, 1e-14);
    }

    const bool dwell_row = opt.dwell_anchor.has_value() && opt.dwell_length > 0.0;
    const int vars = m + (dwell_row ? 1 : 0);
    const int rows = rank + (dwell_row ? 1 : 0);
    A = Eigen::MatrixXd::Zero(rows, vars);
    Eigen::VectorXd rhs(rows);
    const Vec drift = D / P;
    for (int j = 0; j < m; ++j) {
      const Vec col = Q.transpose() * (c.value(anchors[j]) - drift);
      for (int i = 0; i < rank; ++i) A(i, j) = col[i];
    }
    const Vec top = Q.transpose() * (kTwoPi * drift - Ip);
    for (int i = 0; i < rank; ++i) rhs[i] = top[i];
    Eigen::VectorXd cost = Eigen::VectorXd::Ones(vars);
    Eigen::VectorXd lower = Eigen::VectorXd::Constant(vars, opt.min_dwell);
    if (dwell_row) {
      const int q = forced_pos.at(*opt.dwell_anchor);
      const double frac = opt.dwell_length / P;
      for (int j = 0; j < m; ++j) A(rank, j) = -frac;
      A(rank, q) += 1.0;
      A(rank, m) = -1.0;
      rhs[rank] = kTwoPi * frac;
      cost[m] = 0.0;
      lower[m] = 0.0;
    }
    auto res = lp::minimize(A, rhs, cost, lower);
    if (res.feasible) {
      solution = res;
      break;
    }
  }

  if (!solution) {
    const std::vector<int> pick = farthest_point_order(pool, seeds, 4 * dim);
    std::vector<Vec> pts;
    for (int idx : pick) pts.push_back(pool[idx]);
    if (!hull_contains_origin(pts)) throw PreconditionError("convex hull does not contain origin");
    throw NumericalError("from_tangent_image: dwell LP infeasible (hull condition numerically marginal)");
  }

  const int m = static_cast<int>(anchors.size());
  std::vector<Piece> pieces;
  std::vector<double> dwell_pre(m);
  double y = 0.0;
  for (int i = 0; i < m; ++i) {
    const double ell = solution->x[i];
    dwell_pre[i] = y;
    pieces.push_back({y, ell, anchors[i], 0.0});
    y += ell;
    const double delta = (i + 1 < m ? anchors[i + 1] : anchors[0] + kTwoPi) - anchors[i];
    pieces.push_back({y, delta, anchors[i], delta});
    y += delta;
  }
  const double total = y;
  const double scale = P / total;  // final = scale * pre-scaling
  double shift = 0.0;              // pre-scaling parameter mapped to x = 0
  if (opt.center_anchor) {
    const int q = forced_pos.at(*opt.center_anchor);
    shift = dwell_pre[q] + 0.5 * solution->x[q];
  }
  auto layout = std::make_shared<const Layout>(pieces, total, k);

  auto value = c.value;
  auto tangent = [layout, value, scale, shift, total](double x) {
    const double yy = wrap(x / scale + shift, total);
    const Vec v = value(layout->at(yy).first);
    return Vec(v / v.norm());
  };
  UnitSpeedCurve::Options options;
  options.kind = TangentKind::Analytic;
  options.smoothness = k;
  options.name = "tangent_image:" + c.name;
  options.derivative = [layout, curve_dtheta, scale, shift, total](double x) {
    const double yy = wrap(x / scale + shift, total);
    const auto [th, dth] = layout->at(yy);
    return Vec(curve_dtheta(th) * (dth / scale));
  };
  for (const auto& p : pieces) options.breaks.push_back(wrap((p.start - shift) * scale, P));
  options.cells = 2048;
  options.spec = {{"kind", "tangent_image"},
                  {"n", dim},
                  {"period", P},
                  {"params", {{"source", c.name}, {"smoothness", k}, {"anchors", anchors}}}};
  const Vec base = opt.basepoint.size() == dim ? opt.basepoint : Vec::Zero(dim);
  TangentImageResult out{UnitSpeedCurve(dim, P, base, tangent, std::move(options)), {}, {}, {}, 0.0, 0.0};
  out.anchors = anchors;
  for (int i = 0; i < m; ++i) {
    out.dwell_start.push_back(wrap((dwell_pre[i] - shift) * scale, P));
    out.dwell_length.push_back(solution->x[i] * scale);
  }

  // Diagnostics: closure and image match.
  out.closure = (out.curve.eval(P) - out.curve.eval(0.0) - D).norm();
  std::vector<Vec> image_a, image_c;
  const int na = 16 * M, nc = 16 * M;
  image_a.reserve(na);
  for (int i = 0; i < nc; ++i) image_c.push_back(c.value(kTwoPi * i / nc));
  // a' sweeps the image quickly between long dwells, so sample it adaptively: bisect any
  // x-step whose tangents are farther apart than the spacing of the target samples.
  const double spacing = 2.0 * kPi / nc;
  std::function<void(double, double, const Vec&, const Vec&, int)> refine =
      [&](double x0, double x1, const Vec& v0, const Vec& v1, int depth) {
        if (depth == 0 || (v1 - v0).norm() <= spacing) return;
        const double xm = 0.5 * (x0 + x1);
        const Vec vm = out.curve.tangent(xm);
        refine(x0, xm, v0, vm, depth - 1);
        image_a.push_back(vm);
        refine(xm, x1, vm, v1, depth - 1);
      };
  for (int i = 0; i < na; ++i) {
    const double x0 = P * i / na, x1 = P * (i + 1) / na;
    const Vec v0 = out.curve.tangent(x0);
    image_a.push_back(v0);
    refine(x0, x1, v0, out.curve.tangent(x1), 24);
  }
  out.hausdorff = geom::hausdorff(image_a, image_c);
  return out;
}

}  // namespace worldsheet
