#include "worldsheet/topology.hpp"

#include "worldsheet/geometry.hpp"
#include "worldsheet/parallel.hpp"
#include "worldsheet/singular.hpp"

#include <random>

namespace worldsheet {

namespace {

std::vector<Vec> sample_fn(const std::function<Vec(double)>& f, double period, int m) {
  std::vector<Vec> out(m);
  for (int i = 0; i < m; ++i) out[i] = f(period * i / m);
  return out;
}

// Local minimization of |a(s) - mb(sigma)| by Levenberg-Marquardt with difference Jacobians.
double refine_distance(const SphereDiagram& d, double& s, double& sigma) {
  auto f = [&](double u, double v) { return Vec(d.a_fn(u) - d.mb_fn(v)); };
  Vec r = f(s, sigma);
  double lambda = 1e-6;
  const double h = 1e-7 * d.period;
  for (int it = 0; it < 50; ++it) {
    const Vec ds = (f(s + h, sigma) - f(s - h, sigma)) / (2 * h);
    const Vec dq = (f(s, sigma + h) - f(s, sigma - h)) / (2 * h);
    Eigen::Matrix2d JtJ;
    JtJ << ds.dot(ds), ds.dot(dq), ds.dot(dq), dq.dot(dq);
    const Eigen::Vector2d Jtr(ds.dot(r), dq.dot(r));
    bool improved = false;
    for (int tries = 0; tries < 10 && !improved; ++tries) {
      Eigen::Matrix2d M = JtJ;
      M.diagonal().array() += lambda * std::max(1e-12, JtJ.trace());
      const Eigen::Vector2d step = -M.ldlt().solve(Jtr);
      const Vec rn = f(s + step[0], sigma + step[1]);
      if (step.allFinite() && rn.norm() < r.norm()) {
        s += step[0];
        sigma += step[1];
        improved = rn.norm() < r.norm() * (1 - 1e-12);
        r = rn;
        lambda *= 0.1;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return r.norm();
}

}  // namespace

SphereDiagram diagram(std::function<Vec(double)> a, std::function<Vec(double)> mb, int dim,
                      double period, int m) {
  if (m < 8) throw PreconditionError("diagram: need at least 8 samples");
  SphereDiagram d;
  d.dim = dim;
  d.period = period;
  d.a_fn = std::move(a);
  d.mb_fn = std::move(mb);
  d.curve_a = sample_fn(d.a_fn, period, m);
  d.curve_mb = sample_fn(d.mb_fn, period, m);
  // Brute force over sample pairs, then refine the best few candidates.
  std::vector<std::pair<double, int>> best;
  std::vector<double> row(m);
  for (int i = 0; i < m; ++i) {
    double r = 1e300;
    int arg = 0;
    for (int j = 0; j < m; ++j) {
      const double v = (d.curve_a[i] - d.curve_mb[j]).squaredNorm();
      if (v < r) {
        r = v;
        arg = j;
      }
    }
    best.push_back({r, i * m + arg});
  }
  const std::size_t keep = std::min<std::size_t>(8, best.size());
  std::partial_sort(best.begin(), best.begin() + keep, best.end());
  d.min_distance = std::sqrt(best.front().first);
  d.s_min = period * (best.front().second / m) / m;
  d.sigma_min = period * (best.front().second % m) / m;
  for (std::size_t k = 0; k < keep; ++k) {
    double s = period * (best[k].second / m) / m, q = period * (best[k].second % m) / m;
    const double r = refine_distance(d, s, q);
    if (r < d.min_distance) {
      d.min_distance = r;
      d.s_min = wrap(s, period);
      d.sigma_min = wrap(q, period);
    }
  }
  d.disjoint = d.min_distance > kDiagramEps;
  return d;
}

SphereDiagram diagram(const OrthogonalGauge& g, int m) {
  const auto a = g.a, b = g.b;
  return diagram([a](double x) { return a.tangent(x); }, [b](double x) { return Vec(-b.tangent(x)); },
                 g.dim(), g.E0, m);
}

double planar_winding(std::span<const Vec> curve, const Vec& p) {
  double total = 0.0;
  const std::size_t m = curve.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec u = curve[i] - p, v = curve[(i + 1) % m] - p;
    total += std::atan2(u[0] * v[1] - u[1] * v[0], u.dot(v));
  }
  return total / kTwoPi;
}

namespace {

double clearance(const Vec& q, const SphereDiagram& d) {
  double c = 1e300;
  for (const auto& p : d.curve_a) c = std::min(c, (p - q).norm());
  for (const auto& p : d.curve_mb) c = std::min(c, (p - q).norm());
  return c;
}

struct Centers {
  Vec first, second;
  double clear1 = 0.0, clear2 = 0.0;
};

// Farthest point from both curves, and the best-cleared point at distance >= 0.5 from it.
Centers pick_centers(const SphereDiagram& d, int candidates) {
  const auto pts = geom::sphere_points(d.dim, candidates, 7);
  std::vector<double> clear(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) clear[i] = clearance(pts[i], d);
  const auto i1 = std::max_element(clear.begin(), clear.end()) - clear.begin();
  Centers c;
  c.first = pts[i1];
  c.clear1 = clear[i1];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if ((pts[i] - c.first).norm() >= 0.5 && clear[i] > c.clear2) {
      c.clear2 = clear[i];
      c.second = pts[i];
    }
  }
  if (c.clear1 < kDiagramEps || c.clear2 < kDiagramEps) {
    throw NumericalError("no projection center with clearance from both curves");
  }
  return c;
}

double winding_from(const std::vector<Vec>& a, const std::vector<Vec>& mb, const Vec& center) {
  const geom::Stereographic proj(center);
  std::vector<Vec> pa;
  pa.reserve(a.size());
  for (const auto& p : a) pa.push_back(proj(p));
  // representative of -b': the sample farthest from a'
  std::size_t rep = 0;
  double far = -1.0;
  for (std::size_t j = 0; j < mb.size(); ++j) {
    double c = 1e300;
    for (const auto& p : a) c = std::min(c, (p - mb[j]).norm());
    if (c > far) {
      far = c;
      rep = j;
    }
  }
  return planar_winding(pa, proj(mb[rep]));
}

}  // namespace

WindingReport winding_report(const SphereDiagram& d) {
  if (d.dim != 3) throw PreconditionError("winding_number requires n = 3");
  if (!d.disjoint) throw PreconditionError("winding_number requires a disjoint diagram");
  const Centers c = pick_centers(d, 4096);
  WindingReport out;
  out.center = c.first;
  out.second_center = c.second;
  out.clearance = c.clear1;
  out.raw = winding_from(d.curve_a, d.curve_mb, c.first);
  out.winding = static_cast<int>(std::lround(out.raw));
  out.second_winding = static_cast<int>(std::lround(winding_from(d.curve_a, d.curve_mb, c.second)));
  if (out.second_winding != out.winding) {
    throw NumericalError("winding number depends on the projection center");
  }
  const int m2 = 2 * static_cast<int>(d.curve_a.size());
  const double refined = winding_from(sample_fn(d.a_fn, d.period, m2), sample_fn(d.mb_fn, d.period, m2), c.first);
  if (std::lround(refined) != out.winding || std::abs(out.raw - out.winding) > 0.1) {
    throw NumericalError("diagram under-resolved");
  }
  return out;
}

int winding_number(const SphereDiagram& d) { return winding_report(d).winding; }

double gauss_linking_integral(std::span<const Vec> c1, std::span<const Vec> c2) {
  const std::size_t m1 = c1.size(), m2 = c2.size();
  std::vector<Eigen::Vector3d> mid1(m1), d1(m1), mid2(m2), d2(m2);
  for (std::size_t i = 0; i < m1; ++i) {
    const Eigen::Vector3d p = c1[i].head<3>(), q = c1[(i + 1) % m1].head<3>();
    mid1[i] = 0.5 * (p + q);
    d1[i] = q - p;
  }
  for (std::size_t j = 0; j < m2; ++j) {
    const Eigen::Vector3d p = c2[j].head<3>(), q = c2[(j + 1) % m2].head<3>();
    mid2[j] = 0.5 * (p + q);
    d2[j] = q - p;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m1; ++i) {
    for (std::size_t j = 0; j < m2; ++j) {
      const Eigen::Vector3d r = mid1[i] - mid2[j];
      total += r.dot(d1[i].cross(d2[j])) / std::pow(r.norm(), 3);
    }
  }
  return total / (4 * kPi);
}

namespace {

double linking_from(const std::vector<Vec>& a, const std::vector<Vec>& mb, const Vec& center) {
  const geom::Stereographic proj(center);
  std::vector<Vec> pa, pb;
  for (const auto& p : a) pa.push_back(proj(p));
  for (const auto& p : mb) pb.push_back(proj(p));
  return gauss_linking_integral(pa, pb);
}

}  // namespace

LinkingReport linking_report(const SphereDiagram& d) {
  if (d.dim != 4) throw PreconditionError("linking_number requires n = 4");
  if (!d.disjoint) throw PreconditionError("linking_number requires a disjoint diagram");
  const Centers c = pick_centers(d, 8192);
  LinkingReport out;
  out.center = c.first;
  out.integral = linking_from(d.curve_a, d.curve_mb, c.first);
  out.linking = static_cast<int>(std::lround(out.integral));
  out.residual = std::abs(out.integral - out.linking);
  if (out.residual > 0.1) throw NumericalError("linking integral under-resolved");
  const int m2 = 2 * static_cast<int>(d.curve_a.size());
  const double refined = linking_from(sample_fn(d.a_fn, d.period, m2), sample_fn(d.mb_fn, d.period, m2), c.first);
  if (std::lround(refined) != out.linking) throw NumericalError("linking integral under-resolved");
  return out;
}

int linking_number(const SphereDiagram& d) { return linking_report(d).linking; }

}  // namespace worldsheet
