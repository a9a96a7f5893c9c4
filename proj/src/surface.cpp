#include "worldsheet/surface.hpp"

#include "worldsheet/parallel.hpp"

namespace worldsheet {

Vec gamma(const OrthogonalGauge& g, double t, double x) {
  return 0.5 * (g.a.eval(x + t) + g.b.eval(x - t));
}

Derivatives derivatives(const OrthogonalGauge& g, double t, double x) {
  const Vec ap = g.a.tangent(x + t);
  const Vec bp = g.b.tangent(x - t);
  return {0.5 * (ap + bp), 0.5 * (ap - bp)};
}

namespace {

double det_from(const Derivatives& d) {
  const double gtt = -1.0 + d.gamma_t.squaredNorm();
  const double gxx = d.gamma_x.squaredNorm();
  const double gtx = d.gamma_x.dot(d.gamma_t);
  return gtt * gxx - gtx * gtx;
}

}  // namespace

double metric_det(const OrthogonalGauge& g, double t, double x) {
  return det_from(derivatives(g, t, x));
}

SurfaceSample sample(const OrthogonalGauge& g, double t, double x) {
  const Derivatives d = derivatives(g, t, x);
  SurfaceSample s;
  s.t = t;
  s.x = x;
  s.gamma = gamma(g, t, x);
  s.gamma_x = d.gamma_x;
  s.gamma_t = d.gamma_t;
  s.metric_det = det_from(d);
  s.timelike = s.metric_det < -kTimelikeThreshold;
  return s;
}

ConstraintReport constraint_residuals(const OrthogonalGauge& g, int nt, int nx, double h,
                                      int threads) {
  ConstraintReport rep;
  rep.nt = nt;
  rep.nx = nx;
  rep.h = h;
  struct Row {
    double norm = 0, orth = 0, det = 0, wave = 0;
    double d1 = 0, d2 = 0;  // max |D(h) - D(h/2)|, max |D(h/2) - D(h/4)|
  };
  std::vector<Row> rows(nt);
  const double E0 = g.E0;
  // Second differences of gamma itself are costlier (eight curve evaluations) so they run on
  // every fourth grid line.
  const int stride = 4;
  parallel_for(nt, [&](int i) {
    Row r;
    const double t = E0 * i / nt;
    for (int j = 0; j < nx; ++j) {
      const double x = E0 * j / nx;
      const Derivatives d = derivatives(g, t, x);
      r.norm = std::max(r.norm, std::abs(d.gamma_x.squaredNorm() + d.gamma_t.squaredNorm() - 1.0));
      r.orth = std::max(r.orth, std::abs(d.gamma_x.dot(d.gamma_t)));
      r.det = std::max(r.det, std::abs(det_from(d) + std::pow(d.gamma_x.squaredNorm(), 2)));
      auto gtt = [&](double step) {
        return Vec((derivatives(g, t + step, x).gamma_t - derivatives(g, t - step, x).gamma_t) /
                   (2.0 * step));
      };
      const Vec D1 = gtt(h), D2 = gtt(h / 2), D4 = gtt(h / 4);
      r.d1 = std::max(r.d1, (D1 - D2).norm());
      r.d2 = std::max(r.d2, (D2 - D4).norm());
      if (i % stride == 0 && j % stride == 0) {
        const Vec c = gamma(g, t, x);
        const Vec tt = (gamma(g, t + h, x) - 2.0 * c + gamma(g, t - h, x)) / (h * h);
        const Vec xx = (gamma(g, t, x + h) - 2.0 * c + gamma(g, t, x - h)) / (h * h);
        r.wave = std::max(r.wave, (tt - xx).norm());
      }
    }
    rows[i] = r;
  }, threads);
  double d1 = 0.0, d2 = 0.0;
  for (const auto& r : rows) {
    rep.max_norm_residual = std::max(rep.max_norm_residual, r.norm);
    rep.max_orthogonality_residual = std::max(rep.max_orthogonality_residual, r.orth);
    rep.max_det_mismatch = std::max(rep.max_det_mismatch, r.det);
    rep.max_wave_residual = std::max(rep.max_wave_residual, r.wave);
    d1 = std::max(d1, r.d1);
    d2 = std::max(d2, r.d2);
  }
  rep.richardson_ratio = d2 > 0.0 ? d1 / d2 : 0.0;
  rep.second_order = rep.richardson_ratio >= 3.5 && rep.richardson_ratio <= 4.5;
  return rep;
}

SliceCurve slice(const OrthogonalGauge& g, double t, int m) {
  if (m < 1) throw PreconditionError("slice: need at least one sample");
  SliceCurve s;
  s.t = t;
  s.x.reserve(m);
  s.points.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double x = g.E0 * i / m;
    s.x.push_back(x);
    s.points.push_back(gamma(g, t, x));
  }
  s.closure_gap = (gamma(g, t, g.E0) - gamma(g, t, 0.0)).norm();
  return s;
}

double time_periodicity_defect(const OrthogonalGauge& g, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const double t = g.E0 * i / samples, x = g.E0 * j / samples;
      worst = std::max(worst, (gamma(g, t + g.E0, x) - gamma(g, t, x)).norm());
    }
  }
  return worst;
}

}  // namespace worldsheet
