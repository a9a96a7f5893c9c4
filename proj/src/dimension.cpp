#include "worldsheet/dimension.hpp"

#include "worldsheet/singular.hpp"

#include <unordered_set>

namespace worldsheet {

PointCloud dedupe(PointCloud cloud) {
  auto& pts = cloud.points;
  std::sort(pts.begin(), pts.end(), [](const Vec& p, const Vec& q) {
    for (int i = 0; i < p.size(); ++i) {
      if (p[i] != q[i]) return p[i] < q[i];
    }
    return false;
  });
  std::vector<Vec> out;
  for (const auto& p : pts) {
    if (!out.empty() && (p - out.back()).lpNorm<Eigen::Infinity>() <= 1e-12) continue;
    out.push_back(p);
  }
  cloud.points = std::move(out);
  return cloud;
}

std::vector<double> dyadic_ladder(int lo, int hi) {
  std::vector<double> out;
  for (int j = lo; j <= hi; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

SlopeEstimate box_count(const PointCloud& cloud, const std::vector<double>& scales, const BoxOptions& opt) {
  if (cloud.points.empty()) throw PreconditionError("box_count: empty point cloud");
  if (scales.size() < 5) throw PreconditionError("box_count: need at least 5 scales");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (!(scales[i] < scales[i - 1])) throw PreconditionError("box_count: scales must be strictly decreasing");
  }
  const int dim = static_cast<int>(cloud.points.front().size());
  Vec lo = cloud.points.front(), hi = lo;
  for (const auto& p : cloud.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Vec scale = Vec::Ones(dim);
  if (opt.normalize_axes) {
    for (int d = 0; d < dim; ++d) {
      if (hi[d] - lo[d] > 1e-12) scale[d] = 1.0 / (hi[d] - lo[d]);
    }
  }
  const double diameter = (hi - lo).cwiseProduct(scale).norm();
  if (scales.front() > diameter / 4 * (1 + 1e-12)) {
    throw PreconditionError("box_count: largest scale exceeds a quarter of the diameter");
  }
  SlopeEstimate est;
  est.scales = scales;
  for (double eps : scales) {
    long long best = -1;
    for (int k = 0; k < std::max(1, opt.grid_offsets); ++k) {
      const double shift = static_cast<double>(k) / std::max(1, opt.grid_offsets);
      // Boxes tile the shifted bounding box; points on its far face fall into the last box.
      std::vector<std::int64_t> last(dim);
      for (int d = 0; d < dim; ++d) {
        last[d] = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::ceil((hi[d] - lo[d]) * scale[d] / eps + shift - 1e-9)) - 1);
      }
      std::unordered_set<std::uint64_t> boxes;
      boxes.reserve(cloud.points.size());
      for (const auto& p : cloud.points) {
        std::uint64_t h = 1469598103934665603ull;
        for (int d = 0; d < dim; ++d) {
          const auto raw = static_cast<std::int64_t>(std::floor((p[d] - lo[d]) * scale[d] / eps + shift));
          const auto cell = std::min(last[d], raw);
          h = (h ^ static_cast<std::uint64_t>(cell)) * 1099511628211ull;
          h ^= h >> 29;
        }
        boxes.insert(h);
      }
      const auto count = static_cast<long long>(boxes.size());
      if (best < 0 || count < best) best = count;
    }
    est.counts.push_back(best);
  }
  // Least squares on (log 1/eps, log N).
  const int n = static_cast<int>(scales.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> X(n), Y(n);
  for (int i = 0; i < n; ++i) {
    X[i] = std::log(1.0 / scales[i]);
    Y[i] = std::log(static_cast<double>(est.counts[i]));
    sx += X[i];
    sy += Y[i];
  }
  const double mx = sx / n, my = sy / n;
  for (int i = 0; i < n; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (int i = 0; i < n; ++i) {
    const double r = Y[i] - (est.intercept + est.slope * X[i]);
    ss_res += r * r;
    ss_tot += (Y[i] - my) * (Y[i] - my);
  }
  est.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
  est.stderr_ = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  est.reliable = est.r2 >= 0.98;
  return est;
}

PointCloud singstar_cloud(const SharpExample& example) {
  PointCloud c{example.predicted, example.gauge.name + ": predicted Sing* over Sigma_L x t-segment, depth " +
                                      std::to_string(example.f.spec().depth)};
  c = dedupe(std::move(c));
  if (c.points.empty()) throw NumericalError("no Sing* points at resolution");
  return c;
}

PointCloud singstar_cloud(const OrthogonalGauge& g, int grid_n) {
  DetectOptions opt;
  opt.grid_n = grid_n;
  auto rep = find_antipodal_pairs(g, opt);
  classify_all(g, rep);
  PointCloud c;
  c.provenance = g.name + ": classified Sing* pairs, grid " + std::to_string(grid_n);
  for (const auto& comp : rep.components) {
    for (std::size_t i = 0; i < comp.pairs.size(); ++i) {
      if (comp.pair_flags.at(i) == SingStar::Yes) c.points.push_back(comp.pairs[i].point);
    }
  }
  c = dedupe(std::move(c));
  if (c.points.empty()) throw NumericalError("no Sing* points at resolution");
  return c;
}

PointCloud sing_cloud(const OrthogonalGauge& g, int grid_n) {
  DetectOptions opt;
  opt.grid_n = grid_n;
  const auto rep = find_antipodal_pairs(g, opt);
  PointCloud c;
  c.provenance = g.name + ": detected singular pairs, grid " + std::to_string(grid_n);
  for (const auto& p : rep.pairs) c.points.push_back(p.point);
  c = dedupe(std::move(c));
  if (c.points.empty()) throw NumericalError("no singular points at resolution");
  return c;
}

}  // namespace worldsheet
