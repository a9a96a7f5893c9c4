#include "worldsheet/geometry.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace worldsheet::geom {

namespace {

struct KeyHash {
  std::size_t operator()(const std::array<long long, kMaxDim>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using Key = std::array<long long, kMaxDim>;

Key key_of(const Vec& p, double cell) {
  Key k{};
  for (int i = 0; i < p.size(); ++i) k[i] = static_cast<long long>(std::floor(p[i] / cell));
  return k;
}

double bounding_diameter(std::span<const Vec> pts) {
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

}  // namespace

double directed_hausdorff(std::span<const Vec> a, std::span<const Vec> b) {
  if (a.empty() || b.empty()) throw PreconditionError("hausdorff: empty point set");
  const int dim = static_cast<int>(a[0].size());
  const double diam = std::max(bounding_diameter(b), 1e-12);
  const double cell = std::max(diam / std::cbrt(static_cast<double>(b.size())), 1e-9);
  std::unordered_map<Key, std::vector<int>, KeyHash> grid;
  grid.reserve(b.size());
  for (int i = 0; i < static_cast<int>(b.size()); ++i) grid[key_of(b[i], cell)].push_back(i);

  double worst = 0.0;
  for (const auto& p : a) {
    const Key center = key_of(p, cell);
    double best = std::numeric_limits<double>::infinity();
    for (int radius = 1;; ++radius) {
      // Scan the (2r+1)^dim block; stop once the block provably contains the nearest point.
      Key offs{};
      std::vector<int> counter(dim, -radius);
      while (true) {
        Key k = center;
        for (int d = 0; d < dim; ++d) k[d] += counter[d];
        auto it = grid.find(k);
        if (it != grid.end()) {
          for (int idx : it->second) best = std::min(best, (b[idx] - p).norm());
        }
        int d = 0;
        while (d < dim && ++counter[d] > radius) counter[d++] = -radius;
        if (d == dim) break;
      }
      (void)offs;
      if (best <= radius * cell || radius * cell > 2.0 * diam + (p - b[0]).norm()) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(std::span<const Vec> a, std::span<const Vec> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<Vec> sphere_points(int dim, int count, unsigned seed) {
  std::vector<Vec> out;
  out.reserve(count);
  if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      Vec p(3);
      p << r * std::cos(golden * i), r * std::sin(golden * i), z;
      out.push_back(p);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    Vec p(dim);
    for (int d = 0; d < dim; ++d) p[d] = g(rng);
    out.push_back(p / p.norm());
  }
  return out;
}

Stereographic::Stereographic(const Vec& pole) : pole_(pole / pole.norm()) {
  const int dim = static_cast<int>(pole.size());
  Mat full = Mat::Identity(dim, dim);
  // Gram-Schmidt starting from the pole.
  std::vector<Vec> basis{pole_};
  for (int i = 0; i < dim && static_cast<int>(basis.size()) < dim; ++i) {
    Vec v = full.col(i);
    for (const auto& b : basis) v -= v.dot(b) * b;
    if (v.norm() > 1e-6) basis.push_back(v / v.norm());
  }
  basis_.resize(dim - 1, dim);
  for (int i = 1; i < dim; ++i) basis_.row(i - 1) = basis[i].transpose();
  // Fix the frame (pole, basis) to be positively oriented so that the projection has the same
  // orientation behaviour for every pole.
  Mat frame(dim, dim);
  frame.row(0) = pole_.transpose();
  frame.bottomRows(dim - 1) = basis_;
  if (dim > 1 && frame.determinant() < 0.0) basis_.row(dim - 2) *= -1.0;
}

Vec Stereographic::operator()(const Vec& p) const {
  const double denom = 1.0 - pole_.dot(p);
  return basis_ * p / denom;
}

Mat rotation_taking(const Vec& from, const Vec& to) {
  // Rotation by the angle between f and t in the plane they span; identity on its complement.
  const int dim = static_cast<int>(from.size());
  const Vec f = from / from.norm();
  const Vec t = to / to.norm();
  Mat r = Mat::Identity(dim, dim);
  Vec v = t - t.dot(f) * f;
  if (v.norm() <= 1e-14) {
    if (f.dot(t) > 0) return r;
    // antipodal: rotate by pi in a plane containing f
    v = Vec::Zero(dim);
    int axis = 0;
    for (int i = 1; i < dim; ++i) if (std::abs(f[i]) < std::abs(f[axis])) axis = i;
    v[axis] = 1.0;
    v -= v.dot(f) * f;
  }
  v /= v.norm();
  const double c = std::clamp(f.dot(t), -1.0, 1.0), s = std::sqrt(std::max(0.0, 1.0 - c * c));
  r += (c - 1.0) * (f * f.transpose() + v * v.transpose()) + s * (v * f.transpose() - f * v.transpose());
  return r;
}

}  // namespace worldsheet::geom
