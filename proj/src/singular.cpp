#include "worldsheet/singular.hpp"

#include "worldsheet/parallel.hpp"
#include "worldsheet/surface.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace worldsheet {

std::string to_string(SingKind kind) {
  switch (kind) {
    case SingKind::Isolated: return "isolated";
    case SingKind::CurveSegment: return "curve_segment";
    case SingKind::FullTimeSlice: return "full_time_slice";
  }
  return "unknown";
}

std::string to_string(SingStar flag) {
  switch (flag) {
    case SingStar::Yes: return "yes";
    case SingStar::No: return "no";
    case SingStar::Undetermined: return "undetermined";
  }
  return "unknown";
}

double sing_tolerance(const OrthogonalGauge& g) {
  const bool sampled = g.a.kind() == TangentKind::SpherePath || g.b.kind() == TangentKind::SpherePath;
  return sampled ? 1e-5 : 1e-8;
}

SingularPair make_pair(const OrthogonalGauge& g, double s, double sigma) {
  const double E0 = g.E0;
  SingularPair p;
  p.s = wrap(s, E0);
  p.sigma = wrap(sigma, E0);
  p.residual = (g.a.tangent(p.s) + g.b.tangent(p.sigma)).norm();
  double t = 0.5 * (p.s - p.sigma);  // in (-E0/2, E0/2)
  double x = 0.5 * (p.s + p.sigma);  // in [0, E0)
  // (t, x) and (t + E0/2, x + E0/2) describe the same pair (s + E0, sigma).
  if (t < 0.0) {
    t += 0.5 * E0;
    x += 0.5 * E0;
  }
  if (t >= 0.5 * E0) t -= 0.5 * E0, x -= 0.5 * E0;
  p.t = t;
  p.x = x;
  const Vec gm = gamma(g, t, x);
  p.point.resize(gm.size() + 1);
  p.point[0] = t;
  p.point.tail(gm.size()) = gm;
  return p;
}

namespace {

struct Refined {
  double s, sigma, residual;
};

// Levenberg-Marquardt on f(s, sigma) = a'(s) + b'(sigma); also serves as a local minimizer of
// |f| when no zero exists nearby.
Refined refine(const OrthogonalGauge& g, double s, double sigma, int iterations = 60) {
  Vec f = g.a.tangent(s) + g.b.tangent(sigma);
  double r = f.norm();
  double lambda = 1e-10;
  for (int it = 0; it < iterations && r > 1e-15; ++it) {
    const Vec da = g.a.tangent_derivative(s);
    const Vec db = g.b.tangent_derivative(sigma);
    Eigen::Matrix2d JtJ;
    JtJ << da.dot(da), da.dot(db), da.dot(db), db.dot(db);
    const Eigen::Vector2d Jtf(da.dot(f), db.dot(f));
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      const double scale = lambda * std::max(1e-12, JtJ.trace());
      Eigen::Matrix2d M = JtJ;
      M(0, 0) += scale;
      M(1, 1) += scale;
      const Eigen::Vector2d step = -M.ldlt().solve(Jtf);
      if (!step.allFinite()) break;
      const Vec fn = g.a.tangent(s + step[0]) + g.b.tangent(sigma + step[1]);
      const double rn = fn.norm();
      if (rn < r) {
        s += step[0];
        sigma += step[1];
        f = fn;
        improved = step.norm() > 1e-16 * g.E0 && rn < r * (1.0 - 1e-12);
        r = rn;
        lambda = std::max(1e-14, lambda * 0.1);
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return {s, sigma, r};
}

double torus_dist(double s1, double q1, double s2, double q2, double E0) {
  return std::hypot(circular_diff(s1, s2, E0), circular_diff(q1, q2, E0));
}

// Spatial hash on the (s, sigma) torus with square cells.
class TorusHash {
 public:
  TorusHash(double E0, double cell) : E0_(E0), n_(std::max(1, static_cast<int>(std::floor(E0 / cell)))) {}
  long long key(int i, int j) const { return static_cast<long long>(((i % n_) + n_) % n_) * n_ + ((j % n_) + n_) % n_; }
  std::pair<int, int> cell(double s, double q) const {
    return {static_cast<int>(std::floor(wrap(s, E0_) / E0_ * n_)), static_cast<int>(std::floor(wrap(q, E0_) / E0_ * n_))};
  }
  void insert(double s, double q, int id) {
    auto [i, j] = cell(s, q);
    map_[key(i, j)].push_back(id);
  }
  template <typename Fn>
  void neighbors(double s, double q, Fn fn) const {
    auto [i, j] = cell(s, q);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        auto it = map_.find(key(i + di, j + dj));
        if (it == map_.end()) continue;
        for (int id : it->second) fn(id);
      }
    }
  }

 private:
  double E0_;
  int n_;
  std::unordered_map<long long, std::vector<int>> map_;
};

// Circular extent of values on a circle of length `period`: returns (start, extent, max gap).
std::tuple<double, double, double> circular_extent(std::vector<double> v, double period) {
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return {v[0], 0.0, period};
  double best_gap = period - (v.back() - v.front());
  double start = v.front();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double gap = v[i] - v[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      start = v[i];
    }
  }
  return {start, period - best_gap, best_gap};
}

}  // namespace

SingularityReport find_antipodal_pairs(const OrthogonalGauge& g, const DetectOptions& opt) {
  const int N = opt.grid_n;
  if (N < 64) throw PreconditionError("find_antipodal_pairs: grid_n must be at least 64");
  const double E0 = g.E0;
  const double h = E0 / N;
  SingularityReport rep;
  rep.grid_n = N;
  rep.eps_sing = opt.tol > 0.0 ? opt.tol : sing_tolerance(g);

  std::vector<Vec> A(N), B(N);
  for (int i = 0; i < N; ++i) {
    A[i] = g.a.tangent(i * h);
    B[i] = g.b.tangent(i * h);
  }
  double La = 0.0, Lb = 0.0;
  for (int i = 0; i < N; ++i) {
    La = std::max(La, (A[(i + 1) % N] - A[i]).norm());
    Lb = std::max(Lb, (B[(i + 1) % N] - B[i]).norm());
  }
  const double turn = La + Lb;  // bound on the change of |f| across one cell
  if (turn > 0.5) {
    const int suggested = static_cast<int>(std::ceil(N * turn / 0.25));
    rep.warnings.push_back("grid too coarse for the tangent turning rate; suggested grid_n >= " +
                           std::to_string(suggested));
  }

  std::vector<double> R(static_cast<std::size_t>(N) * N);
  parallel_for(N, [&](int i) {
    for (int j = 0; j < N; ++j) R[static_cast<std::size_t>(i) * N + j] = (A[i] + B[j]).squaredNorm();
  }, opt.threads);
  auto at = [&](int i, int j) { return R[static_cast<std::size_t>((i + N) % N) * N + (j + N) % N]; };

  // Seeds: local minima below 0.1 and every cell close enough to hold a zero.
  const double near = turn * turn;
  std::vector<std::pair<int, int>> seeds;
  std::vector<std::pair<double, int>> lowest;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const double r = at(i, j);
      bool seed = r <= near;
      if (!seed && r < 0.1) {
        seed = true;
        for (int di = -1; di <= 1 && seed; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if ((di || dj) && at(i + di, j + dj) < r) {
              seed = false;
              break;
            }
          }
        }
      }
      if (seed) seeds.push_back({i, j});
    }
  }
  {
    std::vector<int> order(R.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t keep = std::min<std::size_t>(16, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](int p, int q) { return R[p] < R[q]; });
    for (std::size_t k = 0; k < keep; ++k) lowest.push_back({R[order[k]], order[k]});
  }

  std::vector<Refined> refined(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), [&](int k) {
    refined[k] = refine(g, seeds[k].first * h, seeds[k].second * h);
  }, opt.threads);

  // Margin: refine the lowest grid values as a local minimization of |f|.
  double margin = std::sqrt(lowest.empty() ? 0.0 : lowest.front().first);
  for (auto& [r, idx] : lowest) {
    const auto m = refine(g, (idx / N) * h, (idx % N) * h);
    margin = std::min(margin, m.residual);
  }
  for (const auto& r : refined) margin = std::min(margin, r.residual);
  rep.min_residual = margin;

  // Accept, lowest residual first, deduplicating at 2h on the torus.
  std::vector<int> order;
  for (int k = 0; k < static_cast<int>(refined.size()); ++k) {
    if (refined[k].residual <= rep.eps_sing) order.push_back(k);
  }
  std::sort(order.begin(), order.end(), [&](int p, int q) {
    if (refined[p].residual != refined[q].residual) return refined[p].residual < refined[q].residual;
    return p < q;
  });
  TorusHash dedup(E0, 2.0 * h);
  std::vector<Refined> kept;
  for (int k : order) {
    const auto& c = refined[k];
    bool dup = false;
    dedup.neighbors(c.s, c.sigma, [&](int id) {
      if (!dup && torus_dist(c.s, c.sigma, kept[id].s, kept[id].sigma, E0) < 2.0 * h) dup = true;
    });
    if (dup) continue;
    dedup.insert(c.s, c.sigma, static_cast<int>(kept.size()));
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [&](const Refined& p, const Refined& q) {
    const double ps = wrap(p.s, E0), qs = wrap(q.s, E0);
    if (ps != qs) return ps < qs;
    return wrap(p.sigma, E0) < wrap(q.sigma, E0);
  });
  rep.pairs.resize(kept.size());
  parallel_for(static_cast<int>(kept.size()), [&](int k) {
    rep.pairs[k] = make_pair(g, kept[k].s, kept[k].sigma);
  }, opt.threads);

  // Components: union-find with link radius 4h.
  const int P = static_cast<int>(rep.pairs.size());
  std::vector<int> parent(P);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  TorusHash link(E0, 4.0 * h);
  for (int k = 0; k < P; ++k) link.insert(rep.pairs[k].s, rep.pairs[k].sigma, k);
  for (int k = 0; k < P; ++k) {
    link.neighbors(rep.pairs[k].s, rep.pairs[k].sigma, [&](int id) {
      if (torus_dist(rep.pairs[k].s, rep.pairs[k].sigma, rep.pairs[id].s, rep.pairs[id].sigma, E0) <= 4.0 * h) {
        parent[find(k)] = find(id);
      }
    });
  }
  std::map<int, std::vector<int>> groups;
  for (int k = 0; k < P; ++k) groups[find(k)].push_back(k);
  for (auto& [root, members] : groups) {
    SingComponent comp;
    std::vector<double> ts, xs;
    for (int id : members) {
      comp.pairs.push_back(rep.pairs[id]);
      ts.push_back(rep.pairs[id].t);
      xs.push_back(rep.pairs[id].x);
    }
    const auto [t0, text, tgap] = circular_extent(ts, 0.5 * E0);
    const auto [x0, xext, xgap] = circular_extent(xs, E0);
    comp.t_min = t0;
    comp.t_max = t0 + text;
    if (text <= 2.0 * h && xgap <= 4.0 * h) {
      comp.kind = SingKind::FullTimeSlice;
    } else if (text <= 4.0 * h && xext <= 4.0 * h) {
      comp.kind = SingKind::Isolated;
    } else {
      comp.kind = SingKind::CurveSegment;
    }
    rep.components.push_back(std::move(comp));
  }
  return rep;
}

TangentSumMinimum minimize_tangent_sum(const OrthogonalGauge& g, double s, double sigma) {
  const auto r = refine(g, s, sigma);
  return {wrap(r.s, g.E0), wrap(r.sigma, g.E0), r.residual};
}

ImmersionCheck is_global_immersion(const OrthogonalGauge& g, int grid_n) {
  DetectOptions opt;
  opt.grid_n = grid_n;
  const auto rep = find_antipodal_pairs(g, opt);
  return {rep.pairs.empty(), rep.min_residual};
}

}  // namespace worldsheet
