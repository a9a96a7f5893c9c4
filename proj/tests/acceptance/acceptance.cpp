// One PASS/FAIL line per acceptance criterion, with the measured quantities.

#include "worldsheet/constructions.hpp"
#include "worldsheet/dimension.hpp"
#include "worldsheet/gauges.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/surface.hpp"
#include "worldsheet/tangent_image.hpp"
#include "worldsheet/topology.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace worldsheet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

// ---- 1 ----
Outcome constraint_fidelity() {
  std::vector<OrthogonalGauge> gs{gauges::circle(), gauges::hopf()};
  for (unsigned s = 1; s <= 10; ++s) gs.push_back(gauges::random_fourier(2 + static_cast<int>(s % 3), s));
  double worst = 0.0, rmin = 1e9, rmax = 0.0;
  for (const auto& g : gs) {
    const auto r = constraint_residuals(g, 200, 200, 1e-3);
    worst = std::max({worst, r.max_norm_residual, r.max_orthogonality_residual, r.max_det_mismatch});
    rmin = std::min(rmin, r.richardson_ratio);
    rmax = std::max(rmax, r.richardson_ratio);
  }
  return {worst <= 1e-9 && rmin >= 3.5 && rmax <= 4.5,
          fmt("12 gauges, max residual %.2e, Richardson ratio in [%.3f, %.3f]", worst, rmin, rmax)};
}

// ---- 2 ----
Outcome circle_extinction() {
  const auto g = gauges::circle();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) worst = std::max(worst, gamma(g, g.E0 / 4, g.E0 * i / 1000).norm());
  auto rep = find_antipodal_pairs(g);
  bool slice_at_quarter = false;
  for (const auto& c : rep.components)
    if (c.kind == SingKind::FullTimeSlice && std::abs(c.t_min - g.E0 / 4) <= 1e-6 && std::abs(c.t_max - g.E0 / 4) <= 1e-6)
      slice_at_quarter = true;
  return {worst <= 1e-9 && slice_at_quarter,
          fmt("max |gamma(E0/4, x)| = %.2e, full_time_slice at E0/4: %s", worst, slice_at_quarter ? "yes" : "no")};
}

// ---- 3 ----
// Independent oracle: all 512^2 grid residuals, Newton with the exact Jacobian [a'', b''] from
// every local minimum below 0.1, then matching of converged zeros against detected pairs at
// cell resolution (for n = 2 the zeros form curves, sampled by the detector at spacing 2h).
Outcome antipodal_suite() {
  int empty = 0, missed = 0, zeros = 0, weak = 0;
  const int N = 512;
  for (unsigned seed = 1000; seed < 1100; ++seed) {
    const auto g = gauges::random_fourier(2, seed);
    const auto rep = find_antipodal_pairs(g);
    if (rep.empty()) ++empty;
    const double P = g.E0, h = P / N, eps = rep.eps_sing;
    for (const auto& p : rep.pairs)
      if (p.residual > 10 * eps) ++weak;
    std::vector<Vec> A(N), B(N);
    for (int i = 0; i < N; ++i) {
      A[i] = g.a.tangent(i * h);
      B[i] = g.b.tangent(i * h);
    }
    std::vector<double> R(N * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) R[i * N + j] = (A[i] + B[j]).norm();
    auto at = [&](int i, int j) { return R[((i + N) % N) * N + (j + N) % N]; };
    auto matched = [&](double s, double sigma, double radius) {
      for (const auto& p : rep.pairs)
        if (std::abs(circular_diff(p.s, s, P)) <= radius && std::abs(circular_diff(p.sigma, sigma, P)) <= radius) return true;
      return false;
    };
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        const double r = at(i, j);
        if (r < eps / 10 && !matched(i * h, j * h, 2 * h)) ++missed;
        if (r >= 0.1) continue;
        bool local_min = true;
        for (int di = -1; di <= 1 && local_min; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            if ((di || dj) && at(i + di, j + dj) < r) local_min = false;
        if (!local_min) continue;
        Eigen::Vector2d z(i * h, j * h);
        double res = r;
        for (int it = 0; it < 30 && res > 1e-15; ++it) {
          Eigen::Matrix2d J;
          J.col(0) = g.a.tangent_derivative(z[0]);
          J.col(1) = g.b.tangent_derivative(z[1]);
          const Eigen::Vector2d F = g.a.tangent(z[0]) + g.b.tangent(z[1]);
          z -= J.colPivHouseholderQr().solve(F);
          res = (g.a.tangent(z[0]) + g.b.tangent(z[1])).norm();
        }
        if (res < eps / 10) {
          ++zeros;
          if (!matched(wrap(z[0], P), wrap(z[1], P), 2 * h)) ++missed;
        }
      }
    }
  }
  return {empty == 0 && missed == 0 && weak == 0,
          fmt("100 gauges, %d empty, %d oracle zeros, %d missed, %d pairs above 10 eps_sing", empty, zeros, missed, weak)};
}

// ---- 4 ----
Outcome smooth_side() {
  const auto hopf = gauges::hopf(), mer = gauges::meridian_loops();
  const auto ih = is_global_immersion(hopf), im = is_global_immersion(mer);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -INFINITY;
  for (const auto* g : {&hopf, &mer})
    for (int i = 0; i < 10000; ++i) worst = std::max(worst, metric_det(*g, g->E0 * u(rng), g->E0 * u(rng)));
  const bool pass = ih.immersed && im.immersed && worst < 0 && std::abs(ih.margin - std::sqrt(2.0)) <= 1e-9;
  return {pass, fmt("hopf margin %.12f, meridian margin %.4f, max det %.3e", ih.margin, im.margin, worst)};
}

// ---- 5 ----
Outcome tangent_formula_check() {
  double worst = 0.0;
  int used = 0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const auto g = gauges::random_fourier(2, 500 + seed);
    const TwoDAngleState st(g);
    int n = 0;
    while (n < 1000) {
      const double t = g.E0 * u(rng), x = g.E0 * u(rng);
      if (derivatives(g, t, x).gamma_x.norm() < 1e-3) continue;
      worst = std::max(worst, angle_between(tangent_formula(st, t, x), unit_tangent(g, t, x)));
      ++n;
    }
    used += n;
  }
  return {worst <= 1e-8, fmt("%d points, max angular mismatch %.2e rad", used, worst)};
}

// ---- 6 ----
Outcome builder_check() {
  const Vec ex = v3(1, 0, 0), ey = v3(0, 1, 0), ez = v3(0, 0, 1);
  std::vector<SphericalCurve> targets{
      spherical::great_circle(ex, ey),
      spherical::great_circle(ex, Vec((ey + ez).normalized())),
      spherical::arc_loop(ez, ex, 30 * kPi / 180, 330 * kPi / 180, 0.25),
      {3, [](double th) { return Vec(v3(std::cos(th), std::sin(th), 0.6 * std::cos(3 * th)).normalized()); }, {}, "antipodal wave"},
      {4, [](double th) {
         Vec v(4);
         v << std::cos(th), std::sin(th), 0.7 * std::cos(2 * th), 0.7 * std::sin(2 * th);
         return Vec(v.normalized());
       }, {}, "torus knot"}};
  double closure = 0.0, speed = 0.0, haus = 0.0;
  for (const auto& c : targets) {
    const auto r = from_tangent_image(c);
    closure = std::max(closure, r.closure);
    speed = std::max(speed, r.curve.unit_speed_violation());
    haus = std::max(haus, r.hausdorff);
  }
  return {closure <= 1e-6 && speed <= 1e-9 && haus <= 1e-3,
          fmt("5 targets, closure %.2e, unit-speed violation %.2e, Hausdorff %.2e", closure, speed, haus)};
}

// ---- 7 ----
Outcome nonuniqueness_check() {
  const auto np = nonuniqueness_pair(3, 0.05);
  double near = 0.0;
  for (int i = 0; i < 8; ++i) near = std::max(near, slice_distance(np.id, np.pi, np.delta * i / 7));
  const double half = slice_distance(np.id, np.pi, 0.5);
  const bool imm = is_global_immersion(np.id).immersed && is_global_immersion(np.pi).immersed;
  const auto ss = same_surface_family(3, 0.05);
  double same = 0.0;
  for (int i = 0; i < 32; ++i) same = std::max(same, slice_distance(ss.id, ss.pi, 3.0 * i / 32));
  return {near <= 1e-6 && half >= 0.01 && imm && same <= 1e-6,
          fmt("d on [0,delta] %.2e, d(1/2) %.4f, immersed %s, same-surface d %.2e", near, half, imm ? "yes" : "no", same)};
}

// ---- 8 ----
Outcome sharpness(int k, double lo, double hi) {
  const auto ex = sharp_example_gauge(CantorSpec::make(k, 8, 8));
  BoxOptions opt;
  opt.normalize_axes = true;
  const auto s = box_count(singstar_cloud(ex), dyadic_ladder(), opt);
  return {s.slope >= lo && s.slope <= hi && s.r2 >= 0.98,
          fmt("k=%d slope %.4f (band [%.2f, %.2f]), r2 %.4f", k, s.slope, lo, hi, s.r2)};
}
Outcome sharpness_both() {
  const auto a = sharpness(1, 1.75, 2.05), b = sharpness(2, 1.35, 1.6);
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

// ---- 9 ----
Outcome both_alternatives() {
  const auto nc = sing_star_time_extent(gauges::nonconvex());
  const auto fs = sing_star_time_extent(gauges::full_slice());
  const bool open_interval = !nc.sing_star.empty() && nc.total_length() > 0;
  const bool alt1 = fs.sing_star.empty() && !fs.full_slices.empty();
  return {open_interval && alt1,
          fmt("nonconvex: %zu interval(s), total length %.4f; full-slice gauge: %zu Sing* intervals, %zu full slice(s)",
              nc.sing_star.size(), nc.total_length(), fs.sing_star.size(), fs.full_slices.size())};
}

// ---- 10 ----
Outcome genericity() {
  PerturbationOptions opt;
  opt.epsilon = 0.05;
  opt.trials = 50;
  opt.seed = 10;
  const auto hopf = genericity_probe(gauges::hopf(), opt);
  const auto planar = genericity_probe(gauges::random_fourier(2, 10), opt);
  const auto g = gauges::two_crossings();
  const int base = transversal_count(g);
  int changed = 0;
  for (unsigned s = 0; s < 10; ++s)
    if (transversal_count(perturb_gauge(g, 1e-3, 100 + s)) != base) ++changed;
  const bool pass = hopf.smooth == 50 && planar.singular == 50 && base == 2 && changed == 0;
  return {pass, fmt("hopf %d/50 smooth, n=2 %d/50 singular, transversal count %d, changed in %d/10", hopf.smooth,
                    planar.singular, base, changed)};
}

// ---- 11 ----
Outcome invariants() {
  const auto hopf = gauges::hopf();
  const auto l1 = linking_report(diagram(hopf, 1024)), l2 = linking_report(diagram(hopf, 2048));
  auto small = [](Vec center, Vec u, Vec v) {
    return [=](double x) { return Vec(std::cos(0.3) * center + std::sin(0.3) * (std::cos(x) * u + std::sin(x) * v)); };
  };
  Vec e[4];
  for (int i = 0; i < 4; ++i) e[i] = unit_vector(4, i);
  const auto unl = linking_report(diagram(small(e[0], e[1], e[2]), small(-e[0], e[1], e[3]), 4, kTwoPi, 1024));
  const auto w = winding_report(diagram(gauges::meridian_loops()));
  const bool pass = std::abs(l1.linking) == 1 && l1.residual <= 0.1 && l2.linking == l1.linking && unl.linking == 0 &&
                    w.winding == 0 && w.second_winding == 0;
  return {pass, fmt("hopf lk %d (residual %.1e, doubled %d), unlinked %d, meridian winding %d / %d", l1.linking,
                    l1.residual, l2.linking, unl.linking, w.winding, w.second_winding)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "constraint fidelity", 10, constraint_fidelity},
      {2, "circle extinction", 5, circle_extinction},
      {3, "antipodal pairs for n=2", 120, antipodal_suite},
      {4, "smooth side", 1e9, smooth_side},
      {5, "tangent formula", 1e9, tangent_formula_check},
      {6, "tangent image builder", 1e9, builder_check},
      {7, "nonuniqueness", 1e9, nonuniqueness_check},
      {8, "sharp dimension", 600, sharpness_both},
      {9, "both alternatives", 1e9, both_alternatives},
      {10, "genericity", 1e9, genericity},
      {11, "topological invariants", 1e9, invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.budget;
    if (!pass) ++failed;
    std::string budget = c.budget < 1e8 ? fmt(" (budget %.0f s)", c.budget) : "";
    std::printf("[%s] %2d %s: %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs, budget.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
