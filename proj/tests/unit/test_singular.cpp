#include "doctest.h"
#include "oracles.hpp"
#include "worldsheet/gauges.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/surface.hpp"

using namespace worldsheet;
using oracle::vec2;

namespace {

AngleRep linear_angle(double phase) {
  return {[phase](double x) { return x + phase; }, [](double) { return 1.0; }, 1};
}

// Independent zero finder for n = 2: Newton on a'(s) + b'(sigma) = 0 with a finite-difference
// Jacobian, run from every local minimum of a coarse grid.
std::vector<std::pair<double, double>> newton_zeros(const OrthogonalGauge& g, int n) {
  const double E = g.E0, h = E / n;
  auto r = [&](double s, double q) -> Eigen::Vector2d {
    const Vec v = g.a.tangent(s) + g.b.tangent(q);
    return {v[0], v[1]};
  };
  std::vector<double> grid(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grid[i * n + j] = r(i * h, j * h).squaredNorm();
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = grid[i * n + j];
      bool minimum = v < 0.05;
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && grid[((i + di + n) % n) * n + (j + dj + n) % n] < v) minimum = false;
      if (!minimum) continue;
      Eigen::Vector2d p(i * h, j * h);
      for (int it = 0; it < 40; ++it) {
        const Eigen::Vector2d f = r(p[0], p[1]);
        if (f.norm() < 1e-13) break;
        Eigen::Matrix2d J;
        const double d = 1e-7;
        J.col(0) = (r(p[0] + d, p[1]) - r(p[0] - d, p[1])) / (2 * d);
        J.col(1) = (r(p[0], p[1] + d) - r(p[0], p[1] - d)) / (2 * d);
        p -= J.fullPivLu().solve(f);
      }
      if (r(p[0], p[1]).norm() < 1e-10) out.emplace_back(wrap(p[0], E), wrap(p[1], E));
    }
  }
  return out;
}

double torus_distance(double s0, double q0, double s1, double q1, double E) {
  return std::hypot(circular_diff(s0, s1, E), circular_diff(q0, q1, E));
}

}  // namespace

TEST_CASE("circle gauge has one full time slice at t = pi/2") {
  const auto g = gauges::circle();
  const auto rep = find_antipodal_pairs(g);
  REQUIRE(rep.components.size() == 1);
  const auto& c = rep.components.front();
  CHECK(c.kind == SingKind::FullTimeSlice);
  CHECK(c.t_min == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(c.t_max == doctest::Approx(kPi / 2).epsilon(1e-9));
  for (const auto& p : rep.pairs) {
    CHECK(p.residual <= 1e-8);
    CHECK(std::abs(circular_diff(p.s - p.sigma, kPi, kTwoPi)) <= 1e-8);
    CHECK(p.s == doctest::Approx(wrap(p.x + p.t, kTwoPi)).epsilon(1e-14));
  }
  CHECK_FALSE(is_global_immersion(g).immersed);
}

TEST_CASE("hopf gauge is a global immersion") {
  const auto g = gauges::hopf();
  const auto rep = find_antipodal_pairs(g);
  CHECK(rep.empty());
  CHECK(std::abs(rep.min_residual - std::sqrt(2.0)) <= 1e-9);
  const auto im = is_global_immersion(g);
  CHECK(im.immersed);
  CHECK(std::abs(im.margin - std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("alpha = x, beta = x + pi/2 has a full slice at pi/4") {
  const auto g = gauges::full_slice();
  const auto rep = find_antipodal_pairs(g);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components.front().kind == SingKind::FullTimeSlice);
  CHECK(rep.components.front().t_min == doctest::Approx(kPi / 4).epsilon(1e-8));
  CHECK(sing_star_time_extent(g).sing_star.empty());
}

TEST_CASE("meridian loops gauge is immersed") {
  const auto g = gauges::meridian_loops();
  const auto im = is_global_immersion(g);
  CHECK(im.immersed);
  CHECK(im.margin > 0.05);
}

TEST_CASE("pairs are singular points of the metric") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto g = gauges::random_fourier(2, seed);
    const auto rep = find_antipodal_pairs(g);
    REQUIRE_FALSE(rep.empty());
    for (const auto& p : rep.pairs) {
      CHECK(std::abs(metric_det(g, p.t, p.x)) <= 1e-6);
      CHECK(derivatives(g, p.t, p.x).gamma_x.norm() <= 1e-7);
      CHECK((p.point.tail(2) - gamma(g, p.t, p.x)).norm() <= 1e-12);
      const auto back = make_pair(g, p.x + p.t, p.x - p.t);
      CHECK(torus_distance(back.s, back.sigma, p.s, p.sigma, g.E0) <= 1e-12);
    }
  }
}

TEST_CASE("detection agrees with an independent Newton oracle") {
  for (unsigned seed = 10; seed < 30; ++seed) {
    const auto g = gauges::random_fourier(2, seed);
    const auto rep = find_antipodal_pairs(g);
    const double cell = g.E0 / rep.grid_n;
    for (const auto& p : rep.pairs) {
      CHECK((g.a.tangent(p.s) + g.b.tangent(p.sigma)).norm() <= 10 * rep.eps_sing);
    }
    for (const auto& [s, q] : newton_zeros(g, 256)) {
      double best = 1e9;
      for (const auto& p : rep.pairs) best = std::min(best, torus_distance(s, q, p.s, p.sigma, g.E0));
      CHECK_MESSAGE(best <= 2 * cell, "seed " << seed << " missed zero at " << s << ", " << q);
    }
  }
}

TEST_CASE("every periodic planar gauge is singular") {
  for (unsigned seed = 100; seed < 200; seed += 10) {
    CHECK_FALSE(find_antipodal_pairs(gauges::random_fourier(2, seed), {128}).empty());
  }
}

TEST_CASE("tangent formula matches the direct unit tangent") {
  const auto g = gauges::angle_pair(linear_angle(0.0), linear_angle(-kPi / 2), kTwoPi, vec2(0, 0),
                                    vec2(0, 0), "quarter");
  const TwoDAngleState st(g);
  CHECK((tangent_formula(st, 0.0, 0.0) - unit_tangent(g, 0.0, 0.0)).norm() <= 1e-12);

  const auto r = gauges::random_fourier(2, 5);
  const TwoDAngleState rs(r);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t = r.E0 * std::fmod(0.618034 * i, 1.0), x = r.E0 * std::fmod(0.414214 * i, 1.0);
    if (derivatives(r, t, x).gamma_x.norm() < 1e-6) continue;
    worst = std::max(worst, angle_between(tangent_formula(rs, t, x), unit_tangent(r, t, x)));
    ++used;
  }
  CHECK(used > 990);
  CHECK(worst <= 1e-8);
  CHECK_THROWS_AS(tangent_formula(TwoDAngleState(gauges::circle()), kPi / 2, 0.3), PreconditionError);
}

TEST_CASE("circle full slice is not in Sing*") {
  const auto g = gauges::circle();
  auto rep = find_antipodal_pairs(g);
  classify_all(g, rep);
  CHECK(rep.components.front().sing_star == SingStar::No);
  CHECK(sing_star_time_extent(g).sing_star.empty());
  const auto ext = sing_star_time_extent(g);
  // F = 2t - pi vanishes identically at t = pi/2 and 3 pi/2.
  REQUIRE(ext.full_slices.size() == 2);
  CHECK(ext.full_slices[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(ext.full_slices[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
}

TEST_CASE("nonconvex gauge carries Sing* on an open time interval") {
  const auto g = gauges::nonconvex();
  const auto ext = sing_star_time_extent(g);
  REQUIRE_FALSE(ext.sing_star.empty());
  CHECK(ext.total_length() > 0.0);
  auto rep = find_antipodal_pairs(g);
  classify_all(g, rep);
  bool any = false;
  for (const auto& c : rep.components) any |= c.sing_star == SingStar::Yes;
  CHECK(any);
}

TEST_CASE("null tangent check") {
  const auto circle = gauges::circle();
  const auto pair = make_pair(circle, kPi / 2 + 0.4, 0.4 - kPi / 2);
  // tau(q) = (-sin x_q, cos x_q) against the radial gamma_t(p): exactly |sin(x_q - x_p)| <= r.
  const std::vector<double> radii{1e-1, 1e-2, 1e-3};
  const auto cv = null_tangent_check(circle, pair, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(cv[i] <= radii[i] * (1 + 1e-9));
    CHECK(cv[i] >= 0.99 * std::sin(radii[i]));
  }

  const auto g = gauges::perturbed_circle(9);
  const auto rep = find_antipodal_pairs(g);
  REQUIRE_FALSE(rep.empty());
  const auto vals = null_tangent_check(g, {4e-3, 2e-3, 1e-3, 5e-4});
  for (std::size_t i = 1; i < vals.size(); ++i) {
    INFO("radius step " << i << ": " << vals[i - 1] << " -> " << vals[i]);
    CHECK(vals[i] <= vals[i - 1] + 1e-7);
  }
  CHECK_THROWS_AS(null_tangent_check(gauges::hopf(), {1e-2}), PreconditionError);
}
