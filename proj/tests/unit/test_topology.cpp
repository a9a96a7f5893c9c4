#include "doctest.h"
#include "oracles.hpp"
#include "worldsheet/gauges.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/topology.hpp"

using namespace worldsheet;
using oracle::vec3;

namespace {

Vec vec4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

// Circle of angular radius rho around the unit vector `center`, spanned with u, v.
std::function<Vec(double)> small_circle(Vec center, Vec u, Vec v, double rho, int orientation = 1) {
  return [=](double x) {
    return Vec(std::cos(rho) * center + std::sin(rho) * (std::cos(x) * u + orientation * std::sin(x) * v));
  };
}

}  // namespace

TEST_CASE("hopf diagram") {
  const auto d = diagram(gauges::hopf());
  CHECK(d.disjoint);
  CHECK(std::abs(d.min_distance - std::sqrt(2.0)) <= 1e-9);
  for (const auto& p : d.curve_a) CHECK(std::abs(p.norm() - 1) <= 1e-9);
}

TEST_CASE("circle gauge in three dimensions has identical images") {
  const auto d = diagram(gauges::circle(3));
  CHECK_FALSE(d.disjoint);
  CHECK(d.min_distance <= 1e-12);
}

TEST_CASE("meridian loops have winding zero") {
  const auto d = diagram(gauges::meridian_loops(), 1024);
  CHECK(d.disjoint);
  CHECK(d.min_distance > 0.2);
  const auto w = winding_report(d);
  CHECK(w.winding == 0);
  CHECK(w.second_winding == 0);
  CHECK((w.center - w.second_center).norm() >= 0.5);
  CHECK(winding_number(diagram(gauges::meridian_loops(), 2048)) == 0);
}

TEST_CASE("equator around a polar loop winds once") {
  const auto d = diagram([](double x) { return vec3(std::cos(x), std::sin(x), 0.0); },
                         small_circle(vec3(0, 0, 1), vec3(1, 0, 0), vec3(0, 1, 0), 0.3), 3, kTwoPi, 512);
  REQUIRE(d.disjoint);
  CHECK(std::abs(winding_number(d)) == 1);
  // planar oracle: unit circle around the origin, traversed twice
  std::vector<Vec> loop;
  for (int i = 0; i < 100; ++i) loop.push_back(oracle::vec2(std::cos(4 * kPi * i / 100), std::sin(4 * kPi * i / 100)));
  CHECK(planar_winding(loop, oracle::vec2(0.1, 0.2)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(planar_winding(loop, oracle::vec2(3, 0))) <= 1e-12);
}

TEST_CASE("hopf linking number") {
  const auto r = linking_report(diagram(gauges::hopf(), 512));
  CHECK(std::abs(r.linking) == 1);
  CHECK(r.residual <= 0.1);
  CHECK(linking_number(diagram(gauges::hopf(), 1024)) == r.linking);
  CHECK(linking_number(diagram(gauges::hopf(true), 512)) * r.linking == -1);
}

TEST_CASE("unlinked control and orientation reversal") {
  const Vec e1 = vec4(1, 0, 0, 0), e2 = vec4(0, 1, 0, 0), e3 = vec4(0, 0, 1, 0), e4 = vec4(0, 0, 0, 1);
  const auto unlinked = diagram(small_circle(e1, e2, e3, 0.3), small_circle(Vec(-e1), e2, e4, 0.3), 4, kTwoPi, 256);
  CHECK(linking_number(unlinked) == 0);
  // Gauss integral oracle on the standard Hopf pair, then with the second curve reversed.
  auto a = [&](double x) { return Vec(std::cos(x) * e1 + std::sin(x) * e2); };
  auto b = [&](double x) { return Vec(std::cos(x) * e3 + std::sin(x) * e4); };
  auto b_rev = [&](double x) { return Vec(std::cos(x) * e3 - std::sin(x) * e4); };
  const int lk = linking_number(diagram(a, b, 4, kTwoPi, 512));
  CHECK(std::abs(lk) == 1);
  CHECK(linking_number(diagram(a, b_rev, 4, kTwoPi, 512)) == -lk);
}

TEST_CASE("gauss integral of a planar Hopf-like pair") {
  // unit circle in the xy-plane and a circle through its center in the xz-plane
  std::vector<Vec> c1, c2;
  for (int i = 0; i < 400; ++i) {
    const double t = kTwoPi * i / 400;
    c1.push_back(vec3(std::cos(t), std::sin(t), 0));
    c2.push_back(vec3(1 + std::cos(t), 0, std::sin(t)));
  }
  CHECK(std::abs(std::abs(gauss_linking_integral(c1, c2)) - 1.0) <= 1e-3);
}

TEST_CASE("genericity probes") {
  PerturbationOptions opt;
  opt.trials = 8;
  const auto h = genericity_probe(gauges::hopf(), opt);
  CHECK(h.smooth == 8);
  CHECK(h.margin_min > 1.2);
  const auto p = genericity_probe(gauges::random_fourier(2, 4), opt);
  CHECK(p.singular + p.discarded == 8);
  CHECK(p.singular >= 6);

  const auto c = perturb_curve(gauges::hopf().a, 0.05, 3);
  CHECK(c.unit_speed_violation() <= 1e-12);
  CHECK(closure_defect(c).defect <= 1e-8);
  // C^1 size of the change of tangent
  const auto base = gauges::hopf().a;
  double sup = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double x = kTwoPi * i / 512;
    sup = std::max(sup, (c.tangent(x) - base.tangent(x)).norm());
    sup = std::max(sup, (c.tangent_derivative(x) - base.tangent_derivative(x)).norm());
  }
  CHECK(sup <= 0.05);
  CHECK(sup >= 0.01);
}

TEST_CASE("transversal count") {
  const auto g = gauges::two_crossings();
  CHECK(transversal_count(g) == 2);
  CHECK(transversal_count(gauges::meridian_loops()) == 0);
  for (unsigned seed : {1u, 2u, 3u}) CHECK(transversal_count(perturb_gauge(g, 1e-3, seed)) == 2);
  CHECK_THROWS_AS(transversal_count(gauges::hopf()), PreconditionError);
}
