#include "doctest.h"
#include "worldsheet/constructions.hpp"
#include "worldsheet/gauges.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/surface.hpp"

using namespace worldsheet;

namespace {

// Left end of C_sigma(word): each digit 1 at depth j moves right by (1 + sigma)/2 * ((1 - sigma)/2)^(j-1).
Interval interval_oracle(double sigma, unsigned word, int level) {
  const double r = 0.5 * (1.0 - sigma);
  double lo = 0.0, len = 1.0;
  for (int j = 1; j <= level; ++j) {
    const unsigned digit = (word >> (level - j)) & 1u;
    if (digit) lo += len * (1.0 - r);
    len *= r;
  }
  return {lo, lo + len};
}

}  // namespace

TEST_CASE("cantor parameters") {
  const auto s1 = CantorSpec::make(1);
  CHECK(s1.mu == doctest::Approx(7.0 / 8));
  CHECK(s1.delta == doctest::Approx(1.0 / 14));
  CHECK(s1.nu == doctest::Approx(15.0 / 16));
  CHECK(s1.alpha == doctest::Approx(1.0 - 2.0 * std::pow(2.0, -8.0 / 7)));
  CHECK(s1.beta == doctest::Approx(1.0 - 2.0 * std::pow(2.0, -16.0 / 15)));
  const auto s2 = CantorSpec::make(2);
  CHECK(s2.mu == doctest::Approx(3.0 / 8));
  CHECK(s2.nu == doctest::Approx(7.0 / 8));
  CHECK(s2.alpha == doctest::Approx(0.685).epsilon(1e-3));
  CHECK_THROWS_AS(CantorSpec::make(1, 0), PreconditionError);
  CHECK_THROWS_AS(CantorSpec::make(3, 8, 2), PreconditionError);
}

TEST_CASE("cantor intervals and digit flip") {
  for (double sigma : {0.1, 0.5}) {
    for (unsigned w = 0; w < 16; ++w) {
      const auto a = cantor_interval(sigma, w, 4), b = interval_oracle(sigma, w, 4);
      CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-14));
      CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-14));
    }
  }
  CHECK(flip_even_digits(0b0000u, 4) == 0b0101u);
  CHECK(flip_even_digits(0b1011u, 4) == 0b1110u);
}

TEST_CASE("depth one cantor function") {
  const CantorFunction f(CantorSpec::make(1, 1));
  REQUIRE(f.intervals().size() == 2);
  CHECK(f.sigma_samples().size() == 2);
  const double b = f.spec().beta;
  CHECK(f.intervals()[0].hi == doctest::Approx(0.5 * (1.0 - b)));
  CHECK(f.intervals()[1].lo == doctest::Approx(0.5 * (1.0 + b)));
}

TEST_CASE("cantor function leaves map into the flipped target intervals") {
  for (int k : {1, 2}) {
    const CantorFunction f(CantorSpec::make(k, 6));
    const int L = f.spec().depth;
    REQUIRE(f.intervals().size() == (1u << L));
    for (unsigned w = 0; w < (1u << L); ++w) {
      const auto target = interval_oracle(f.spec().alpha, flip_even_digits(w, L), L);
      const double v = f(f.intervals()[w].mid()) / f.scale();
      CHECK(v >= target.lo - 1e-12);
      CHECK(v <= target.hi + 1e-12);
    }
    CHECK(f.max_slope() == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("cantor function is C^k across the joins") {
  for (int k : {1, 2}) {
    const CantorFunction f(CantorSpec::make(k, 5));
    // Near each join the derivatives of order <= k fall off relative to their size in the gap.
    for (std::size_t i = 0; i + 1 < f.intervals().size(); ++i) {
      const double lo = f.intervals()[i].hi, hi = f.intervals()[i + 1].lo, h = 1e-6 * (hi - lo);
      for (int order = 1; order <= k; ++order) {
        double peak = 0.0;
        for (int j = 1; j < 32; ++j) peak = std::max(peak, std::abs(f.eval(lo + (hi - lo) * j / 32, order)));
        CHECK(std::abs(f.eval(lo + h, order)) <= 1e-3 * peak);
        CHECK(std::abs(f.eval(hi - h, order)) <= 1e-3 * peak);
        CHECK(f.eval(lo - h, order) == 0.0);
        CHECK(f.eval(hi + h, order) == 0.0);
      }
    }
    // Derivative agrees with a central difference of the value inside each gap.
    for (std::size_t i = 0; i + 1 < f.intervals().size(); ++i) {
      const double x = 0.5 * (f.intervals()[i].hi + f.intervals()[i + 1].lo), e = 1e-6;
      const double fd = (f(x + e) - f(x - e)) / (2 * e);
      CHECK(f.eval(x, 1) == doctest::Approx(fd).epsilon(1e-5));
      CHECK((f.eval(x, 1) > 0 ? 1 : -1) == f.gap_sign(static_cast<int>(i)));
    }
  }
}

TEST_CASE("sharp example gauge") {
  const auto ex = sharp_example_gauge(CantorSpec::make(1, 6), 257);
  CHECK(ex.gauge.E0 == doctest::Approx(8.0));
  CHECK(ex.gauge.a.unit_speed_violation() <= 1e-9);
  CHECK(ex.gauge.b.unit_speed_violation() <= 1e-9);
  REQUIRE(!ex.predicted_tx.empty());
  double worst = 0.0;
  for (const auto& [t, x] : ex.predicted_tx) worst = std::max(worst, derivatives(ex.gauge, t, x).gamma_x.norm());
  CHECK(worst <= 1e-9);
  // Gap interiors are regular: a' tilts away from the vertical there.
  const auto& leaves = ex.f.intervals();
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    const double u = 0.5 * (leaves[i].hi + leaves[i + 1].lo);
    const double t = ex.t_center, x = u + ex.shift - t;
    CHECK(derivatives(ex.gauge, t, x).gamma_x.norm() > 1e-6);
  }
  CHECK(is_global_immersion(ex.gauge).immersed == false);
}

TEST_CASE("nonuniqueness pair") {
  const auto np = nonuniqueness_pair(3, 0.05);
  CHECK(np.id.E0 == doctest::Approx(3.0));
  CHECK(is_global_immersion(np.id).immersed);
  CHECK(is_global_immersion(np.pi).immersed);
  for (int i = 0; i < 8; ++i) CHECK(slice_distance(np.id, np.pi, 0.05 * i / 7) <= 1e-6);
  CHECK(slice_distance(np.id, np.pi, 0.5) >= 0.01);
  // Time period 3: the slices at t and t + 3 coincide.
  CHECK(slice_distance(np.pi, np.pi, 0.0) <= 1e-12);
  CHECK((gamma(np.pi, 3.4, 0.7) - gamma(np.pi, 0.4, 0.7)).norm() <= 1e-9);
  CHECK_THROWS_AS(nonuniqueness_pair(2), PreconditionError);
}

TEST_CASE("same surface family") {
  const auto ss = same_surface_family(3, 0.05);
  for (int i = 0; i < 32; ++i) CHECK(slice_distance(ss.id, ss.pi, 3.0 * i / 32) <= 1e-6);
  // Different parametrizations of the same surface.
  double pointwise = 0.0;
  for (int i = 0; i < 64; ++i) pointwise = std::max(pointwise, (gamma(ss.id, 0.5, 3.0 * i / 64) - gamma(ss.pi, 0.5, 3.0 * i / 64)).norm());
  CHECK(pointwise >= 0.01);
}

TEST_CASE("extinction pair") {
  const auto circ = gauges::circle().a;
  const auto oval = gauges::oval(0.2).a;
  const auto ep = extinction_pair(circ, oval);
  CHECK(ep.tbar == doctest::Approx(kPi / 2));
  double vanish = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = kTwoPi * i / 1000;
    vanish = std::max(vanish, gamma(ep.gauge1, ep.tbar, x).norm());
    vanish = std::max(vanish, gamma(ep.gauge2, ep.tbar, x).norm());
  }
  CHECK(vanish <= 1e-8);
  // s is monotone and the glued surface has matching one-sided time derivatives at tbar.
  const double h = 1e-4, tb = ep.tbar;
  double mismatch = 0.0, prev = ep.s_map(0.0);
  for (int i = 1; i <= 200; ++i) {
    const double x = kTwoPi * i / 200;
    const double s = ep.s_map(x);
    CHECK(s > prev);
    prev = s;
    const Vec left = (3 * ep.glued(tb - 1e-15, x) - 4 * ep.glued(tb - h, x) + ep.glued(tb - 2 * h, x)) / (2 * h);
    const Vec right = (-3 * ep.glued(tb, x) + 4 * ep.glued(tb + h, x) - ep.glued(tb + 2 * h, x)) / (2 * h);
    mismatch = std::max(mismatch, (left - right).norm());
  }
  CHECK(mismatch <= 1e-6);
  CHECK_THROWS_AS(extinction_pair(circ, gauges::nonconvex().a), PreconditionError);
  CHECK_THROWS_AS(extinction_pair(circ, gauges::random_fourier(2, 3).a), PreconditionError);
}
