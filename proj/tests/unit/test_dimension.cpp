#include "doctest.h"
#include "worldsheet/dimension.hpp"
#include "worldsheet/gauges.hpp"

using namespace worldsheet;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("segment has dimension one") {
  PointCloud c;
  for (int i = 0; i <= 10000; ++i) c.points.push_back(point({i / 10000.0, 0.3 * i / 10000.0}));
  const auto s = box_count(c, dyadic_ladder());
  CHECK(s.slope >= 0.95);
  CHECK(s.slope <= 1.05);
  CHECK(s.reliable);
}

TEST_CASE("filled square has dimension two") {
  PointCloud c;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) c.points.push_back(point({i / 99.0, j / 99.0}));
  const auto s = box_count(c, dyadic_ladder(2, 6));
  CHECK(s.slope >= 1.9);
  CHECK(s.slope <= 2.1);
}

TEST_CASE("middle thirds cantor set") {
  PointCloud c;
  const int depth = 10;
  for (unsigned w = 0; w < (1u << depth); ++w) {
    double x = 0.0, len = 1.0;
    for (int j = depth - 1; j >= 0; --j) {
      len /= 3.0;
      if ((w >> j) & 1u) x += 2.0 * len;
    }
    c.points.push_back(point({x + 0.5 * len}));
  }
  const auto s = box_count(c, dyadic_ladder());
  CHECK(s.slope >= 0.58);
  CHECK(s.slope <= 0.68);
}

TEST_CASE("dedupe and preconditions") {
  PointCloud c{{point({0.0, 0.0}), point({0.0, 1e-14}), point({1.0, 1.0})}, "test"};
  CHECK(dedupe(c).points.size() == 2);
  CHECK_THROWS_AS(box_count(c, {0.1, 0.05}), PreconditionError);
  CHECK_THROWS_AS(box_count(c, {0.01, 0.02, 0.005, 0.004, 0.001}), PreconditionError);
  CHECK_THROWS_AS(box_count(c, dyadic_ladder(0, 6)), PreconditionError);
  CHECK_THROWS_AS(sing_cloud(gauges::hopf(), 64), NumericalError);
}

TEST_CASE("sharp cantor gauges") {
  const std::array<std::array<double, 2>, 2> bands{{{1.75, 2.05}, {1.35, 1.6}}};
  for (int k : {1, 2}) {
    const auto ex = sharp_example_gauge(CantorSpec::make(k, 8));
    const auto cloud = singstar_cloud(ex);
    BoxOptions opt;
    opt.normalize_axes = true;
    const auto s = box_count(cloud, dyadic_ladder(), opt);
    INFO("k = " << k << " slope " << s.slope << " r2 " << s.r2);
    CHECK(s.slope >= bands[k - 1][0]);
    CHECK(s.slope <= bands[k - 1][1]);
    CHECK(s.r2 >= 0.98);
  }
}
