#include "worldsheet/constructions.hpp"

#include "worldsheet/geometry.hpp"
#include "worldsheet/surface.hpp"
#include "worldsheet/tangent_image.hpp"

namespace worldsheet {

namespace {

struct LoopShape {
  double lo, hi, width;  // degrees, degrees, radians
};

// Thin loop around a great-circle arc, rotated so that its point at theta = pi/2 lands on e1.
// `a_family` loops surround the xz circle (open at +e3); the others surround the yz circle
// (open at -e3) and are negated, so a' never meets -b'.
UnitSpeedCurve piece(int n, bool a_family, const LoopShape& shape, double delta, const std::string& name) {
  const double deg = kPi / 180.0;
  const Vec ex = unit_vector(n, 0), ey = unit_vector(n, 1), ez = unit_vector(n, 2);
  SphericalCurve c = a_family ? spherical::arc_loop(ez, ex, shape.lo * deg, shape.hi * deg, shape.width)
                              : spherical::negated(spherical::arc_loop(ez, ey, shape.lo * deg, shape.hi * deg, shape.width));
  const Vec anchor = c.value(kPi / 2);
  c = spherical::rotated(c, geom::rotation_taking(anchor, ex));
  c.name = name;
  TangentImageOptions opt;
  opt.period = 1.0;
  opt.smoothness = 3;
  opt.forced_anchors = {kPi / 2};
  opt.dwell_anchor = 0;
  opt.dwell_length = 4.0 * delta;
  opt.center_anchor = 0;
  opt.basepoint = Vec::Zero(n);
  auto res = from_tangent_image(c, opt);
  if (res.closure > 1e-9) throw NumericalError("nonuniqueness piece does not close");
  return res.curve;
}

void check_straight(const UnitSpeedCurve& c, double delta) {
  const Vec e1 = unit_vector(c.dim(), 0);
  for (int i = 0; i <= 16; ++i) {
    const double x = -delta + 2.0 * delta * i / 16;
    if ((c.eval(x) - x * e1).norm() > 1e-9) throw NumericalError("piece is not straight on [-delta, delta]");
  }
}

NonuniquenessPair build(int n, double delta, bool same_a) {
  if (n < 3) throw PreconditionError("nonuniqueness_pair requires n >= 3");
  if (!(delta > 0.0 && delta < 0.125)) throw PreconditionError("nonuniqueness_pair: need 0 < delta < 1/8");
  const std::array<LoopShape, 3> as{{{30, 330, 0.08}, {36, 324, 0.11}, {42, 318, 0.14}}};
  const std::array<LoopShape, 3> bs{{{-150, 150, 0.08}, {-144, 144, 0.11}, {-138, 138, 0.14}}};
  NonuniquenessPair out{OrthogonalGauge{UnitSpeedCurve::unit_circle(), UnitSpeedCurve::unit_circle()},
                        OrthogonalGauge{UnitSpeedCurve::unit_circle(), UnitSpeedCurve::unit_circle()},
                        delta, {1, 0, 2}, {}, {}};
  for (int i = 0; i < 3; ++i) {
    const int ia = same_a ? 0 : i;
    out.a.push_back(piece(n, true, as[ia], delta, "a" + std::to_string(ia + 1)));
    out.b.push_back(piece(n, false, bs[i], delta, "b" + std::to_string(i + 1)));
  }
  for (const auto& c : out.a) check_straight(c, delta);
  for (const auto& c : out.b) check_straight(c, delta);
  const std::array<int, 3> id{0, 1, 2};
  const std::string tag = same_a ? "same_surface" : "nonuniqueness";
  out.id = make_gauge(assemble(out.a, id, tag + ".a_id"), assemble(out.b, id, tag + ".b_id"), tag + "_id");
  out.pi = make_gauge(assemble(out.a, out.permutation, tag + ".a_pi"),
                      assemble(out.b, out.permutation, tag + ".b_pi"), tag + "_pi");
  return out;
}

}  // namespace

UnitSpeedCurve assemble(const std::vector<UnitSpeedCurve>& pieces, const std::array<int, 3>& perm,
                        const std::string& name) {
  if (pieces.size() != 3) throw PreconditionError("assemble: need three pieces");
  std::array<UnitSpeedCurve, 3> p{pieces[perm[0]], pieces[perm[1]], pieces[perm[2]]};
  const int n = p[0].dim();
  auto locate = [](double x) {
    const double y = wrap(x, 3.0);
    const int i = std::min(2, static_cast<int>(std::floor(y)));
    return std::pair<int, double>{i, y - i};
  };
  UnitSpeedCurve::Options opt;
  opt.kind = TangentKind::Analytic;
  opt.smoothness = 3;
  opt.name = name;
  opt.cells = 3 * 2048;
  opt.derivative = [p, locate](double x) {
    const auto [i, u] = locate(x);
    return p[i].tangent_derivative(u);
  };
  for (int i = 0; i < 3; ++i) {
    opt.breaks.push_back(i);
    for (double b : p[i].breaks()) opt.breaks.push_back(i + b);
  }
  std::sort(opt.breaks.begin(), opt.breaks.end());
  opt.spec = {{"kind", "assembled"}, {"period", 3}, {"permutation", {perm[0], perm[1], perm[2]}},
              {"pieces", {p[0].spec(), p[1].spec(), p[2].spec()}}};
  return UnitSpeedCurve(n, 3.0, Vec::Zero(n), [p, locate](double x) {
    const auto [i, u] = locate(x);
    return p[i].tangent(u);
  }, std::move(opt));
}

NonuniquenessPair nonuniqueness_pair(int n, double delta) { return build(n, delta, false); }

NonuniquenessPair same_surface_family(int n, double delta) { return build(n, delta, true); }

double slice_distance(const OrthogonalGauge& g, const OrthogonalGauge& h, double t, int m) {
  const auto a = slice(g, t, m), b = slice(h, t, m);
  return geom::hausdorff(a.points, b.points);
}

}  // namespace worldsheet
