#include "doctest.h"
#include "worldsheet/scenario.hpp"

using namespace worldsheet;
using nlohmann::json;

TEST_CASE("builder and inline gauges") {
  const auto h = io::gauge_from_json({{"builder", "hopf"}});
  CHECK(h.dim() == 4);
  const auto r1 = io::gauge_from_json({{"builder", "random_fourier"}, {"dim", 3}}, 5);
  const auto r2 = io::gauge_from_json({{"builder", "random_fourier"}, {"dim", 3}, {"seed", 5}});
  CHECK((r1.a.tangent(0.7) - r2.a.tangent(0.7)).norm() == 0.0);

  const json inline_spec = json::parse(R"({"a": {"kind": "circle"},
                                          "b": {"kind": "fourier_angle", "sin": [0.2]}})");
  const auto g = io::gauge_from_json(inline_spec);
  CHECK(g.E0 == doctest::Approx(kTwoPi));
  CHECK(g.a.unit_speed_violation() <= 1e-12);

  const auto c = io::gauge_from_json({{"couple", {{"kind", "circle"}, {"inward_speed", 0.5}}}});
  CHECK(c.a.unit_speed_violation() <= 1e-9);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(io::gauge_from_json({{"builder", "nope"}}), io::SchemaError);
  CHECK_THROWS_AS(io::gauge_from_json({{"a", {{"kind", "spiral"}}}, {"b", {{"kind", "circle"}}}}), io::SchemaError);
  CHECK_THROWS_AS(io::gauge_from_json({{"builder", "oval"}, {"eps", "big"}}), io::SchemaError);
  // a' + b' has isolated transversal zeros between the validation samples.
  const json crossing = json::parse(R"({"a": {"kind": "circle"},
                                       "b": {"kind": "fourier_angle", "phase": 3.191592653589793, "sin": [0.2]}})");
  CHECK_THROWS_AS(io::gauge_from_json(crossing), PreconditionError);
  CHECK_THROWS_AS(parse_scenario({{"task", "detect"}}), io::SchemaError);
  CHECK_THROWS_AS(parse_scenario({{"task", "detect"}, {"gauge", {{"builder", "hopf"}}}, {"schema_version", 2}}),
                  io::SchemaError);
  CHECK_NOTHROW(parse_scenario({{"task", "nonuniq"}}));
}

TEST_CASE("reports are deterministic and carry exit codes") {
  const auto sc = parse_scenario(
      {{"name", "p"}, {"task", "probe"}, {"seed", 3}, {"gauge", {{"builder", "hopf"}}}, {"params", {{"trials", 4}}}});
  const auto a = run_scenario(sc), b = run_scenario(sc);
  CHECK(a.exit_code == kSuccess);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["probe"]["smooth"] == 4);

  RunSettings other;
  other.seed = 4;
  CHECK(run_scenario(sc, other).report["seed"] == 4);

  const auto bad = run_scenario(parse_scenario({{"task", "diagram"}, {"gauge", {{"builder", "circle"}, {"dim", 3}}}}));
  CHECK(bad.exit_code == kSuccess);
  CHECK(bad.report["diagram"]["disjoint"] == false);

  const auto pre = run_scenario(parse_scenario({{"task", "detect"}, {"gauge", {{"builder", "nonuniqueness"}, {"n", 2}}}}));
  CHECK(pre.exit_code == kPreconditionFailure);
}

TEST_CASE("csv tables") {
  const auto t = io::slice_table(slice(io::gauge_from_json({{"builder", "circle"}}), 0.0, 8));
  CHECK(t.header == std::vector<std::string>{"t", "x", "gamma_0", "gamma_1", "radius"});
  REQUIRE(t.rows.size() == 8);
  CHECK(t.rows[3][4] == doctest::Approx(1.0));
}
