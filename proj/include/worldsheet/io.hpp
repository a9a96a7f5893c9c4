#pragma once

#include "worldsheet/constructions.hpp"
#include "worldsheet/dimension.hpp"
#include "worldsheet/singular.hpp"
#include "worldsheet/surface.hpp"
#include "worldsheet/topology.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace worldsheet::io {

using nlohmann::json;

/// Malformed scenario or gauge description.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

/// Builds a gauge from its JSON description. Three forms are accepted:
///   {"builder": "hopf", ...parameters}             named family
///   {"a": <curve>, "b": <curve>}                   inline curves
///   {"couple": {"kind": "circle", ...}}            initial data, normalized
/// `seed` feeds builders that take one when the description leaves it out.
OrthogonalGauge gauge_from_json(const json& spec, std::uint64_t seed = 1);

/// Inline curve: {"kind": "fourier_angle" | "circle" | "sphere_path", ...}.
UnitSpeedCurve curve_from_json(const json& spec);

/// Names accepted by {"builder": ...}.
std::vector<std::string> builder_names();

json to_json(const Vec& v);
json to_json(const SingularPair& p);
json to_json(const SingularityReport& r);
json to_json(const ConstraintReport& r);
json to_json(const SlopeEstimate& s);
json to_json(const PerturbationReport& r);
json to_json(const TimeExtent& e);

/// Header row plus numeric rows, written with full round-trip precision.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
void write_csv(const Table& table, const std::filesystem::path& path);
void write_json(const json& value, const std::filesystem::path& path);

Table slice_table(const SliceCurve& s);
Table curve_table(const std::vector<Vec>& points, const std::string& prefix);
Table cloud_table(const PointCloud& cloud);

}  // namespace worldsheet::io
