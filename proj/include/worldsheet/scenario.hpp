#pragma once

#include "worldsheet/io.hpp"

#include <optional>

namespace worldsheet {

/// One run: a gauge (or construction), a task and its parameters.
struct Scenario {
  std::string name;
  nlohmann::json gauge;   // empty for construct / nonuniq
  std::string task;       // evolve, detect, diagram, construct, dimension, probe, nonuniq
  nlohmann::json params = nlohmann::json::object();
  std::string output;     // directory, may be overridden on the command line
  std::optional<std::uint64_t> seed;
};

/// Validates the scenario object; throws io::SchemaError.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

std::vector<std::string> task_names();

struct RunSettings {
  int grid = 512;
  double tol = 1e-8;
  int threads = 0;
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
};

enum ExitCode { kSuccess = 0, kSchemaFailure = 1, kPreconditionFailure = 2, kUnreliable = 3 };

struct RunResult {
  int exit_code = kSuccess;
  nlohmann::json report;  // deterministic given scenario and seed
  std::vector<std::pair<std::string, io::Table>> tables;
  std::vector<std::string> flags;  // reasons for kUnreliable
};

/// Runs the task; precondition and numerical errors become exit codes 2 and 3 with the
/// message recorded in the report.
RunResult run_scenario(const Scenario& scenario, const RunSettings& settings = {});

/// report.json, one CSV per table, and metadata.json (timestamps, wall time).
void write_artifacts(const RunResult& result, const std::filesystem::path& dir, double wall_seconds);

}  // namespace worldsheet
