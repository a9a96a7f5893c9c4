// Scenario runner: worldsheet --scenario file.json [--out dir] [--seed n] [--grid n] [--tol x] [--parallel n]

#include "worldsheet/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Run a worldsheet scenario and write report.json plus CSV data"};
  std::string scenario_path, out_dir;
  std::uint64_t seed = 0;
  worldsheet::RunSettings settings;
  bool list = false;
  app.add_option("--scenario", scenario_path, "Scenario JSON file");
  app.add_option("--out", out_dir, "Output directory (default: the scenario's 'output', else ./out/<name>)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for stochastic tasks (overrides the scenario)");
  app.add_option("--grid", settings.grid, "Torus grid resolution")->check(CLI::Range(8, 1 << 14));
  app.add_option("--tol", settings.tol, "Singular residual threshold")->check(CLI::PositiveNumber);
  app.add_option("--parallel", settings.threads, "Worker threads (0 = hardware threads)")->check(CLI::NonNegativeNumber);
  app.add_flag("--list", list, "List tasks and gauge builders");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : worldsheet::kSchemaFailure;
  }
  if (list) {
    std::cout << "tasks:";
    for (const auto& t : worldsheet::task_names()) std::cout << ' ' << t;
    std::cout << "\nbuilders:";
    for (const auto& b : worldsheet::io::builder_names()) std::cout << ' ' << b;
    std::cout << '\n';
    return 0;
  }
  if (scenario_path.empty()) {
    std::cerr << "error: --scenario is required\n";
    return worldsheet::kSchemaFailure;
  }
  if (*seed_opt) settings.seed = seed;

  worldsheet::Scenario scenario;
  try {
    scenario = worldsheet::load_scenario(scenario_path);
  } catch (const worldsheet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return worldsheet::kSchemaFailure;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto result = worldsheet::run_scenario(scenario, settings);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path dir =
      !out_dir.empty() ? out_dir : !scenario.output.empty() ? scenario.output : "out/" + scenario.name;
  try {
    worldsheet::write_artifacts(result, dir, wall);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return worldsheet::kSchemaFailure;
  }
  if (result.report.contains("error")) std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << '\n';
  for (const auto& f : result.flags) std::cerr << "flag: " << f << '\n';
  std::cout << scenario.name << ": exit " << result.exit_code << ", wrote " << dir.string() << '\n';
  return result.exit_code;
}
