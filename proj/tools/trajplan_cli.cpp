#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trajplan/errors.hpp"
#include "trajplan/evaluation.hpp"
#include "trajplan/generator.hpp"
#include "trajplan/io.hpp"
#include "trajplan/model.hpp"
#include "trajplan/solvers.hpp"

namespace {

using namespace trajplan;

int cmd_generate(const std::string& preset, const std::string& config_path,
                 const std::string& topology, uint64_t seed,
                 int num_trajectories, int num_stations,
                 const std::string& out_prefix) {
  GeneratedScenario scenario;
  if (!preset.empty()) {
    scenario = generate_preset(preset, seed, num_trajectories, num_stations);
  } else if (!config_path.empty()) {
    auto [city, network] = parse_config_file(config_path);
    city.seed = seed;
    network.seed = seed;
    if (num_stations > 0) network.num_stations = num_stations;
    const int m = num_trajectories > 0 ? num_trajectories : 1000;
    if (topology == "star" || topology == "mesh") {
      // Star/mesh shapes are defined by their presets; a custom config
      // only makes sense for the city topology.
      throw ValidationError("custom configs generate the city topology");
    }
    scenario = generate_scenario(city, network, m);
  } else {
    throw ValidationError("either --preset or --config is required");
  }
  write_scenario(scenario, out_prefix);
  std::cout << "generated topology=" << scenario.topology
            << " trajectories=" << scenario.trajectories.size()
            << " stations=" << scenario.stations.size() << " seed=" << seed
            << " out=" << out_prefix << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& in_path, const std::string& algo_name,
              int k, double k_prime, double gamma, double tau,
              uint64_t exact_cap, const std::string& out_path) {
  const auto algorithm = parse_algorithm(algo_name);
  if (!algorithm) throw ValidationError("unknown algorithm: " + algo_name);

  const TraceData data = load_trace_file(in_path);
  if (k_prime >= 0.0) {
    if (k_prime > 1.0) throw ValidationError("k-prime outside (0,1]");
    k = std::max(1, static_cast<int>(std::lround(
                        k_prime * static_cast<double>(
                                      data.station_names.size()))));
  }
  if (k < 0) throw ValidationError("budget k must be non-negative");
  const ProblemInstance inst =
      build_instance(data.trajectories, tau, gamma, k);

  SolverReport report;
  switch (*algorithm) {
    case Algorithm::SimG: report = solve_simg(inst); break;
    case Algorithm::IncG: report = solve_incg(inst); break;
    case Algorithm::DecG: report = solve_decg(inst); break;
    case Algorithm::Exact: report = solve_exact(inst, exact_cap); break;
  }

  std::vector<std::string> names;
  for (StationId id : report.solution.upgraded) {
    names.push_back(data.station_names[id]);
  }
  if (!out_path.empty()) {
    write_solution_file(out_path, names);
  } else {
    for (const std::string& name : names) std::cout << name << "\n";
  }
  std::cout << "algorithm=" << algorithm_name(*algorithm) << " k=" << k
            << " gamma=" << format_double(gamma) << " tau="
            << format_double(tau) << " satisfied="
            << report.solution.satisfied_count << "/"
            << inst.num_trajectories() << " elapsed_ms="
            << format_double(report.elapsed_ms) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path) {
  const SweepSpec spec = parse_sweep_spec(spec_path);
  const SweepResult result = run_sweep_source(spec);
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  write_file_atomic(out_path, csv.str());
  std::cout << "sweep rows=" << result.rows.size() << " out=" << out_path
            << "\n";
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& result_paths,
                const std::string& out_path) {
  SweepResult merged;
  for (const std::string& path : result_paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results file: " + path);
    SweepResult part = parse_sweep_csv(in);
    merged.rows.insert(merged.rows.end(), part.rows.begin(),
                       part.rows.end());
  }
  const auto rows = compare_report(merged);
  std::ostringstream csv;
  write_compare_csv(csv, rows);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_file_atomic(out_path, csv.str());
    std::cout << "compare rows=" << rows.size() << " out=" << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory-aware base-station upgrade planner"};
  app.require_subcommand(1);

  // generate
  std::string preset, config_path, topology = "city", out_prefix;
  uint64_t seed = 1;
  int gen_trajectories = 0, gen_stations = 0;
  auto* generate = app.add_subcommand("generate", "Generate a scenario");
  generate->add_option("--preset", preset,
                       "Preset name (star, mesh, nyc-like, ...)");
  generate->add_option("--config", config_path, "Declarative config file");
  generate->add_option("--topology", topology, "city|star|mesh");
  generate->add_option("--seed", seed, "Generator seed");
  generate->add_option("--num-trajectories", gen_trajectories,
                       "Override trajectory count");
  generate->add_option("--num-stations", gen_stations,
                       "Override station count");
  generate->add_option("--out", out_prefix, "Output path prefix")->required();

  // solve
  std::string in_path, algo = "decg", sol_out;
  int k = -1;
  double k_prime = -1.0, gamma = 1.0, tau = 750.0;
  uint64_t exact_cap = kDefaultEnumerationCap;
  auto* solve = app.add_subcommand("solve", "Select stations to upgrade");
  solve->add_option("--in", in_path, "Trace file (.trace.jsonl)")->required();
  solve->add_option("--algo", algo, "simg|incg|decg|exact");
  solve->add_option("--k", k, "Upgrade budget (station count)");
  solve->add_option("--k-prime", k_prime, "Budget as a fraction of n");
  solve->add_option("--gamma", gamma, "Bottleneck parameter in [0,1]");
  solve->add_option("--tau", tau, "Bottleneck throughput threshold (kbps)");
  solve->add_option("--exact-cap", exact_cap,
                    "Subset cap for the exact solver");
  solve->add_option("--out", sol_out, "Solution file (one station per line)");

  // sweep
  std::string spec_path, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--spec", spec_path, "Sweep spec (JSON)")->required();
  sweep->add_option("--out", sweep_out, "Output CSV")->required();

  // compare
  std::vector<std::string> result_paths;
  std::string compare_out;
  auto* compare =
      app.add_subcommand("compare", "Compare sweep results against simg");
  compare->add_option("results", result_paths, "Sweep result CSVs")
      ->required();
  compare->add_option("--out", compare_out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidationError;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(preset, config_path, topology, seed,
                          gen_trajectories, gen_stations, out_prefix);
    }
    if (solve->parsed()) {
      if (k < 0 && k_prime < 0.0) {
        throw ValidationError("one of --k or --k-prime is required");
      }
      return cmd_solve(in_path, algo, k, k_prime, gamma, tau, exact_cap,
                       sol_out);
    }
    if (sweep->parsed()) return cmd_sweep(spec_path, sweep_out);
    if (compare->parsed()) return cmd_compare(result_paths, compare_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidationError;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitValidationError;
}
