#include "trajplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "trajplan/errors.hpp"
#include "trajplan/generator.hpp"
#include "trajplan/io.hpp"

namespace trajplan {

using nlohmann::json;

namespace {

void validate_spec(const SweepSpec& spec) {
  if (spec.algorithms.empty()) throw ValidationError("no algorithms in spec");
  if (spec.k_prime_grid.empty()) throw ValidationError("empty k_prime grid");
  if (spec.gamma_grid.empty()) throw ValidationError("empty gamma grid");
  for (double kp : spec.k_prime_grid) {
    if (kp <= 0.0 || kp > 1.0) {
      throw ValidationError("k_prime outside (0,1]: " + format_double(kp));
    }
  }
  for (double g : spec.gamma_grid) {
    if (g < 0.0 || g > 1.0) {
      throw ValidationError("gamma outside [0,1]: " + format_double(g));
    }
  }
  for (const LengthCohort& c : spec.length_cohorts) {
    if (c.lo < 1 || c.hi < c.lo) throw ValidationError("bad length cohort");
  }
}

SolverReport run_algorithm(const ProblemInstance& inst, Algorithm algorithm,
                           uint64_t exact_cap) {
  switch (algorithm) {
    case Algorithm::SimG: return solve_simg(inst);
    case Algorithm::IncG: return solve_incg(inst);
    case Algorithm::DecG: return solve_decg(inst);
    case Algorithm::Exact: return solve_exact(inst, exact_cap);
  }
  throw ValidationError("unknown algorithm");
}

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

struct Cell {
  double k_prime;
  double gamma;
  std::string cohort;
  bool operator<(const Cell& other) const {
    return std::tie(k_prime, gamma, cohort) <
           std::tie(other.k_prime, other.gamma, other.cohort);
  }
};

}  // namespace

SweepSpec parse_sweep_spec(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("sweep spec is not a JSON object: " + path);
  }
  SweepSpec spec;
  try {
    spec.source = j.at("source").get<std::string>();
    for (const json& a : j.at("algorithms")) {
      const auto algorithm = parse_algorithm(a.get<std::string>());
      if (!algorithm) {
        throw ValidationError("unknown algorithm '" + a.get<std::string>() +
                              "' in sweep spec");
      }
      spec.algorithms.push_back(*algorithm);
    }
    spec.k_prime_grid = j.at("k_prime_grid").get<std::vector<double>>();
    spec.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
    spec.tau = j.value("tau", spec.tau);
    spec.seed = j.value("seed", spec.seed);
    spec.exact_cap = j.value("exact_cap", spec.exact_cap);
    spec.timing_reps = j.value("timing_reps", spec.timing_reps);
    spec.per_cohort_optimize =
        j.value("per_cohort_optimize", spec.per_cohort_optimize);
    if (auto it = j.find("length_cohorts"); it != j.end()) {
      for (const json& c : *it) {
        spec.length_cohorts.push_back(
            {c.at(0).get<int>(), c.at(1).get<int>()});
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep spec: ") + e.what());
  }
  validate_spec(spec);
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec,
                      std::span<const Trajectory> trajectories) {
  validate_spec(spec);
  const ProblemInstance base = build_instance(trajectories, spec.tau, 0.0, 0);
  const int n = base.num_stations();
  const int m = base.num_trajectories();

  std::vector<int> lengths(m);
  for (int j = 0; j < m; ++j) lengths[j] = base.trajectories[j].length();

  SweepResult result;
  for (double gamma : spec.gamma_grid) {
    for (double k_prime : spec.k_prime_grid) {
      const int k = std::max(1, static_cast<int>(std::lround(k_prime * n)));
      const ProblemInstance inst = with_params(base, gamma, k);
      for (Algorithm algorithm : spec.algorithms) {
        SweepRow row;
        row.algorithm = algorithm_name(algorithm);
        row.k_prime = k_prime;
        row.gamma = gamma;
        row.seed = spec.seed;

        std::vector<uint8_t> satisfied(m, 0);
        try {
          SolverReport report = run_algorithm(inst, algorithm, spec.exact_cap);
          double t1 = report.elapsed_ms, t2 = t1, t3 = t1;
          if (spec.timing_reps >= 3) {
            t2 = run_algorithm(inst, algorithm, spec.exact_cap).elapsed_ms;
            t3 = run_algorithm(inst, algorithm, spec.exact_cap).elapsed_ms;
          }
          row.elapsed_ms = median3(t1, t2, t3);
          row.satisfied_count = report.solution.satisfied_count;
          row.satisfied_fraction = report.solution.satisfied_fraction;
          for (int j = 0; j < m; ++j) {
            satisfied[j] = step_utility(
                report.solution.per_trajectory_utility[j], gamma);
          }
        } catch (const CapExceededError& e) {
          row.status = std::string("skipped: ") + e.what();
        }
        result.rows.push_back(row);

        for (const LengthCohort& cohort : spec.length_cohorts) {
          SweepRow crow = row;
          crow.cohort = cohort.label();
          crow.satisfied_count = 0;
          crow.satisfied_fraction = 0.0;
          if (crow.status != "ok") {
            result.rows.push_back(crow);
            continue;
          }
          if (spec.per_cohort_optimize) {
            std::vector<Trajectory> subset;
            for (int j = 0; j < m; ++j) {
              if (lengths[j] >= cohort.lo && lengths[j] <= cohort.hi) {
                subset.push_back(trajectories[j]);
              }
            }
            if (subset.empty()) {
              crow.status = "empty";
            } else {
              ProblemInstance sub =
                  build_instance(subset, spec.tau, gamma,
                                 std::min<int>(k, static_cast<int>(
                                                      subset.size())));
              sub.budget = std::min(k, sub.num_stations());
              try {
                SolverReport rep =
                    run_algorithm(sub, algorithm, spec.exact_cap);
                crow.satisfied_count = rep.solution.satisfied_count;
                crow.satisfied_fraction = rep.solution.satisfied_fraction;
              } catch (const CapExceededError& e) {
                crow.status = std::string("skipped: ") + e.what();
              }
            }
          } else {
            int in_cohort = 0;
            for (int j = 0; j < m; ++j) {
              if (lengths[j] < cohort.lo || lengths[j] > cohort.hi) continue;
              ++in_cohort;
              crow.satisfied_count += satisfied[j];
            }
            if (in_cohort == 0) {
              crow.status = "empty";
            } else {
              crow.satisfied_fraction =
                  static_cast<double>(crow.satisfied_count) / in_cohort;
            }
          }
          result.rows.push_back(crow);
        }
      }
    }
  }
  return result;
}

SweepResult run_sweep_source(const SweepSpec& spec) {
  if (spec.source.starts_with("preset:")) {
    const GeneratedScenario scenario =
        generate_preset(spec.source.substr(7), spec.seed);
    return run_sweep(spec, scenario.trajectories);
  }
  const TraceData data = load_trace_file(spec.source);
  return run_sweep(spec, data.trajectories);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    out << row.algorithm << ',' << format_double(row.k_prime) << ','
        << format_double(row.gamma) << ',' << row.cohort << ','
        << row.satisfied_count << ',' << format_double(row.satisfied_fraction)
        << ',' << format_double(row.elapsed_ms) << ',' << row.seed << ','
        << row.status << '\n';
  }
}

SweepResult parse_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ParseError("unexpected sweep CSV header");
  }
  SweepResult result;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 9) {
      throw ParseError("sweep CSV line " + std::to_string(line_no) +
                       ": expected 9 fields");
    }
    try {
      SweepRow row;
      row.algorithm = fields[0];
      row.k_prime = std::stod(fields[1]);
      row.gamma = std::stod(fields[2]);
      row.cohort = fields[3];
      row.satisfied_count = std::stoi(fields[4]);
      row.satisfied_fraction = std::stod(fields[5]);
      row.elapsed_ms = std::stod(fields[6]);
      row.seed = std::stoull(fields[7]);
      // Status may itself contain commas (exception text); rejoin.
      row.status = fields[8];
      for (size_t i = 9; i < fields.size(); ++i) row.status += "," + fields[i];
      result.rows.push_back(std::move(row));
    } catch (const std::exception&) {
      throw ParseError("sweep CSV line " + std::to_string(line_no) +
                       ": bad numeric field");
    }
  }
  return result;
}

std::vector<CompareRow> compare_report(const SweepResult& results) {
  std::map<Cell, int> baseline;
  for (const SweepRow& row : results.rows) {
    if (row.algorithm == "simg" && row.status == "ok") {
      baseline[{row.k_prime, row.gamma, row.cohort}] = row.satisfied_count;
    }
  }
  if (baseline.empty()) {
    throw ValidationError("compare needs simg baseline rows");
  }
  std::vector<CompareRow> rows;
  for (const SweepRow& row : results.rows) {
    if (row.algorithm == "simg" || row.status != "ok") continue;
    auto it = baseline.find({row.k_prime, row.gamma, row.cohort});
    if (it == baseline.end()) {
      throw ValidationError("no simg baseline for cell k'=" +
                            format_double(row.k_prime) + " gamma=" +
                            format_double(row.gamma) + " cohort=" + row.cohort);
    }
    CompareRow cmp;
    cmp.algorithm = row.algorithm;
    cmp.k_prime = row.k_prime;
    cmp.gamma = row.gamma;
    cmp.cohort = row.cohort;
    cmp.satisfied_count = row.satisfied_count;
    cmp.baseline_count = it->second;
    if (it->second > 0) {
      cmp.ratio = static_cast<double>(row.satisfied_count) / it->second;
    } else {
      cmp.ratio = row.satisfied_count > 0
                      ? std::numeric_limits<double>::infinity()
                      : 1.0;
    }
    cmp.below_baseline = row.satisfied_count < it->second;
    rows.push_back(cmp);
  }
  return rows;
}

void write_compare_csv(std::ostream& out,
                       const std::vector<CompareRow>& rows) {
  out << "algorithm,k_prime,gamma,cohort,satisfied_count,simg_count,"
         "ratio_vs_simg,below_simg\n";
  for (const CompareRow& row : rows) {
    out << row.algorithm << ',' << format_double(row.k_prime) << ','
        << format_double(row.gamma) << ',' << row.cohort << ','
        << row.satisfied_count << ',' << row.baseline_count << ','
        << (std::isinf(row.ratio) ? std::string("inf")
                                  : format_double(row.ratio))
        << ',' << (row.below_baseline ? 1 : 0) << '\n';
  }
}

}  // namespace trajplan
