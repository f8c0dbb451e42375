#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trajplan/model.hpp"
#include "trajplan/solvers.hpp"

namespace trajplan {

struct LengthCohort {
  int lo = 0;
  int hi = 0;
  std::string label() const {
    return std::to_string(lo) + "-" + std::to_string(hi);
  }
};

struct SweepSpec {
  // Trace file path, or "preset:<name>" to generate on the fly.
  std::string source;
  uint64_t seed = 1;
  std::vector<Algorithm> algorithms;
  std::vector<double> k_prime_grid;  // k' = k/n in (0,1]
  std::vector<double> gamma_grid;
  double tau = 750.0;
  std::vector<LengthCohort> length_cohorts;  // optional post-hoc slices
  // When set, each cohort is optimized on its own sub-instance instead of
  // slicing the whole-instance solution.
  bool per_cohort_optimize = false;
  uint64_t exact_cap = kDefaultEnumerationCap;
  int timing_reps = 3;
};

struct SweepRow {
  std::string algorithm;
  double k_prime = 0.0;
  double gamma = 0.0;
  std::string cohort = "all";
  int satisfied_count = 0;
  double satisfied_fraction = 0.0;
  double elapsed_ms = 0.0;
  uint64_t seed = 0;
  std::string status = "ok";
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

SweepSpec parse_sweep_spec(const std::string& path);

// Runs the sweep over an already-loaded trajectory set. Rows come out in
// deterministic grid order (gamma, k', algorithm, cohort).
SweepResult run_sweep(const SweepSpec& spec,
                      std::span<const Trajectory> trajectories);

// Loads/generates the spec's source, then runs.
SweepResult run_sweep_source(const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "algorithm,k_prime,gamma,cohort,satisfied_count,satisfied_fraction,"
    "elapsed_ms,seed,status";

void write_sweep_csv(std::ostream& out, const SweepResult& result);
SweepResult parse_sweep_csv(std::istream& in);

struct CompareRow {
  std::string algorithm;
  double k_prime = 0.0;
  double gamma = 0.0;
  std::string cohort;
  int satisfied_count = 0;
  int baseline_count = 0;  // simg on the same cell
  double ratio = 0.0;
  bool below_baseline = false;
};

// Per-cell ratios against the SimG baseline. Throws ValidationError when
// cells do not match up or the baseline is missing.
std::vector<CompareRow> compare_report(const SweepResult& results);

void write_compare_csv(std::ostream& out,
                       const std::vector<CompareRow>& rows);

}  // namespace trajplan
