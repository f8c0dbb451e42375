#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace trajplan {

using StationId = int32_t;

// Comparisons against gamma use this slack so that exact fractions like
// 3 * (1/3) still reach gamma = 1.
inline constexpr double kCmpEps = 1e-9;

// One association of a user with a base-station along a trajectory.
struct VisitRecord {
  StationId station = 0;
  int64_t duration_ms = 0;
  double throughput_kbps = 0.0;
};

struct Trajectory {
  int64_t id = 0;
  std::vector<VisitRecord> visits;
};

// Immutable problem instance: merged per-trajectory station weights and
// bottleneck flags, precomputed for a fixed tau. Safe for concurrent reads.
struct ProblemInstance {
  std::vector<StationId> stations;  // sorted, distinct
  double tau = 0.0;
  double gamma = 0.0;
  int budget = 0;
  int d_max = 0;

  struct TrajectoryEntry {
    int64_t id = 0;
    // Parallel arrays over the distinct stations of this trajectory,
    // ordered by ascending station id.
    std::vector<int> station_idx;  // index into ProblemInstance::stations
    std::vector<double> weight;
    std::vector<uint8_t> bottleneck;
    double clear_weight = 0.0;  // sum of weights with bottleneck = 0
    int64_t total_duration_ms = 0;
    int length() const { return static_cast<int>(station_idx.size()); }
  };
  std::vector<TrajectoryEntry> trajectories;

  int num_stations() const { return static_cast<int>(stations.size()); }
  int num_trajectories() const { return static_cast<int>(trajectories.size()); }

  // Index of a station id; throws ValidationError for unknown ids.
  int station_index(StationId id) const;
};

struct UpgradeSolution {
  std::vector<StationId> upgraded;  // sorted, |upgraded| <= budget
  std::vector<double> per_trajectory_utility;
  int satisfied_count = 0;
  double satisfied_fraction = 0.0;
};

// Merges repeated visits per trajectory (durations summed, throughput the
// duration-weighted mean), computes weights and bottleneck flags.
ProblemInstance build_instance(std::span<const Trajectory> trajectories,
                               double tau, double gamma, int budget);

// Returns a copy of the instance with different gamma/budget; weights and
// bottleneck flags are tau-only so they carry over unchanged.
ProblemInstance with_params(const ProblemInstance& instance, double gamma,
                            int budget);

// Bottleneck utility W_j of trajectory j under the given upgrade set.
double trajectory_utility(const ProblemInstance& instance, int j,
                          std::span<const StationId> upgraded);

// Mask variant used by the solvers; mask is indexed by station index.
double trajectory_utility_mask(const ProblemInstance& instance, int j,
                               const std::vector<uint8_t>& upgraded_mask);

// 1 iff W >= gamma - kCmpEps.
int step_utility(double w, double gamma);

UpgradeSolution evaluate_solution(const ProblemInstance& instance,
                                  std::span<const StationId> upgraded);

// Builds the station-index mask for an upgrade set, validating ids.
std::vector<uint8_t> upgrade_mask(const ProblemInstance& instance,
                                  std::span<const StationId> upgraded);

}  // namespace trajplan
