#include "trajplan/model.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "trajplan/errors.hpp"

namespace trajplan {

int ProblemInstance::station_index(StationId id) const {
  auto it = std::lower_bound(stations.begin(), stations.end(), id);
  if (it == stations.end() || *it != id) {
    throw ValidationError("unknown station id " + std::to_string(id));
  }
  return static_cast<int>(it - stations.begin());
}

ProblemInstance build_instance(std::span<const Trajectory> trajectories,
                               double tau, double gamma, int budget) {
  if (trajectories.empty()) throw ValidationError("empty trajectory list");
  if (gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma outside [0,1]: " + std::to_string(gamma));
  }
  if (budget < 0) throw ValidationError("negative budget");
  if (tau < 0.0) throw ValidationError("negative tau");

  ProblemInstance inst;
  inst.tau = tau;
  inst.gamma = gamma;
  inst.budget = budget;

  std::vector<StationId> all;
  for (const Trajectory& t : trajectories) {
    for (const VisitRecord& v : t.visits) {
      if (v.station < 0) throw ValidationError("negative station id");
      if (v.duration_ms <= 0) throw ValidationError("non-positive duration");
      if (v.throughput_kbps < 0.0) throw ValidationError("negative throughput");
      all.push_back(v.station);
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  inst.stations = std::move(all);

  inst.trajectories.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) {
    if (t.visits.empty()) {
      throw ValidationError("trajectory " + std::to_string(t.id) +
                            " has no visits");
    }
    // Merge repeated visits to the same station.
    std::map<StationId, std::pair<int64_t, double>> merged;  // dur, dur*thr
    int64_t total = 0;
    for (const VisitRecord& v : t.visits) {
      auto& slot = merged[v.station];
      slot.first += v.duration_ms;
      slot.second += static_cast<double>(v.duration_ms) * v.throughput_kbps;
      total += v.duration_ms;
    }
    if (total <= 0) {
      throw ValidationError("trajectory " + std::to_string(t.id) +
                            " has zero total duration");
    }
    ProblemInstance::TrajectoryEntry entry;
    entry.id = t.id;
    entry.total_duration_ms = total;
    for (const auto& [sid, acc] : merged) {
      const double weight =
          static_cast<double>(acc.first) / static_cast<double>(total);
      const double mean_throughput = acc.second / static_cast<double>(acc.first);
      entry.station_idx.push_back(inst.station_index(sid));
      entry.weight.push_back(weight);
      const bool bottleneck = mean_throughput < tau;  // strict
      entry.bottleneck.push_back(bottleneck ? 1 : 0);
      if (!bottleneck) entry.clear_weight += weight;
    }
    inst.d_max = std::max(inst.d_max, entry.length());
    inst.trajectories.push_back(std::move(entry));
  }
  return inst;
}

ProblemInstance with_params(const ProblemInstance& instance, double gamma,
                            int budget) {
  if (gamma < 0.0 || gamma > 1.0) throw ValidationError("gamma outside [0,1]");
  if (budget < 0) throw ValidationError("negative budget");
  ProblemInstance copy = instance;
  copy.gamma = gamma;
  copy.budget = budget;
  return copy;
}

double trajectory_utility_mask(const ProblemInstance& instance, int j,
                               const std::vector<uint8_t>& upgraded_mask) {
  if (j < 0 || j >= instance.num_trajectories()) {
    throw ValidationError("trajectory index out of range");
  }
  const auto& entry = instance.trajectories[j];
  double w = entry.clear_weight;
  for (size_t i = 0; i < entry.station_idx.size(); ++i) {
    if (entry.bottleneck[i] && upgraded_mask[entry.station_idx[i]]) {
      w += entry.weight[i];
    }
  }
  return std::min(w, 1.0);
}

double trajectory_utility(const ProblemInstance& instance, int j,
                          std::span<const StationId> upgraded) {
  return trajectory_utility_mask(instance, j, upgrade_mask(instance, upgraded));
}

int step_utility(double w, double gamma) {
  return w >= gamma - kCmpEps ? 1 : 0;
}

std::vector<uint8_t> upgrade_mask(const ProblemInstance& instance,
                                  std::span<const StationId> upgraded) {
  std::vector<uint8_t> mask(instance.stations.size(), 0);
  for (StationId id : upgraded) mask[instance.station_index(id)] = 1;
  return mask;
}

UpgradeSolution evaluate_solution(const ProblemInstance& instance,
                                  std::span<const StationId> upgraded) {
  if (static_cast<int>(upgraded.size()) > instance.budget) {
    throw ValidationError("upgrade set exceeds budget");
  }
  UpgradeSolution sol;
  sol.upgraded.assign(upgraded.begin(), upgraded.end());
  std::sort(sol.upgraded.begin(), sol.upgraded.end());
  sol.upgraded.erase(std::unique(sol.upgraded.begin(), sol.upgraded.end()),
                     sol.upgraded.end());
  const auto mask = upgrade_mask(instance, sol.upgraded);
  sol.per_trajectory_utility.reserve(instance.trajectories.size());
  for (int j = 0; j < instance.num_trajectories(); ++j) {
    const double w = trajectory_utility_mask(instance, j, mask);
    sol.per_trajectory_utility.push_back(w);
    sol.satisfied_count += step_utility(w, instance.gamma);
  }
  sol.satisfied_fraction = static_cast<double>(sol.satisfied_count) /
                           static_cast<double>(instance.num_trajectories());
  return sol;
}

}  // namespace trajplan
