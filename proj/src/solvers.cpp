#include "trajplan/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "trajplan/errors.hpp"
#include "trajplan/hypergraph.hpp"

namespace trajplan {

namespace {

// Tolerance for treating two bottleneck-weights as tied. Weights are sums
// of time fractions, so exact ties accumulate tiny rounding residues.
constexpr double kWeightTieTol = 1e-9;

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Utilities and satisfied counts for `selected`, with `extra` counting as
// upgraded as well (seed / frozen stations from earlier increments).
UpgradeSolution finalize_solution(const ProblemInstance& inst,
                                  std::vector<StationId> selected,
                                  std::span<const StationId> extra) {
  std::sort(selected.begin(), selected.end());
  std::vector<uint8_t> mask(inst.stations.size(), 0);
  for (StationId id : selected) mask[inst.station_index(id)] = 1;
  for (StationId id : extra) mask[inst.station_index(id)] = 1;
  UpgradeSolution sol;
  sol.upgraded = std::move(selected);
  sol.per_trajectory_utility.reserve(inst.trajectories.size());
  for (int j = 0; j < inst.num_trajectories(); ++j) {
    const double w = trajectory_utility_mask(inst, j, mask);
    sol.per_trajectory_utility.push_back(w);
    sol.satisfied_count += step_utility(w, inst.gamma);
  }
  sol.satisfied_fraction = static_cast<double>(sol.satisfied_count) /
                           static_cast<double>(inst.num_trajectories());
  return sol;
}

// Incidence of each station index: list of (trajectory, position) pairs.
std::vector<std::vector<std::pair<int, int>>> build_incidence(
    const ProblemInstance& inst) {
  std::vector<std::vector<std::pair<int, int>>> inc(inst.stations.size());
  for (int j = 0; j < inst.num_trajectories(); ++j) {
    const auto& entry = inst.trajectories[j];
    for (int p = 0; p < entry.length(); ++p) {
      inc[entry.station_idx[p]].emplace_back(j, p);
    }
  }
  return inc;
}

std::vector<double> static_bottleneck_weights(const ProblemInstance& inst) {
  std::vector<double> omega(inst.stations.size(), 0.0);
  for (const auto& entry : inst.trajectories) {
    for (int p = 0; p < entry.length(); ++p) {
      if (entry.bottleneck[p]) omega[entry.station_idx[p]] += entry.weight[p];
    }
  }
  return omega;
}

uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    const double estimate =
        static_cast<double>(result) * static_cast<double>(n - k + i) /
        static_cast<double>(i);
    if (estimate > static_cast<double>(cap) * 2.0) return cap + 1;
    result = result * (n - k + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::SimG: return "simg";
    case Algorithm::IncG: return "incg";
    case Algorithm::DecG: return "decg";
    case Algorithm::Exact: return "exact";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "simg") return Algorithm::SimG;
  if (name == "incg") return Algorithm::IncG;
  if (name == "decg") return Algorithm::DecG;
  if (name == "exact") return Algorithm::Exact;
  return std::nullopt;
}

std::pair<ProblemInstance, std::vector<int64_t>> prune_infeasible(
    const ProblemInstance& instance) {
  ProblemInstance filtered = instance;
  filtered.trajectories.clear();
  filtered.d_max = 0;
  std::vector<int64_t> pruned;
  std::vector<double> weights;
  for (const auto& entry : instance.trajectories) {
    weights.clear();
    for (int p = 0; p < entry.length(); ++p) {
      if (entry.bottleneck[p]) weights.push_back(entry.weight[p]);
    }
    std::sort(weights.begin(), weights.end(), std::greater<>());
    double reachable = entry.clear_weight;
    for (int i = 0; i < std::min<int>(instance.budget, weights.size()); ++i) {
      reachable += weights[i];
    }
    if (reachable < instance.gamma - kCmpEps) {
      pruned.push_back(entry.id);
    } else {
      filtered.d_max = std::max(filtered.d_max, entry.length());
      filtered.trajectories.push_back(entry);
    }
  }
  return {std::move(filtered), std::move(pruned)};
}

SolverReport solve_simg(const ProblemInstance& instance,
                        std::optional<int> budget) {
  const auto start = Clock::now();
  const int k = budget.value_or(instance.budget);
  if (k > instance.num_stations()) {
    throw ValidationError("budget k exceeds station count");
  }
  const auto omega = static_bottleneck_weights(instance);
  std::vector<int> candidates;
  for (int v = 0; v < instance.num_stations(); ++v) {
    if (omega[v] > 0.0) candidates.push_back(v);
  }
  // Largest bottleneck-weight first, ties to the higher station id.
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (std::abs(omega[a] - omega[b]) > kWeightTieTol)
      return omega[a] > omega[b];
    return instance.stations[a] > instance.stations[b];
  });
  if (static_cast<int>(candidates.size()) > k) candidates.resize(k);

  std::vector<StationId> chosen;
  chosen.reserve(candidates.size());
  for (int v : candidates) chosen.push_back(instance.stations[v]);
  std::sort(chosen.begin(), chosen.end());

  SolverReport report;
  report.algorithm = Algorithm::SimG;
  report.selection_order = chosen;
  report.solution = finalize_solution(instance, std::move(chosen), {});
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

SolverReport solve_incg(const ProblemInstance& instance,
                        std::span<const StationId> initial_upgraded,
                        std::optional<int> budget) {
  const auto start = Clock::now();
  const int k = budget.value_or(instance.budget);
  const int n = instance.num_stations();
  if (k + static_cast<int>(initial_upgraded.size()) > n) {
    throw ValidationError("budget plus seed exceeds station count");
  }
  const double gamma = instance.gamma;
  const auto omega = static_bottleneck_weights(instance);
  const auto incidence = build_incidence(instance);

  std::vector<uint8_t> upgraded(n, 0);
  for (StationId id : initial_upgraded) {
    upgraded[instance.station_index(id)] = 1;
  }

  const int m = instance.num_trajectories();
  std::vector<double> current_w(m);
  std::vector<uint8_t> satisfied(m);
  for (int j = 0; j < m; ++j) {
    current_w[j] = trajectory_utility_mask(instance, j, upgraded);
    satisfied[j] = step_utility(current_w[j], gamma);
  }

  // Candidates: stations that bottleneck at least one trajectory and are
  // not already upgraded. gain[v] counts unsatisfied trajectories pushed
  // over the threshold by v alone.
  std::vector<uint8_t> candidate(n, 0);
  std::vector<int> gain(n, 0);
  for (int v = 0; v < n; ++v) {
    if (omega[v] > 0.0 && !upgraded[v]) candidate[v] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (!candidate[v]) continue;
    for (const auto& [j, p] : incidence[v]) {
      const auto& entry = instance.trajectories[j];
      if (!entry.bottleneck[p] || satisfied[j]) continue;
      if (step_utility(current_w[j] + entry.weight[p], gamma)) ++gain[v];
    }
  }

  SolverReport report;
  report.algorithm = Algorithm::IncG;
  for (int iter = 0; iter < k; ++iter) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!candidate[v]) continue;
      if (best < 0 || gain[v] > gain[best] ||
          (gain[v] == gain[best] && omega[v] > omega[best] - kWeightTieTol)) {
        best = v;  // scan order is ascending id, so ties land on higher id
      }
    }
    if (best < 0) break;
    candidate[best] = 0;
    upgraded[best] = 1;
    report.selection_order.push_back(instance.stations[best]);
    for (const auto& [j, p] : incidence[best]) {
      const auto& entry = instance.trajectories[j];
      if (!entry.bottleneck[p] || satisfied[j]) continue;
      const double old_w = current_w[j];
      const double new_w = old_w + entry.weight[p];
      const bool now_satisfied = step_utility(new_w, gamma);
      for (int q = 0; q < entry.length(); ++q) {
        const int u = entry.station_idx[q];
        if (!entry.bottleneck[q] || !candidate[u]) continue;
        const int old_c = step_utility(old_w + entry.weight[q], gamma);
        const int new_c =
            now_satisfied ? 0 : step_utility(new_w + entry.weight[q], gamma);
        gain[u] += new_c - old_c;
      }
      current_w[j] = new_w;
      satisfied[j] = now_satisfied;
    }
  }

  report.solution = finalize_solution(instance, report.selection_order,
                                      initial_upgraded);
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

SolverReport solve_decg(const ProblemInstance& instance,
                        std::span<const StationId> frozen_removed,
                        std::optional<int> budget) {
  const auto start = Clock::now();
  const int k = budget.value_or(instance.budget);
  const int n = instance.num_stations();
  const double gamma = instance.gamma;
  const auto incidence = build_incidence(instance);

  std::vector<uint8_t> frozen(n, 0);
  for (StationId id : frozen_removed) frozen[instance.station_index(id)] = 1;
  std::vector<uint8_t> in_set(n, 0);
  int set_size = 0;
  for (int v = 0; v < n; ++v) {
    if (!frozen[v]) {
      in_set[v] = 1;
      ++set_size;
    }
  }
  if (k > set_size) {
    throw ValidationError("budget k exceeds the remaining station count");
  }

  // slack[j] = (utility of j with everything in S plus frozen upgraded)
  // minus gamma. A trajectory dies when its slack drops below -eps, i.e.
  // it can no longer be made gamma-bottleneck-free.
  const int m = instance.num_trajectories();
  std::vector<double> slack(m);
  std::vector<uint8_t> alive(m, 1);
  for (int j = 0; j < m; ++j) slack[j] = 1.0 - gamma;

  // loss[v]: alive trajectories lost if v were removed now.
  // omega_dyn[v]: bottleneck-weight restricted to surviving trajectories,
  // which is what reproduces consistent deletion orders as pruning runs.
  std::vector<int> loss(n, 0);
  std::vector<double> omega_dyn(n, 0.0);
  for (int j = 0; j < m; ++j) {
    const auto& entry = instance.trajectories[j];
    for (int q = 0; q < entry.length(); ++q) {
      if (!entry.bottleneck[q]) continue;
      const int u = entry.station_idx[q];
      omega_dyn[u] += entry.weight[q];
      if (in_set[u] && slack[j] - entry.weight[q] < -kCmpEps) ++loss[u];
    }
  }

  SolverReport report;
  report.algorithm = Algorithm::DecG;
  const int deletions = set_size - k;
  for (int iter = 0; iter < deletions; ++iter) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!in_set[v]) continue;
      if (best < 0 || loss[v] < loss[best] ||
          (loss[v] == loss[best] &&
           omega_dyn[v] < omega_dyn[best] - kWeightTieTol)) {
        best = v;  // ascending scan keeps the lowest id on full ties
      }
    }
    in_set[best] = 0;
    report.selection_order.push_back(instance.stations[best]);
    for (const auto& [j, p] : incidence[best]) {
      const auto& entry = instance.trajectories[j];
      if (!alive[j] || !entry.bottleneck[p]) continue;
      const double old_slack = slack[j];
      slack[j] = old_slack - entry.weight[p];
      if (slack[j] < -kCmpEps) {
        // Trajectory can no longer reach gamma: retract its contributions.
        alive[j] = 0;
        for (int q = 0; q < entry.length(); ++q) {
          if (!entry.bottleneck[q]) continue;
          const int u = entry.station_idx[q];
          if (u == best) continue;
          omega_dyn[u] -= entry.weight[q];
          if (in_set[u] && old_slack - entry.weight[q] < -kCmpEps) --loss[u];
        }
        report.pruned_trajectories.push_back(entry.id);
      } else {
        for (int q = 0; q < entry.length(); ++q) {
          if (!entry.bottleneck[q]) continue;
          const int u = entry.station_idx[q];
          if (u == best || !in_set[u]) continue;
          const bool old_c = old_slack - entry.weight[q] < -kCmpEps;
          const bool new_c = slack[j] - entry.weight[q] < -kCmpEps;
          loss[u] += static_cast<int>(new_c) - static_cast<int>(old_c);
        }
      }
    }
  }

  std::vector<StationId> retained;
  for (int v = 0; v < n; ++v) {
    if (in_set[v]) retained.push_back(instance.stations[v]);
  }
  report.solution =
      finalize_solution(instance, std::move(retained), frozen_removed);
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

SolverReport solve_exact(const ProblemInstance& instance,
                         uint64_t enumeration_cap, std::optional<int> budget) {
  const auto start = Clock::now();
  const int k = budget.value_or(instance.budget);
  const auto omega = static_bottleneck_weights(instance);
  std::vector<int> candidates;
  for (int v = 0; v < instance.num_stations(); ++v) {
    if (omega[v] > 0.0) candidates.push_back(v);
  }
  const int c = static_cast<int>(candidates.size());
  const int k_eff = std::min(k, c);
  if (binomial_capped(c, k_eff, enumeration_cap) > enumeration_cap) {
    throw CapExceededError(
        "exact enumeration would exceed the subset cap of " +
        std::to_string(enumeration_cap) + " (C(" + std::to_string(c) + "," +
        std::to_string(k_eff) + "))");
  }

  const int m = instance.num_trajectories();
  std::vector<uint8_t> mask(instance.stations.size(), 0);
  std::vector<int> combo(k_eff);
  for (int i = 0; i < k_eff; ++i) combo[i] = i;
  std::vector<int> best_combo;
  int best_count = -1;

  auto score = [&]() {
    std::fill(mask.begin(), mask.end(), 0);
    for (int i : combo) mask[candidates[i]] = 1;
    int count = 0;
    for (int j = 0; j < m; ++j) {
      count += step_utility(trajectory_utility_mask(instance, j, mask),
                            instance.gamma);
    }
    return count;
  };

  if (k_eff == 0) {
    best_count = score();
    best_combo.clear();
  } else {
    for (;;) {
      // Lexicographic enumeration: the first maximum seen is the
      // lexicographically smallest maximizing set.
      const int count = score();
      if (count > best_count) {
        best_count = count;
        best_combo = combo;
      }
      int i = k_eff - 1;
      while (i >= 0 && combo[i] == c - k_eff + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int q = i + 1; q < k_eff; ++q) combo[q] = combo[q - 1] + 1;
    }
  }

  std::vector<StationId> chosen;
  for (int i : best_combo) chosen.push_back(instance.stations[candidates[i]]);
  std::sort(chosen.begin(), chosen.end());

  SolverReport report;
  report.algorithm = Algorithm::Exact;
  report.selection_order = chosen;
  report.solution = finalize_solution(instance, std::move(chosen), {});
  report.elapsed_ms = elapsed_ms_since(start);
  return report;
}

}  // namespace trajplan
