#pragma once

// Shared test helpers: the 11-trajectory / 15-station worked example used
// across the golden tests, a random-instance generator, and a brute-force
// reference maximizer kept independent of the library's exact solver.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "trajplan/model.hpp"
#include "trajplan/rng.hpp"

namespace testfx {

using trajplan::ProblemInstance;
using trajplan::StationId;
using trajplan::Trajectory;
using trajplan::VisitRecord;

// Eleven trajectories of length 3 over stations 1..15. Every station is a
// bottleneck on every incident trajectory and per-trajectory weights are
// all 1/3 (equal durations, throughput below any sensible threshold).
inline std::vector<Trajectory> example_trajectories() {
  const std::vector<std::vector<StationId>> routes = {
      {1, 4, 7},    {2, 4, 6},   {3, 4, 5},    {8, 9, 11},
      {8, 9, 11},   {9, 12, 13}, {9, 12, 13},  {12, 10, 14},
      {12, 10, 14}, {10, 11, 15}, {10, 11, 15},
  };
  std::vector<Trajectory> out;
  for (size_t j = 0; j < routes.size(); ++j) {
    Trajectory t;
    t.id = static_cast<int64_t>(j + 1);
    for (StationId s : routes[j]) t.visits.push_back({s, 1000, 100.0});
    out.push_back(std::move(t));
  }
  return out;
}

inline ProblemInstance example_instance(double gamma, int budget = 3) {
  return trajplan::build_instance(example_trajectories(), 750.0, gamma,
                                  budget);
}

// Random instance: every station appears with some probability of being a
// bottleneck (throughput drawn either side of tau), uneven durations.
inline std::vector<Trajectory> random_trajectories(trajplan::Rng& rng,
                                                   int num_stations,
                                                   int num_trajectories,
                                                   int max_len = 5,
                                                   double p_bottleneck = 0.8) {
  std::vector<Trajectory> out;
  for (int j = 0; j < num_trajectories; ++j) {
    Trajectory t;
    t.id = j;
    const int len = 1 + static_cast<int>(rng.below(max_len));
    for (int i = 0; i < len; ++i) {
      VisitRecord v;
      v.station = static_cast<StationId>(rng.below(num_stations));
      v.duration_ms = 1 + static_cast<int64_t>(rng.below(5000));
      v.throughput_kbps = rng.bernoulli(p_bottleneck)
                              ? rng.uniform(10.0, 700.0)
                              : rng.uniform(800.0, 2000.0);
      t.visits.push_back(v);
    }
    out.push_back(std::move(t));
  }
  return out;
}

// All-bottleneck variant used by the deletion-bound checks.
inline std::vector<Trajectory> random_all_bottleneck(trajplan::Rng& rng,
                                                     int num_stations,
                                                     int num_trajectories,
                                                     int max_len = 4) {
  return random_trajectories(rng, num_stations, num_trajectories, max_len,
                             1.0);
}

// Reference maximizer by plain recursion over all k-subsets of ALL
// stations (no candidate filtering, no shared code with the solvers).
inline int brute_force_best(const ProblemInstance& inst, int k) {
  const int n = inst.num_stations();
  std::vector<StationId> chosen;
  int best = 0;
  auto score = [&](const std::vector<StationId>& s) {
    int count = 0;
    for (int j = 0; j < inst.num_trajectories(); ++j) {
      const double w = trajplan::trajectory_utility(inst, j, s);
      count += trajplan::step_utility(w, inst.gamma);
    }
    return count;
  };
  // k can exceed n in tests; cap like a caller would.
  const int kk = std::min(k, n);
  auto rec = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      best = std::max(best, score(chosen));
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      chosen.push_back(inst.stations[i]);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0, kk);
  return best;
}

}  // namespace testfx
