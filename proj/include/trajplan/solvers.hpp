#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajplan/model.hpp"

namespace trajplan {

enum class Algorithm { SimG, IncG, DecG, Exact };

std::string algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& name);

struct SolverReport {
  UpgradeSolution solution;
  Algorithm algorithm = Algorithm::SimG;
  // IncG: additions in selection order; DecG: deletions in order;
  // SimG/Exact: the final set in ascending id order.
  std::vector<StationId> selection_order;
  std::vector<int64_t> pruned_trajectories;
  double elapsed_ms = 0.0;
};

// Removes trajectories whose k largest bottleneck weights plus their
// non-bottleneck weight cannot reach gamma. Returns the filtered instance
// and the ids of the pruned trajectories.
std::pair<ProblemInstance, std::vector<int64_t>> prune_infeasible(
    const ProblemInstance& instance);

// Top-k stations by bottleneck-weight, ties broken by higher station id.
// Only stations that are a bottleneck for at least one trajectory are
// candidates; if fewer than k exist, all of them are returned.
SolverReport solve_simg(const ProblemInstance& instance,
                        std::optional<int> budget = std::nullopt);

// Greedy marginal-gain addition. `initial_upgraded` seeds the solution so
// a budget can be spent in increments; the reported upgrade set contains
// only the newly selected stations, while utilities account for the seed.
SolverReport solve_incg(const ProblemInstance& instance,
                        std::span<const StationId> initial_upgraded = {},
                        std::optional<int> budget = std::nullopt);

// Greedy marginal-loss deletion with infeasible-trajectory pruning.
// `frozen_removed` are stations committed (upgraded) by an earlier run:
// they are excluded from the ground set but still count as upgraded when
// deciding trajectory feasibility. Deletion ties are broken by smallest
// bottleneck-weight over the surviving trajectories, then lowest id.
SolverReport solve_decg(const ProblemInstance& instance,
                        std::span<const StationId> frozen_removed = {},
                        std::optional<int> budget = std::nullopt);

inline constexpr uint64_t kDefaultEnumerationCap = 10'000'000;

// Exhaustive search over k-subsets of the candidate stations. Throws
// CapExceededError when the subset count exceeds `enumeration_cap`.
// Among maximizers, returns the lexicographically smallest id set.
SolverReport solve_exact(const ProblemInstance& instance,
                         uint64_t enumeration_cap = kDefaultEnumerationCap,
                         std::optional<int> budget = std::nullopt);

}  // namespace trajplan
