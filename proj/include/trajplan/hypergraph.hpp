#pragma once

#include <span>
#include <vector>

#include "trajplan/model.hpp"

namespace trajplan {

// Hypergraph view of an instance: stations are nodes, trajectories are
// hyper-edges. Immutable after build.
struct HyperGraph {
  std::vector<StationId> nodes;  // same order as instance.stations
  // Per trajectory, the incident station indices (sorted, deduplicated).
  std::vector<std::vector<int>> edges;
  // Per node index, the incident trajectory indices (sorted).
  std::vector<std::vector<int>> incidence;
  std::vector<int> degree;
  // Bottleneck-weight per node: sum of w_ji over trajectories where the
  // station is a bottleneck.
  std::vector<double> bottleneck_weight;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

HyperGraph build_hypergraph(const ProblemInstance& instance);

// Number of trajectories that are gamma-bottleneck-free once every station
// in S is upgraded. Agrees with evaluate_solution().satisfied_count.
int set_weight(const HyperGraph& graph, const ProblemInstance& instance,
               std::span<const StationId> s);

}  // namespace trajplan
