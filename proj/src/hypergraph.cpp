#include "trajplan/hypergraph.hpp"

namespace trajplan {

HyperGraph build_hypergraph(const ProblemInstance& instance) {
  HyperGraph g;
  g.nodes = instance.stations;
  const int n = instance.num_stations();
  g.incidence.resize(n);
  g.degree.assign(n, 0);
  g.bottleneck_weight.assign(n, 0.0);
  g.edges.reserve(instance.trajectories.size());
  for (int j = 0; j < instance.num_trajectories(); ++j) {
    const auto& entry = instance.trajectories[j];
    g.edges.push_back(entry.station_idx);
    for (size_t i = 0; i < entry.station_idx.size(); ++i) {
      const int v = entry.station_idx[i];
      g.incidence[v].push_back(j);
      ++g.degree[v];
      if (entry.bottleneck[i]) g.bottleneck_weight[v] += entry.weight[i];
    }
  }
  return g;
}

int set_weight(const HyperGraph& graph, const ProblemInstance& instance,
               std::span<const StationId> s) {
  std::vector<uint8_t> mask(graph.nodes.size(), 0);
  for (StationId id : s) mask[instance.station_index(id)] = 1;
  int count = 0;
  for (int j = 0; j < instance.num_trajectories(); ++j) {
    const auto& entry = instance.trajectories[j];
    double w = entry.clear_weight;
    for (size_t i = 0; i < entry.station_idx.size(); ++i) {
      if (entry.bottleneck[i] && mask[entry.station_idx[i]]) {
        w += entry.weight[i];
      }
    }
    count += step_utility(w, instance.gamma);
  }
  return count;
}

}  // namespace trajplan
