#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trajplan/model.hpp"

namespace trajplan {

struct Point {
  double x_km = 0.0;
  double y_km = 0.0;
};

struct ThroughputRange {
  double lo_kbps = 0.0;
  double hi_kbps = 0.0;
};

// One concentric layer. area_fraction is the share of the total city area
// this layer's annulus occupies; layers are listed inner to outer and the
// fractions sum to 1.
struct LayerConfig {
  std::string name;  // CBD, SD, UE or EC
  double area_fraction = 0.0;
  double home_density = 0.0;    // relative weights, not absolute counts
  double office_density = 0.0;
};

struct CityConfig {
  uint64_t seed = 1;
  double width_km = 10.0;
  double height_km = 10.0;
  std::vector<LayerConfig> layers;
  int num_homes = 1000;
  int num_offices = 1000;
  double grid_spacing_km = 0.5;   // road grid pitch
  double road_speed_kmph = 40.0;
  double sample_step_km = 0.05;   // handoff sampling along the route
  double commute_window_h = 4.0;  // departures uniform in 07:00 + window
};

struct NetworkConfig {
  uint64_t seed = 1;
  double frac_2g = 0.82;
  double frac_congested = 0.20;
  ThroughputRange congested_2g{20.0, 80.0};
  ThroughputRange clear_2g{50.0, 150.0};
  ThroughputRange congested_3g{20.0, 400.0};
  ThroughputRange clear_3g{300.0, 2000.0};
  double station_density_scale = 0.1;  // stations per home+office
  int num_stations = 0;                // >0 overrides the density scale
  double cell_km = 1.0;                // proportional-allocation grid pitch
};

struct StationInfo {
  StationId id = 0;
  double x_km = 0.0;
  double y_km = 0.0;
  bool is_3g = false;
  bool congested = false;
  double throughput_kbps = 0.0;  // constant per-user throughput
};

struct GeneratedScenario {
  CityConfig city;
  NetworkConfig network;
  std::string topology;  // city | star | mesh
  std::vector<StationInfo> stations;
  std::vector<Trajectory> trajectories;
  // Departure minutes after 07:00 per trajectory; metadata only.
  std::vector<double> departure_min;
};

// Home and office positions per the layered densities. Deterministic in
// config.seed.
std::pair<std::vector<Point>, std::vector<Point>> generate_city(
    const CityConfig& config);

// Stations allocated to grid cells proportionally to home+office counts,
// with technology / congestion / throughput draws.
std::vector<StationInfo> generate_network(const NetworkConfig& config,
                                          const CityConfig& city,
                                          const std::vector<Point>& homes,
                                          const std::vector<Point>& offices);

// Commute trajectories routed on the grid road network, associating with
// the nearest station along the way.
std::vector<Trajectory> generate_trajectories(
    const CityConfig& city, const std::vector<StationInfo>& stations,
    const std::vector<Point>& homes, const std::vector<Point>& offices,
    int num_trajectories, uint64_t seed,
    std::vector<double>* departures = nullptr);

GeneratedScenario generate_scenario(const CityConfig& city,
                                    const NetworkConfig& network,
                                    int num_trajectories);

// Dense central office square, homes in a thin outer ring.
GeneratedScenario generate_star(int num_trajectories, int num_stations,
                                uint64_t seed);

// Trajectory lengths drawn from a same-sized Star scenario, stations
// assigned uniformly at random without replacement.
GeneratedScenario generate_mesh(int num_trajectories, int num_stations,
                                uint64_t seed);

struct Preset {
  std::string name;
  CityConfig city;
  NetworkConfig network;
  int num_trajectories = 0;
  std::string topology = "city";
};

// Shipped presets: star, mesh, nyc-like, atlanta-like, bangalore-like,
// nyc-mini, atlanta-mini, bangalore-mini. Throws ValidationError for
// unknown names. Layer densities are illustrative, not calibrated.
Preset preset_by_name(const std::string& name);
std::vector<std::string> preset_names();

// Generates whatever the preset describes (city, star or mesh topology).
GeneratedScenario generate_preset(const std::string& name, uint64_t seed,
                                  int num_trajectories_override = 0,
                                  int num_stations_override = 0);

}  // namespace trajplan
