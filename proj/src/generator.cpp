#include "trajplan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trajplan/errors.hpp"
#include "trajplan/rng.hpp"

namespace trajplan {

namespace {

struct LayerRects {
  // Outer rectangle half-extents per layer (centered on the city).
  std::vector<double> half_w;
  std::vector<double> half_h;
  std::vector<double> area;  // annulus area
};

LayerRects layer_rects(const CityConfig& city) {
  if (city.layers.empty()) throw ValidationError("city has no layers");
  if (city.width_km <= 0.0 || city.height_km <= 0.0) {
    throw ValidationError("city dimensions must be positive");
  }
  LayerRects rects;
  double cumulative = 0.0;
  double prev_area = 0.0;
  for (const LayerConfig& layer : city.layers) {
    if (layer.area_fraction <= 0.0) {
      throw ValidationError("layer '" + layer.name +
                            "' has non-positive area fraction");
    }
    if (layer.home_density < 0.0 || layer.office_density < 0.0) {
      throw ValidationError("layer '" + layer.name + "' has negative density");
    }
    cumulative += layer.area_fraction;
    const double scale = std::sqrt(std::min(cumulative, 1.0));
    rects.half_w.push_back(0.5 * city.width_km * scale);
    rects.half_h.push_back(0.5 * city.height_km * scale);
    const double outer_area =
        4.0 * rects.half_w.back() * rects.half_h.back();
    rects.area.push_back(outer_area - prev_area);
    if (rects.area.back() <= 0.0) {
      throw ValidationError("layer '" + layer.name + "' has zero area");
    }
    prev_area = outer_area;
  }
  if (cumulative > 1.0 + 1e-9) {
    throw ValidationError("layer area fractions exceed 1");
  }
  return rects;
}

// Largest-remainder apportionment of `total` across `weights`.
std::vector<int> apportion(int total, const std::vector<double>& weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> counts(weights.size(), 0);
  if (total <= 0) return counts;
  if (sum <= 0.0) throw ValidationError("all apportionment weights are zero");
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double share = static_cast<double>(total) * weights[i] / sum;
    counts[i] = static_cast<int>(std::floor(share));
    assigned += counts[i];
    remainders.emplace_back(share - std::floor(share), static_cast<int>(i));
  }
  std::sort(remainders.begin(), remainders.end(), [](auto& a, auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int i = 0; i < total - assigned; ++i) {
    ++counts[remainders[i % remainders.size()].second];
  }
  return counts;
}

Point sample_in_annulus(Rng& rng, const CityConfig& city,
                        const LayerRects& rects, int layer) {
  const double cx = 0.5 * city.width_km;
  const double cy = 0.5 * city.height_km;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double x = cx + rng.uniform(-rects.half_w[layer], rects.half_w[layer]);
    const double y = cy + rng.uniform(-rects.half_h[layer], rects.half_h[layer]);
    if (layer > 0 && std::abs(x - cx) <= rects.half_w[layer - 1] &&
        std::abs(y - cy) <= rects.half_h[layer - 1]) {
      continue;
    }
    return {x, y};
  }
  throw ValidationError("layer annulus too thin to sample");
}

std::vector<Point> sample_layer_points(const CityConfig& city,
                                       const LayerRects& rects, int total,
                                       bool offices, Rng& rng) {
  std::vector<double> weights;
  for (size_t i = 0; i < city.layers.size(); ++i) {
    const double density = offices ? city.layers[i].office_density
                                   : city.layers[i].home_density;
    weights.push_back(density * rects.area[i]);
  }
  const auto counts = apportion(total, weights);
  std::vector<Point> points;
  points.reserve(total);
  for (size_t layer = 0; layer < counts.size(); ++layer) {
    for (int i = 0; i < counts[layer]; ++i) {
      points.push_back(
          sample_in_annulus(rng, city, rects, static_cast<int>(layer)));
    }
  }
  return points;
}

// Uniform-grid spatial index for nearest-station queries.
class StationIndex {
 public:
  StationIndex(const std::vector<StationInfo>& stations, double width,
               double height)
      : stations_(stations) {
    const int target =
        std::max(1, static_cast<int>(std::sqrt(stations.size())));
    nx_ = std::max(1, target);
    ny_ = std::max(1, target);
    cw_ = width / nx_;
    ch_ = height / ny_;
    buckets_.resize(static_cast<size_t>(nx_) * ny_);
    for (size_t i = 0; i < stations.size(); ++i) {
      buckets_[bucket_of(stations[i].x_km, stations[i].y_km)].push_back(
          static_cast<int>(i));
    }
  }

  int nearest(double x, double y) const {
    const int bx = clamp_x(static_cast<int>(x / cw_));
    const int by = clamp_y(static_cast<int>(y / ch_));
    int best = -1;
    double best_d2 = 0.0;
    for (int ring = 0; ring < std::max(nx_, ny_); ++ring) {
      for (int cy = by - ring; cy <= by + ring; ++cy) {
        if (cy < 0 || cy >= ny_) continue;
        for (int cx = bx - ring; cx <= bx + ring; ++cx) {
          if (cx < 0 || cx >= nx_) continue;
          if (ring > 0 && std::abs(cx - bx) != ring && std::abs(cy - by) != ring)
            continue;  // only the ring boundary
          for (int i : buckets_[static_cast<size_t>(cy) * nx_ + cx]) {
            const double dx = stations_[i].x_km - x;
            const double dy = stations_[i].y_km - y;
            const double d2 = dx * dx + dy * dy;
            if (best < 0 || d2 < best_d2 ||
                (d2 == best_d2 && i < best)) {
              best = i;
              best_d2 = d2;
            }
          }
        }
      }
      if (best >= 0) {
        // A match in ring r is final once ring distance exceeds sqrt(d2).
        const double ring_dist = ring * std::min(cw_, ch_);
        if (ring_dist * ring_dist >= best_d2) break;
      }
    }
    return best;
  }

 private:
  size_t bucket_of(double x, double y) const {
    return static_cast<size_t>(clamp_y(static_cast<int>(y / ch_))) * nx_ +
           clamp_x(static_cast<int>(x / cw_));
  }
  int clamp_x(int v) const { return std::clamp(v, 0, nx_ - 1); }
  int clamp_y(int v) const { return std::clamp(v, 0, ny_ - 1); }

  const std::vector<StationInfo>& stations_;
  int nx_ = 1, ny_ = 1;
  double cw_ = 1.0, ch_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

double snap(double v, double pitch, double max_v) {
  return std::clamp(std::round(v / pitch) * pitch, 0.0, max_v);
}

ThroughputRange pick_range(const NetworkConfig& cfg, bool is_3g,
                           bool congested) {
  if (is_3g) return congested ? cfg.congested_3g : cfg.clear_3g;
  return congested ? cfg.congested_2g : cfg.clear_2g;
}

}  // namespace

std::pair<std::vector<Point>, std::vector<Point>> generate_city(
    const CityConfig& config) {
  if (config.num_homes <= 0 || config.num_offices <= 0) {
    throw ValidationError("num_homes and num_offices must be positive");
  }
  const LayerRects rects = layer_rects(config);
  Rng home_rng(config.seed, "city.homes");
  Rng office_rng(config.seed, "city.offices");
  auto homes =
      sample_layer_points(config, rects, config.num_homes, false, home_rng);
  auto offices =
      sample_layer_points(config, rects, config.num_offices, true, office_rng);
  return {std::move(homes), std::move(offices)};
}

std::vector<StationInfo> generate_network(const NetworkConfig& config,
                                          const CityConfig& city,
                                          const std::vector<Point>& homes,
                                          const std::vector<Point>& offices) {
  if (homes.empty() && offices.empty()) {
    throw ValidationError("network generation needs homes or offices");
  }
  if (config.frac_2g < 0.0 || config.frac_2g > 1.0 ||
      config.frac_congested < 0.0 || config.frac_congested > 1.0) {
    throw ValidationError("technology/congestion fractions outside [0,1]");
  }
  for (const ThroughputRange& r :
       {config.congested_2g, config.clear_2g, config.congested_3g,
        config.clear_3g}) {
    if (r.lo_kbps > r.hi_kbps || r.lo_kbps < 0.0) {
      throw ValidationError("invalid throughput range");
    }
  }
  const int total_population =
      static_cast<int>(homes.size() + offices.size());
  const int total =
      config.num_stations > 0
          ? config.num_stations
          : static_cast<int>(std::lround(config.station_density_scale *
                                         total_population));
  if (total <= 0) throw ValidationError("zero stations produced");

  const int nx = std::max(1, static_cast<int>(std::ceil(city.width_km /
                                                        config.cell_km)));
  const int ny = std::max(1, static_cast<int>(std::ceil(city.height_km /
                                                        config.cell_km)));
  std::vector<double> cell_pop(static_cast<size_t>(nx) * ny, 0.0);
  auto cell_of = [&](const Point& p) {
    const int cx = std::clamp(static_cast<int>(p.x_km / config.cell_km), 0,
                              nx - 1);
    const int cy = std::clamp(static_cast<int>(p.y_km / config.cell_km), 0,
                              ny - 1);
    return static_cast<size_t>(cy) * nx + cx;
  };
  for (const Point& p : homes) cell_pop[cell_of(p)] += 1.0;
  for (const Point& p : offices) cell_pop[cell_of(p)] += 1.0;
  const auto counts = apportion(total, cell_pop);

  Rng rng(config.seed, "network");
  std::vector<StationInfo> stations;
  stations.reserve(total);
  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const int count = counts[static_cast<size_t>(cy) * nx + cx];
      for (int i = 0; i < count; ++i) {
        StationInfo st;
        st.id = static_cast<StationId>(stations.size());
        st.x_km = std::min(rng.uniform(cx * config.cell_km,
                                       (cx + 1) * config.cell_km),
                           city.width_km);
        st.y_km = std::min(rng.uniform(cy * config.cell_km,
                                       (cy + 1) * config.cell_km),
                           city.height_km);
        st.is_3g = !rng.bernoulli(config.frac_2g);
        st.congested = rng.bernoulli(config.frac_congested);
        const ThroughputRange range =
            pick_range(config, st.is_3g, st.congested);
        st.throughput_kbps = rng.uniform(range.lo_kbps, range.hi_kbps);
        stations.push_back(st);
      }
    }
  }
  return stations;
}

std::vector<Trajectory> generate_trajectories(
    const CityConfig& city, const std::vector<StationInfo>& stations,
    const std::vector<Point>& homes, const std::vector<Point>& offices,
    int num_trajectories, uint64_t seed, std::vector<double>* departures) {
  if (stations.empty() || homes.empty() || offices.empty()) {
    throw ValidationError("trajectory generation needs stations, homes and "
                          "offices");
  }
  if (city.road_speed_kmph <= 0.0 || city.grid_spacing_km <= 0.0 ||
      city.sample_step_km <= 0.0) {
    throw ValidationError("road speed, grid spacing and sample step must be "
                          "positive");
  }
  const StationIndex index(stations, city.width_km, city.height_km);
  Rng rng(seed, "trajectories");
  const double step = city.sample_step_km;
  const int64_t step_ms = std::max<int64_t>(
      1, std::llround(step / city.road_speed_kmph * 3600.0 * 1000.0));

  std::vector<Trajectory> trajectories;
  trajectories.reserve(num_trajectories);
  std::vector<Point> route;
  for (int t = 0; t < num_trajectories; ++t) {
    const Point home = homes[rng.below(homes.size())];
    const Point office = offices[rng.below(offices.size())];
    if (departures) {
      departures->push_back(rng.uniform(0.0, city.commute_window_h * 60.0));
    }

    // Route: straight to the road grid, along the grid (x leg then y leg),
    // then straight to the office.
    const double sp = city.grid_spacing_km;
    const Point g0{snap(home.x_km, sp, city.width_km),
                   snap(home.y_km, sp, city.height_km)};
    const Point g1{snap(office.x_km, sp, city.width_km),
                   snap(office.y_km, sp, city.height_km)};
    route.clear();
    route.push_back(home);
    route.push_back(g0);
    route.push_back({g1.x_km, g0.y_km});
    route.push_back(g1);
    route.push_back(office);

    Trajectory traj;
    traj.id = t;
    auto visit = [&](double x, double y, int64_t duration_ms) {
      if (duration_ms <= 0) return;
      const int s = index.nearest(x, y);
      if (!traj.visits.empty() && traj.visits.back().station == stations[s].id) {
        traj.visits.back().duration_ms += duration_ms;
      } else {
        traj.visits.push_back(
            {stations[s].id, duration_ms, stations[s].throughput_kbps});
      }
    };

    for (size_t seg = 0; seg + 1 < route.size(); ++seg) {
      const Point a = route[seg];
      const Point b = route[seg + 1];
      const double len = std::hypot(b.x_km - a.x_km, b.y_km - a.y_km);
      const int samples = static_cast<int>(len / step);
      for (int i = 0; i < samples; ++i) {
        const double f = (static_cast<double>(i) + 0.5) * step / len;
        visit(a.x_km + f * (b.x_km - a.x_km), a.y_km + f * (b.y_km - a.y_km),
              step_ms);
      }
      const double rest = len - samples * step;
      if (rest > 0.0) {
        const double f = (samples * step + 0.5 * rest) / len;
        visit(a.x_km + f * (b.x_km - a.x_km), a.y_km + f * (b.y_km - a.y_km),
              std::max<int64_t>(1, std::llround(static_cast<double>(step_ms) *
                                                rest / step)));
      }
    }
    if (traj.visits.empty()) visit(home.x_km, home.y_km, step_ms);
    trajectories.push_back(std::move(traj));
  }
  return trajectories;
}

GeneratedScenario generate_scenario(const CityConfig& city,
                                    const NetworkConfig& network,
                                    int num_trajectories) {
  GeneratedScenario scenario;
  scenario.city = city;
  scenario.network = network;
  scenario.topology = "city";
  auto [homes, offices] = generate_city(city);
  scenario.stations = generate_network(network, city, homes, offices);
  scenario.trajectories = generate_trajectories(
      city, scenario.stations, homes, offices, num_trajectories, city.seed,
      &scenario.departure_min);
  return scenario;
}

GeneratedScenario generate_star(int num_trajectories, int num_stations,
                                uint64_t seed) {
  Preset preset = preset_by_name("star");
  preset.city.seed = seed;
  preset.network.seed = seed;
  if (num_stations > 0) preset.network.num_stations = num_stations;
  GeneratedScenario scenario =
      generate_scenario(preset.city, preset.network, num_trajectories);
  scenario.topology = "star";
  return scenario;
}

GeneratedScenario generate_mesh(int num_trajectories, int num_stations,
                                uint64_t seed) {
  // Length distribution comes from a same-sized Star run.
  GeneratedScenario star =
      generate_star(num_trajectories, num_stations, seed);
  const int n = static_cast<int>(star.stations.size());
  std::vector<int> star_lengths;
  star_lengths.reserve(star.trajectories.size());
  for (const Trajectory& t : star.trajectories) {
    std::vector<StationId> ids;
    for (const VisitRecord& v : t.visits) ids.push_back(v.station);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    star_lengths.push_back(static_cast<int>(ids.size()));
  }

  GeneratedScenario scenario;
  scenario.city = star.city;
  scenario.network = star.network;
  scenario.topology = "mesh";

  Rng station_rng(seed, "mesh.stations");
  scenario.stations.reserve(n);
  for (int i = 0; i < n; ++i) {
    StationInfo st;
    st.id = i;
    st.x_km = station_rng.uniform(0.0, scenario.city.width_km);
    st.y_km = station_rng.uniform(0.0, scenario.city.height_km);
    st.is_3g = !station_rng.bernoulli(scenario.network.frac_2g);
    st.congested = station_rng.bernoulli(scenario.network.frac_congested);
    const ThroughputRange range =
        pick_range(scenario.network, st.is_3g, st.congested);
    st.throughput_kbps = station_rng.uniform(range.lo_kbps, range.hi_kbps);
    scenario.stations.push_back(st);
  }

  Rng rng(seed, "mesh.trajectories");
  std::vector<int> pool(n);
  for (int t = 0; t < num_trajectories; ++t) {
    const int length = star_lengths[rng.below(star_lengths.size())];
    if (length > n) {
      throw ValidationError("requested trajectory length exceeds the station "
                            "count");
    }
    // Partial Fisher-Yates draw without replacement.
    std::iota(pool.begin(), pool.end(), 0);
    Trajectory traj;
    traj.id = t;
    for (int i = 0; i < length; ++i) {
      const int pick = i + static_cast<int>(rng.below(n - i));
      std::swap(pool[i], pool[pick]);
      const StationInfo& st = scenario.stations[pool[i]];
      traj.visits.push_back({st.id, 60'000, st.throughput_kbps});
    }
    scenario.trajectories.push_back(std::move(traj));
    scenario.departure_min.push_back(
        rng.uniform(0.0, scenario.city.commute_window_h * 60.0));
  }
  return scenario;
}

namespace {

Preset make_star_preset() {
  Preset p;
  p.name = "star";
  p.topology = "star";
  p.city.width_km = 10.0;
  p.city.height_km = 14.0;
  p.city.layers = {{"CBD", 0.04, 0.0, 1.0},
                   {"UE", 0.66, 0.0, 0.0},
                   {"EC", 0.30, 1.0, 0.0}};
  p.city.num_homes = 2000;
  p.city.num_offices = 500;
  p.city.grid_spacing_km = 0.5;
  p.network.num_stations = 430;
  p.num_trajectories = 5000;
  return p;
}

Preset make_city_preset(const std::string& name, double width, double height,
                        std::vector<LayerConfig> layers, int homes,
                        int offices, int stations, int trajectories) {
  Preset p;
  p.name = name;
  p.city.width_km = width;
  p.city.height_km = height;
  p.city.layers = std::move(layers);
  p.city.num_homes = homes;
  p.city.num_offices = offices;
  p.city.grid_spacing_km = 1.0;
  p.network.num_stations = stations;
  p.num_trajectories = trajectories;
  return p;
}

}  // namespace

Preset preset_by_name(const std::string& name) {
  // Layer densities are illustrative stand-ins tuned only for the
  // qualitative dense-CBD vs spread-out contrasts.
  if (name == "star") return make_star_preset();
  if (name == "mesh") {
    Preset p = make_star_preset();
    p.name = "mesh";
    p.topology = "mesh";
    return p;
  }
  if (name == "nyc-like") {
    return make_city_preset(
        name, 46.0, 64.0,
        {{"CBD", 0.03, 0.5, 10.0},
         {"SD", 0.12, 2.0, 3.0},
         {"UE", 0.45, 3.0, 1.0},
         {"EC", 0.40, 2.0, 0.5}},
        20000, 8000, 13860, 50000);
  }
  if (name == "atlanta-like") {
    return make_city_preset(
        name, 42.0, 61.0,
        {{"CBD", 0.01, 0.5, 3.0},
         {"SD", 0.14, 1.5, 1.5},
         {"UE", 0.45, 2.5, 1.0},
         {"EC", 0.40, 2.5, 0.8}},
        20000, 8000, 11213, 50000);
  }
  if (name == "bangalore-like") {
    return make_city_preset(
        name, 18.0, 18.0,
        {{"CBD", 0.05, 1.0, 8.0},
         {"SD", 0.15, 2.0, 3.0},
         {"UE", 0.50, 3.0, 0.5},
         {"EC", 0.30, 3.0, 0.3}},
        10000, 4000, 1894, 25000);
  }
  if (name == "nyc-mini") {
    return make_city_preset(
        name, 15.0, 21.0,
        {{"CBD", 0.03, 0.5, 10.0},
         {"SD", 0.12, 2.0, 3.0},
         {"UE", 0.45, 3.0, 1.0},
         {"EC", 0.40, 2.0, 0.5}},
        6000, 2400, 1386, 5000);
  }
  if (name == "atlanta-mini") {
    return make_city_preset(
        name, 14.0, 20.0,
        {{"CBD", 0.01, 0.5, 3.0},
         {"SD", 0.14, 1.5, 1.5},
         {"UE", 0.45, 2.5, 1.0},
         {"EC", 0.40, 2.5, 0.8}},
        6000, 2400, 1386, 5000);
  }
  if (name == "bangalore-mini") {
    return make_city_preset(
        name, 9.0, 9.0,
        {{"CBD", 0.05, 1.0, 8.0},
         {"SD", 0.15, 2.0, 3.0},
         {"UE", 0.50, 3.0, 0.5},
         {"EC", 0.30, 3.0, 0.3}},
        2000, 800, 189, 2500);
  }
  throw ValidationError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"star",     "mesh",         "nyc-like",     "atlanta-like",
          "bangalore-like", "nyc-mini", "atlanta-mini", "bangalore-mini"};
}

GeneratedScenario generate_preset(const std::string& name, uint64_t seed,
                                  int num_trajectories_override,
                                  int num_stations_override) {
  Preset preset = preset_by_name(name);
  preset.city.seed = seed;
  preset.network.seed = seed;
  const int m = num_trajectories_override > 0 ? num_trajectories_override
                                              : preset.num_trajectories;
  if (num_stations_override > 0) {
    preset.network.num_stations = num_stations_override;
  }
  if (preset.topology == "star") {
    return generate_star(m, preset.network.num_stations, seed);
  }
  if (preset.topology == "mesh") {
    return generate_mesh(m, preset.network.num_stations, seed);
  }
  GeneratedScenario scenario =
      generate_scenario(preset.city, preset.network, m);
  return scenario;
}

}  // namespace trajplan
