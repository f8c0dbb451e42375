#include "trajplan/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "trajplan/errors.hpp"
#include "trajplan/rng.hpp"

namespace trajplan {

using nlohmann::json;

namespace {

json parse_line(const std::string& line, size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("line " + std::to_string(line_no) + ": not a JSON object");
  }
  return j;
}

json city_to_json(const CityConfig& c) {
  json layers = json::array();
  for (const LayerConfig& l : c.layers) {
    layers.push_back({{"name", l.name},
                      {"area_fraction", l.area_fraction},
                      {"home_density", l.home_density},
                      {"office_density", l.office_density}});
  }
  return {{"seed", c.seed},
          {"width_km", c.width_km},
          {"height_km", c.height_km},
          {"layers", layers},
          {"num_homes", c.num_homes},
          {"num_offices", c.num_offices},
          {"grid_spacing_km", c.grid_spacing_km},
          {"road_speed_kmph", c.road_speed_kmph},
          {"sample_step_km", c.sample_step_km},
          {"commute_window_h", c.commute_window_h}};
}

json network_to_json(const NetworkConfig& n) {
  auto range = [](const ThroughputRange& r) {
    return json::array({r.lo_kbps, r.hi_kbps});
  };
  return {{"seed", n.seed},
          {"frac_2g", n.frac_2g},
          {"frac_congested", n.frac_congested},
          {"congested_2g_kbps", range(n.congested_2g)},
          {"clear_2g_kbps", range(n.clear_2g)},
          {"congested_3g_kbps", range(n.congested_3g)},
          {"clear_3g_kbps", range(n.clear_3g)},
          {"station_density_scale", n.station_density_scale},
          {"num_stations", n.num_stations},
          {"cell_km", n.cell_km}};
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ValidationError(std::string("invalid value for config key '") +
                            key + "'");
    }
  }
}

void read_range(const json& j, const char* key, ThroughputRange& out) {
  if (auto it = j.find(key); it != j.end()) {
    if (!it->is_array() || it->size() != 2) {
      throw ValidationError(std::string("config key '") + key +
                            "' must be [lo, hi]");
    }
    out.lo_kbps = (*it)[0].get<double>();
    out.hi_kbps = (*it)[1].get<double>();
  }
}

void reject_unknown_keys(const json& j,
                         const std::vector<std::string>& known,
                         const std::string& section) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ValidationError("unknown config key '" + section + "." +
                            it.key() + "'");
    }
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

TraceData parse_trace(std::istream& in) {
  std::vector<Trajectory> raw;
  std::vector<std::vector<std::string>> visit_names;
  std::unordered_set<int64_t> seen_ids;
  std::unordered_set<std::string> name_set;

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, line_no);
    Trajectory traj;
    std::vector<std::string> names;
    try {
      traj.id = j.at("id").get<int64_t>();
      for (const json& v : j.at("visits")) {
        VisitRecord rec;
        names.push_back(v.at("bs").get<std::string>());
        rec.duration_ms = v.at("duration_ms").get<int64_t>();
        rec.throughput_kbps = v.at("throughput_kbps").get<double>();
        traj.visits.push_back(rec);
      }
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen_ids.insert(traj.id).second) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": duplicate trajectory id " + std::to_string(traj.id));
    }
    for (const std::string& n : names) name_set.insert(n);
    raw.push_back(std::move(traj));
    visit_names.push_back(std::move(names));
  }

  TraceData data;
  data.station_names.assign(name_set.begin(), name_set.end());
  std::sort(data.station_names.begin(), data.station_names.end());
  std::unordered_map<std::string, StationId> dense;
  for (size_t i = 0; i < data.station_names.size(); ++i) {
    dense[data.station_names[i]] = static_cast<StationId>(i);
  }
  for (size_t t = 0; t < raw.size(); ++t) {
    for (size_t v = 0; v < raw[t].visits.size(); ++v) {
      raw[t].visits[v].station = dense[visit_names[t][v]];
    }
  }
  data.trajectories = std::move(raw);
  return data;
}

void parse_station_sidecar(std::istream& in, TraceData& data) {
  std::unordered_map<std::string, StationId> dense;
  for (size_t i = 0; i < data.station_names.size(); ++i) {
    dense[data.station_names[i]] = static_cast<StationId>(i);
  }
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = parse_line(line, line_no);
    try {
      const std::string name = j.at("bs").get<std::string>();
      auto it = dense.find(name);
      if (it == dense.end()) continue;  // station not on any trajectory
      StationInfo st;
      st.id = it->second;
      st.x_km = j.value("x_km", 0.0);
      st.y_km = j.value("y_km", 0.0);
      st.is_3g = j.value("technology", std::string("2G")) == "3G";
      st.congested = j.value("congested", false);
      st.throughput_kbps = j.at("throughput_kbps").get<double>();
      data.stations.push_back(st);
    } catch (const json::exception& e) {
      throw ParseError("stations line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  std::sort(data.stations.begin(), data.stations.end(),
            [](const StationInfo& a, const StationInfo& b) { return a.id < b.id; });
}

TraceData load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);
  TraceData data = parse_trace(in);

  const std::string base =
      path.size() > 12 && path.ends_with(".trace.jsonl")
          ? path.substr(0, path.size() - 12)
          : std::string();
  if (!base.empty()) {
    std::ifstream side(base + ".stations.jsonl");
    if (side) parse_station_sidecar(side, data);
  }
  return data;
}

std::string station_name(StationId id, int num_stations) {
  int width = 1;
  for (int v = num_stations - 1; v >= 10; v /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "S%0*d", width, id);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write: " + tmp);
    out << content;
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("rename failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string config_hash(const CityConfig& city, const NetworkConfig& network) {
  const std::string canonical =
      json({{"city", city_to_json(city)}, {"network", network_to_json(network)}})
          .dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

void write_scenario(const GeneratedScenario& scenario,
                    const std::string& out_prefix) {
  const int n = static_cast<int>(scenario.stations.size());

  std::string trace;
  for (size_t t = 0; t < scenario.trajectories.size(); ++t) {
    const Trajectory& traj = scenario.trajectories[t];
    json visits = json::array();
    for (const VisitRecord& v : traj.visits) {
      visits.push_back({{"bs", station_name(v.station, n)},
                        {"duration_ms", v.duration_ms},
                        {"throughput_kbps", v.throughput_kbps}});
    }
    json line = {{"id", traj.id}, {"visits", visits}};
    if (t < scenario.departure_min.size()) {
      line["departure_min"] = scenario.departure_min[t];
    }
    trace += line.dump();
    trace += '\n';
  }
  write_file_atomic(out_prefix + ".trace.jsonl", trace);

  std::string side;
  for (const StationInfo& st : scenario.stations) {
    side += json({{"bs", station_name(st.id, n)},
                  {"x_km", st.x_km},
                  {"y_km", st.y_km},
                  {"technology", st.is_3g ? "3G" : "2G"},
                  {"congested", st.congested},
                  {"throughput_kbps", st.throughput_kbps}})
                .dump();
    side += '\n';
  }
  write_file_atomic(out_prefix + ".stations.jsonl", side);

  json ids = json::array();
  for (const StationInfo& st : scenario.stations) {
    ids.push_back(station_name(st.id, n));
  }
  const json manifest = {
      {"tool", "trajplan"},
      {"version", "0.1.0"},
      {"topology", scenario.topology},
      {"seed", scenario.city.seed},
      {"num_trajectories", scenario.trajectories.size()},
      {"num_stations", scenario.stations.size()},
      {"config_hash", config_hash(scenario.city, scenario.network)},
      {"city", city_to_json(scenario.city)},
      {"network", network_to_json(scenario.network)},
      {"station_ids", ids}};
  write_file_atomic(out_prefix + ".manifest.json", manifest.dump(2) + "\n");
}

void write_solution_file(const std::string& path,
                         const std::vector<std::string>& station_names) {
  std::vector<std::string> sorted = station_names;
  std::sort(sorted.begin(), sorted.end());
  std::string content;
  for (const std::string& name : sorted) {
    content += name;
    content += '\n';
  }
  write_file_atomic(path, content);
}

std::pair<CityConfig, NetworkConfig> parse_config_file(
    const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("config file is not a JSON object: " + path);
  }
  reject_unknown_keys(j, {"city", "network"}, "");

  CityConfig city;
  NetworkConfig network;
  if (auto it = j.find("city"); it != j.end()) {
    const json& c = *it;
    reject_unknown_keys(c,
                        {"seed", "width_km", "height_km", "layers",
                         "num_homes", "num_offices", "grid_spacing_km",
                         "road_speed_kmph", "sample_step_km",
                         "commute_window_h"},
                        "city");
    read_field(c, "seed", city.seed);
    read_field(c, "width_km", city.width_km);
    read_field(c, "height_km", city.height_km);
    read_field(c, "num_homes", city.num_homes);
    read_field(c, "num_offices", city.num_offices);
    read_field(c, "grid_spacing_km", city.grid_spacing_km);
    read_field(c, "road_speed_kmph", city.road_speed_kmph);
    read_field(c, "sample_step_km", city.sample_step_km);
    read_field(c, "commute_window_h", city.commute_window_h);
    if (auto layers = c.find("layers"); layers != c.end()) {
      city.layers.clear();
      for (const json& l : *layers) {
        reject_unknown_keys(
            l, {"name", "area_fraction", "home_density", "office_density"},
            "city.layers");
        LayerConfig layer;
        read_field(l, "name", layer.name);
        read_field(l, "area_fraction", layer.area_fraction);
        read_field(l, "home_density", layer.home_density);
        read_field(l, "office_density", layer.office_density);
        city.layers.push_back(std::move(layer));
      }
    }
  }
  if (auto it = j.find("network"); it != j.end()) {
    const json& nw = *it;
    reject_unknown_keys(nw,
                        {"seed", "frac_2g", "frac_congested",
                         "congested_2g_kbps", "clear_2g_kbps",
                         "congested_3g_kbps", "clear_3g_kbps",
                         "station_density_scale", "num_stations", "cell_km"},
                        "network");
    read_field(nw, "seed", network.seed);
    read_field(nw, "frac_2g", network.frac_2g);
    read_field(nw, "frac_congested", network.frac_congested);
    read_range(nw, "congested_2g_kbps", network.congested_2g);
    read_range(nw, "clear_2g_kbps", network.clear_2g);
    read_range(nw, "congested_3g_kbps", network.congested_3g);
    read_range(nw, "clear_3g_kbps", network.clear_3g);
    read_field(nw, "station_density_scale", network.station_density_scale);
    read_field(nw, "num_stations", network.num_stations);
    read_field(nw, "cell_km", network.cell_km);
  }
  return {std::move(city), std::move(network)};
}

}  // namespace trajplan
