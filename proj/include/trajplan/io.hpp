#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trajplan/generator.hpp"
#include "trajplan/model.hpp"

namespace trajplan {

// Trace files are line-delimited JSON, one trajectory per line:
//   {"id": 7, "visits": [{"bs": "S0042", "duration_ms": 1500,
//                         "throughput_kbps": 120.5}, ...]}
// Station ids are opaque strings in files; internally they map to dense
// integer ids in lexicographic name order. Unknown fields are ignored.
struct TraceData {
  std::vector<std::string> station_names;  // dense id -> name, lex sorted
  std::vector<Trajectory> trajectories;    // visits use dense ids
  std::vector<StationInfo> stations;       // sidecar, may be empty
};

TraceData parse_trace(std::istream& in);
TraceData load_trace_file(const std::string& path);

// Optional sidecar: {"bs": "...", "x_km": .., "y_km": .., "technology":
// "2G"|"3G", "congested": bool, "throughput_kbps": ..} per line.
void parse_station_sidecar(std::istream& in, TraceData& data);

// Scenario files: <prefix>.trace.jsonl, <prefix>.stations.jsonl and
// <prefix>.manifest.json. Writes are atomic (temp file then rename).
void write_scenario(const GeneratedScenario& scenario,
                    const std::string& out_prefix);

// Station name for generated scenarios: zero-padded so lexicographic
// order equals numeric order.
std::string station_name(StationId id, int num_stations);

void write_solution_file(const std::string& path,
                         const std::vector<std::string>& station_names);

// Atomic whole-file write; throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a hash of the canonical config serialization, hex encoded.
std::string config_hash(const CityConfig& city, const NetworkConfig& network);

// Declarative config file (JSON tree with "city" and "network" sections);
// unknown keys are rejected with the offending key named.
std::pair<CityConfig, NetworkConfig> parse_config_file(
    const std::string& path);

// Locale-independent shortest round-trip formatting ('.' decimal point).
std::string format_double(double value);

}  // namespace trajplan
