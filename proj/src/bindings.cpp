#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trajplan/errors.hpp"
#include "trajplan/evaluation.hpp"
#include "trajplan/generator.hpp"
#include "trajplan/hypergraph.hpp"
#include "trajplan/io.hpp"
#include "trajplan/model.hpp"
#include "trajplan/solvers.hpp"

namespace py = pybind11;
using namespace trajplan;

namespace {

SolverReport solve_named(const ProblemInstance& inst, const std::string& algo,
                         uint64_t exact_cap) {
  const auto algorithm = parse_algorithm(algo);
  if (!algorithm) throw ValidationError("unknown algorithm: " + algo);
  switch (*algorithm) {
    case Algorithm::SimG: return solve_simg(inst);
    case Algorithm::IncG: return solve_incg(inst);
    case Algorithm::DecG: return solve_decg(inst);
    case Algorithm::Exact: return solve_exact(inst, exact_cap);
  }
  throw ValidationError("unknown algorithm: " + algo);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trajectory-aware base-station upgrade planning";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<CapExceededError>(m, "CapExceededError");
  py::register_exception<IoError>(m, "IoError");

  py::class_<VisitRecord>(m, "VisitRecord")
      .def(py::init<>())
      .def(py::init([](StationId station, int64_t duration_ms,
                       double throughput_kbps) {
             return VisitRecord{station, duration_ms, throughput_kbps};
           }),
           py::arg("station"), py::arg("duration_ms"),
           py::arg("throughput_kbps"))
      .def_readwrite("station", &VisitRecord::station)
      .def_readwrite("duration_ms", &VisitRecord::duration_ms)
      .def_readwrite("throughput_kbps", &VisitRecord::throughput_kbps);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<>())
      .def(py::init([](int64_t id, std::vector<VisitRecord> visits) {
             return Trajectory{id, std::move(visits)};
           }),
           py::arg("id"), py::arg("visits"))
      .def_readwrite("id", &Trajectory::id)
      .def_readwrite("visits", &Trajectory::visits);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_readonly("stations", &ProblemInstance::stations)
      .def_readonly("tau", &ProblemInstance::tau)
      .def_readonly("gamma", &ProblemInstance::gamma)
      .def_readonly("budget", &ProblemInstance::budget)
      .def_readonly("d_max", &ProblemInstance::d_max)
      .def_property_readonly("num_stations", &ProblemInstance::num_stations)
      .def_property_readonly("num_trajectories",
                             &ProblemInstance::num_trajectories);

  py::class_<UpgradeSolution>(m, "UpgradeSolution")
      .def_readonly("upgraded", &UpgradeSolution::upgraded)
      .def_readonly("per_trajectory_utility",
                    &UpgradeSolution::per_trajectory_utility)
      .def_readonly("satisfied_count", &UpgradeSolution::satisfied_count)
      .def_readonly("satisfied_fraction", &UpgradeSolution::satisfied_fraction);

  py::class_<SolverReport>(m, "SolverReport")
      .def_readonly("solution", &SolverReport::solution)
      .def_property_readonly(
          "algorithm",
          [](const SolverReport& r) { return algorithm_name(r.algorithm); })
      .def_readonly("selection_order", &SolverReport::selection_order)
      .def_readonly("pruned_trajectories", &SolverReport::pruned_trajectories)
      .def_readonly("elapsed_ms", &SolverReport::elapsed_ms);

  py::class_<HyperGraph>(m, "HyperGraph")
      .def_readonly("degree", &HyperGraph::degree)
      .def_readonly("bottleneck_weight", &HyperGraph::bottleneck_weight);

  py::class_<StationInfo>(m, "StationInfo")
      .def_readonly("id", &StationInfo::id)
      .def_readonly("x_km", &StationInfo::x_km)
      .def_readonly("y_km", &StationInfo::y_km)
      .def_readonly("is_3g", &StationInfo::is_3g)
      .def_readonly("congested", &StationInfo::congested)
      .def_readonly("throughput_kbps", &StationInfo::throughput_kbps);

  py::class_<GeneratedScenario>(m, "GeneratedScenario")
      .def_readonly("topology", &GeneratedScenario::topology)
      .def_readonly("stations", &GeneratedScenario::stations)
      .def_readonly("trajectories", &GeneratedScenario::trajectories);

  m.def(
      "build_instance",
      [](const std::vector<Trajectory>& trajectories, double tau, double gamma,
         int budget) { return build_instance(trajectories, tau, gamma, budget); },
      py::arg("trajectories"), py::arg("tau"), py::arg("gamma"),
      py::arg("budget"));
  m.def("with_params", &with_params, py::arg("instance"), py::arg("gamma"),
        py::arg("budget"));
  m.def(
      "evaluate_solution",
      [](const ProblemInstance& inst, const std::vector<StationId>& upgraded) {
        return evaluate_solution(inst, upgraded);
      },
      py::arg("instance"), py::arg("upgraded"));
  m.def("build_hypergraph", &build_hypergraph, py::arg("instance"));
  m.def("prune_infeasible", &prune_infeasible, py::arg("instance"));

  m.def("solve", &solve_named, py::arg("instance"), py::arg("algorithm"),
        py::arg("exact_cap") = kDefaultEnumerationCap);
  m.def(
      "solve_simg",
      [](const ProblemInstance& inst, std::optional<int> budget) {
        return solve_simg(inst, budget);
      },
      py::arg("instance"), py::arg("budget") = std::nullopt);
  m.def(
      "solve_incg",
      [](const ProblemInstance& inst,
         const std::vector<StationId>& initial_upgraded,
         std::optional<int> budget) {
        return solve_incg(inst, initial_upgraded, budget);
      },
      py::arg("instance"),
      py::arg("initial_upgraded") = std::vector<StationId>{},
      py::arg("budget") = std::nullopt);
  m.def(
      "solve_decg",
      [](const ProblemInstance& inst,
         const std::vector<StationId>& frozen_removed,
         std::optional<int> budget) {
        return solve_decg(inst, frozen_removed, budget);
      },
      py::arg("instance"), py::arg("frozen_removed") = std::vector<StationId>{},
      py::arg("budget") = std::nullopt);
  m.def(
      "solve_exact",
      [](const ProblemInstance& inst, uint64_t enumeration_cap,
         std::optional<int> budget) {
        return solve_exact(inst, enumeration_cap, budget);
      },
      py::arg("instance"), py::arg("enumeration_cap") = kDefaultEnumerationCap,
      py::arg("budget") = std::nullopt);

  m.def("preset_names", &preset_names);
  m.def("generate_preset", &generate_preset, py::arg("name"), py::arg("seed"),
        py::arg("num_trajectories") = 0, py::arg("num_stations") = 0);
  m.def("write_scenario", &write_scenario, py::arg("scenario"),
        py::arg("out_prefix"));
  m.def(
      "load_trace_file",
      [](const std::string& path) {
        const TraceData data = load_trace_file(path);
        return py::make_tuple(data.station_names, data.trajectories);
      },
      py::arg("path"));

  m.attr("DEFAULT_TAU_KBPS") = 750.0;
  m.attr("DEFAULT_ENUMERATION_CAP") = kDefaultEnumerationCap;
}
