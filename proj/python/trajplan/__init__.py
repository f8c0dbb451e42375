"""Trajectory-aware base-station upgrade planning.

Thin Python surface over the C++ core: build a problem instance from
trajectories, run one of the selection algorithms (simg, incg, decg,
exact) and evaluate upgrade sets.
"""

from trajplan._core import (  # noqa: F401
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_TAU_KBPS,
    CapExceededError,
    GeneratedScenario,
    HyperGraph,
    IoError,
    ParseError,
    ProblemInstance,
    SolverReport,
    StationInfo,
    Trajectory,
    UpgradeSolution,
    ValidationError,
    VisitRecord,
    build_hypergraph,
    build_instance,
    evaluate_solution,
    generate_preset,
    load_trace_file,
    preset_names,
    prune_infeasible,
    solve,
    solve_decg,
    solve_exact,
    solve_incg,
    solve_simg,
    with_params,
    write_scenario,
)

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_TAU_KBPS",
    "CapExceededError",
    "GeneratedScenario",
    "HyperGraph",
    "IoError",
    "ParseError",
    "ProblemInstance",
    "SolverReport",
    "StationInfo",
    "Trajectory",
    "UpgradeSolution",
    "ValidationError",
    "VisitRecord",
    "build_hypergraph",
    "build_instance",
    "evaluate_solution",
    "generate_preset",
    "load_trace_file",
    "preset_names",
    "prune_infeasible",
    "solve",
    "solve_decg",
    "solve_exact",
    "solve_incg",
    "solve_simg",
    "with_params",
    "write_scenario",
]
