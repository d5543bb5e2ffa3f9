"""Multi-objective ergodic search: spectral coverage planning over weighted
information maps, with warm-started lattice exploration of the weight simplex.

The heavy per-step kernels (rollouts and their adjoints) run through a
compiled extension when available; set MOESEARCH_BACKEND=python or =compiled
to force a side.
"""

from ._backend import BACKEND
from .dynamics import (
    DIFFERENTIAL_DRIVE,
    SINGLE_INTEGRATOR,
    RobotModel,
    Trajectory,
    differential_drive,
    project_controls,
    rollout,
    single_integrator,
)
from .ergopt import EpisodeTrace, ErgOptConfig, ergodic_search, objective_gradient, scalarized_objective
from .fourier import (
    InfoMap,
    SpectralBasis,
    TrajectoryCoefficients,
    build_basis,
    ergodic_metric,
    infomap_from_grid,
    infomap_from_mixture,
    load_map_csv,
    load_map_json,
    map_coefficients,
    trajectory_coefficients,
    uniform_map,
)
from .metrics import ParetoArchive, dominates, hypervolume, map_distance, pareto_filter
from .moes import (
    AffineWeightSpace,
    MapFamily,
    PlannerConfig,
    SolutionRecord,
    adaptive_neighbors,
    basic_neighbors,
    build_affine_space,
    ergodic_vector,
    lattice_weights,
    naive_scalarization,
    scalarize,
    sles,
    space_from_edges,
    validate_weight,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DIFFERENTIAL_DRIVE",
    "SINGLE_INTEGRATOR",
    "AffineWeightSpace",
    "EpisodeTrace",
    "ErgOptConfig",
    "InfoMap",
    "MapFamily",
    "ParetoArchive",
    "PlannerConfig",
    "RobotModel",
    "SolutionRecord",
    "SpectralBasis",
    "Trajectory",
    "TrajectoryCoefficients",
    "adaptive_neighbors",
    "basic_neighbors",
    "build_affine_space",
    "build_basis",
    "differential_drive",
    "dominates",
    "ergodic_metric",
    "ergodic_search",
    "ergodic_vector",
    "hypervolume",
    "infomap_from_grid",
    "infomap_from_mixture",
    "lattice_weights",
    "load_map_csv",
    "load_map_json",
    "map_coefficients",
    "map_distance",
    "naive_scalarization",
    "objective_gradient",
    "pareto_filter",
    "project_controls",
    "rollout",
    "scalarize",
    "scalarized_objective",
    "single_integrator",
    "sles",
    "space_from_edges",
    "trajectory_coefficients",
    "uniform_map",
    "validate_weight",
]
