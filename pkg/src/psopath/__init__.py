"""Particle swarm path planning in a bounded 2D space with rectangular obstacles."""

from .environment import (
    CollisionMode,
    Environment,
    MovePolicy,
    OnReject,
    Rect,
    apply_move,
    contains_free,
    inflate,
    segment_blocked,
)
from .errors import (
    InvalidInputError,
    InvalidStateError,
    PlacementError,
    PsoPathError,
    ScenarioError,
    ScenarioSyntaxError,
)
from .reporting import ReplicateReport, aggregate, emit_plots, error_series_csv
from .rng import RandomSource
from .scenario_io import parse_scenario, reference_scenario, serialize_result, serialize_scenario
from .simulator import RunResult, Scenario, StopRules, converged, extract_path, run, step
from .swarm import (
    Particle,
    PsoParams,
    Swarm,
    Vec2,
    fitness,
    init_swarm,
    propose_position,
    update_global_best,
    update_personal_best,
    update_velocity,
)

__version__ = "0.1.0"

__all__ = [
    "CollisionMode",
    "Environment",
    "InvalidInputError",
    "InvalidStateError",
    "MovePolicy",
    "OnReject",
    "Particle",
    "PlacementError",
    "PsoParams",
    "PsoPathError",
    "RandomSource",
    "Rect",
    "ReplicateReport",
    "RunResult",
    "Scenario",
    "ScenarioError",
    "ScenarioSyntaxError",
    "StopRules",
    "Swarm",
    "Vec2",
    "aggregate",
    "apply_move",
    "contains_free",
    "converged",
    "emit_plots",
    "error_series_csv",
    "extract_path",
    "fitness",
    "inflate",
    "init_swarm",
    "parse_scenario",
    "propose_position",
    "reference_scenario",
    "run",
    "segment_blocked",
    "serialize_result",
    "serialize_scenario",
    "step",
    "update_global_best",
    "update_personal_best",
    "update_velocity",
]
