"""Scenario documents (JSON) and result serialization.

A scenario document looks like::

    {
      "space": {"bounds": [-100, -100, 100, 100]},
      "start": [-70, 80],
      "target": [70, -70],
      "obstacles": [[-30, 15, -26, 50]],
      "pso": {"n_particles": 50, "w": 0.8, "c1": 0.65, "c2": 0.9, "v_max": "unlimited"},
      "policy": {"collision_mode": "segment_reject", "on_reject": "keep_velocity", "wall_margin": 0},
      "stop": {"epsilon": 1.0, "max_iterations": 500},
      "seed": 42,
      "spread": 15
    }

Rectangles are ``[min_x, min_y, max_x, max_y]``. ``space``, ``policy``,
``stop``, ``spread`` and ``pso.v_max`` may be omitted. Unknown keys are
rejected.
"""

from __future__ import annotations

import json
import math
from importlib import resources

from .environment import DEFAULT_BOUNDS, CollisionMode, Environment, MovePolicy, OnReject, Rect
from .errors import InvalidInputError, ScenarioError, ScenarioSyntaxError
from .simulator import MAX_SEED, RunResult, Scenario, StopRules
from .swarm import DEFAULT_SPREAD, PsoParams, Vec2

REFERENCE_SCENARIO = "reference_scenario.json"

_TOP_KEYS = {"space", "start", "target", "obstacles", "pso", "policy", "stop", "seed", "spread"}
_REQUIRED_TOP = ("start", "target", "obstacles", "pso", "seed")
_PSO_KEYS = {"n_particles", "w", "c1", "c2", "v_max"}
_POLICY_KEYS = {"collision_mode", "on_reject", "wall_margin"}
_STOP_KEYS = {"epsilon", "max_iterations"}
_SPACE_KEYS = {"bounds"}

RESULT_FORMATS = ("summary", "trace_csv", "path_csv")


def _check_keys(obj, allowed: set[str], where: str, required=()) -> None:
    if not isinstance(obj, dict):
        raise ScenarioError("expected an object", where or None)
    for key in obj:
        if key not in allowed:
            raise ScenarioError(f"unknown field {key!r}", where or None)
    for key in required:
        if key not in obj:
            raise ScenarioError("missing required field", f"{where}.{key}" if where else key)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"expected a number, got {value!r}", where)
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioError("must be finite", where)
    return value


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"expected an integer, got {value!r}", where)
    return value


def _numbers(value, n: int, where: str) -> list[float]:
    if not isinstance(value, list) or len(value) != n:
        raise ScenarioError(f"expected a list of {n} numbers", where)
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _rect(value, where: str) -> Rect:
    min_x, min_y, max_x, max_y = _numbers(value, 4, where)
    if min_x > max_x or min_y > max_y:
        raise ScenarioError(
            "max corner is smaller than min corner (need min_x <= max_x and min_y <= max_y)", where
        )
    return Rect.from_bounds(min_x, min_y, max_x, max_y)


def _choice(value, enum, where: str):
    try:
        return enum(value)
    except ValueError:
        options = ", ".join(m.value for m in enum)
        raise ScenarioError(f"expected one of {options}, got {value!r}", where) from None


def _v_max(value) -> float:
    if value is None or value == "unlimited":
        return math.inf
    v = _number(value, "pso.v_max")
    if v <= 0:
        raise ScenarioError("must be > 0 or \"unlimited\"", "pso.v_max")
    return v


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document."""
    doc = _loads(text)
    _check_keys(doc, _TOP_KEYS, "", _REQUIRED_TOP)

    space = doc.get("space", {})
    _check_keys(space, _SPACE_KEYS, "space")
    bounds = _rect(space["bounds"], "space.bounds") if "bounds" in space else DEFAULT_BOUNDS
    if not (bounds.width > 0 and bounds.height > 0):
        raise ScenarioError("bounds must have positive area", "space.bounds")

    if not isinstance(doc["obstacles"], list):
        raise ScenarioError("expected a list of rectangles", "obstacles")
    obstacles = tuple(_rect(r, f"obstacles[{i}]") for i, r in enumerate(doc["obstacles"]))

    pso = doc["pso"]
    _check_keys(pso, _PSO_KEYS, "pso", ("n_particles", "w", "c1", "c2"))
    n = _integer(pso["n_particles"], "pso.n_particles")
    if n < 1:
        raise ScenarioError("must be >= 1", "pso.n_particles")
    coeffs = {}
    for key in ("w", "c1", "c2"):
        coeffs[key] = _number(pso[key], f"pso.{key}")
        if coeffs[key] < 0:
            raise ScenarioError("must be >= 0", f"pso.{key}")
    params = PsoParams(n, v_max=_v_max(pso.get("v_max")), **coeffs)

    policy_doc = doc.get("policy", {})
    _check_keys(policy_doc, _POLICY_KEYS, "policy")
    policy = MovePolicy(
        _choice(policy_doc.get("collision_mode", CollisionMode.SEGMENT_REJECT.value), CollisionMode,
                "policy.collision_mode"),
        _choice(policy_doc.get("on_reject", OnReject.KEEP_VELOCITY.value), OnReject, "policy.on_reject"),
    )
    margin = _number(policy_doc.get("wall_margin", 0.0), "policy.wall_margin")
    if margin < 0:
        raise ScenarioError("must be >= 0", "policy.wall_margin")

    stop_doc = doc.get("stop", {})
    _check_keys(stop_doc, _STOP_KEYS, "stop")
    epsilon = _number(stop_doc.get("epsilon", 1.0), "stop.epsilon")
    if epsilon <= 0:
        raise ScenarioError("must be > 0", "stop.epsilon")
    max_iter = _integer(stop_doc.get("max_iterations", 500), "stop.max_iterations")
    if max_iter < 1:
        raise ScenarioError("must be >= 1", "stop.max_iterations")

    seed = _integer(doc["seed"], "seed")
    if not 0 <= seed <= MAX_SEED:
        raise ScenarioError("must be a 64-bit unsigned integer", "seed")
    spread = _number(doc.get("spread", DEFAULT_SPREAD), "spread")
    if spread < 0:
        raise ScenarioError("must be >= 0", "spread")

    scenario = Scenario(
        environment=Environment(bounds, obstacles, margin),
        start=Vec2(*_numbers(doc["start"], 2, "start")),
        target=Vec2(*_numbers(doc["target"], 2, "target")),
        params=params,
        policy=policy,
        stop=StopRules(epsilon, max_iter),
        seed=seed,
        spread=spread,
    )
    scenario.validate()
    return scenario


def scenario_to_dict(scenario: Scenario) -> dict:
    env, params = scenario.environment, scenario.params
    return {
        "space": {"bounds": env.bounds.as_list()},
        "start": list(scenario.start),
        "target": list(scenario.target),
        "obstacles": [r.as_list() for r in env.obstacles],
        "pso": {
            "n_particles": params.n_particles,
            "w": params.w,
            "c1": params.c1,
            "c2": params.c2,
            "v_max": params.v_max if params.speed_limited else "unlimited",
        },
        "policy": {
            "collision_mode": scenario.policy.collision_mode.value,
            "on_reject": scenario.policy.on_reject.value,
            "wall_margin": env.wall_margin,
        },
        "stop": {"epsilon": scenario.stop.epsilon, "max_iterations": scenario.stop.max_iterations},
        "seed": scenario.seed,
        "spread": scenario.spread,
    }


def serialize_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


def reference_scenario_text() -> str:
    return resources.files("psopath").joinpath(REFERENCE_SCENARIO).read_text(encoding="utf-8")


def reference_scenario() -> Scenario:
    return parse_scenario(reference_scenario_text())


def fmt6(value: float) -> str:
    text = f"{value:.6f}"
    # no "-0.000000"
    return "0.000000" if text == "-0.000000" else text


def summary_text(result: RunResult) -> str:
    return (
        f"converged={'true' if result.converged else 'false'}\n"
        f"steps={result.steps}\n"
        f"final_error={fmt6(result.final_error)}\n"
        f"seed={result.seed}\n"
    )


def trace_csv(result: RunResult) -> str:
    lines = ["iteration,particle,x,y"]
    for it, positions in enumerate(result.trace):
        for i, p in enumerate(positions):
            lines.append(f"{it},{i},{fmt6(p.x)},{fmt6(p.y)}")
    return "\n".join(lines) + "\n"


def path_csv(result: RunResult) -> str:
    lines = ["iteration,x,y,error"]
    for it, (p, err) in enumerate(zip(result.gbest_path, result.error_series)):
        lines.append(f"{it},{fmt6(p.x)},{fmt6(p.y)},{fmt6(err)}")
    return "\n".join(lines) + "\n"


def serialize_result(result: RunResult, format: str = "summary") -> str:
    if format == "summary":
        return summary_text(result)
    if format == "trace_csv":
        return trace_csv(result)
    if format == "path_csv":
        return path_csv(result)
    raise InvalidInputError(f"unknown result format {format!r}; expected one of {RESULT_FORMATS}")
