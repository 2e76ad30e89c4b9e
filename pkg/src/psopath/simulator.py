"""Run loop: initialize, sweep the particles, update bests, test convergence."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .environment import Environment, MovePolicy, apply_move, contains_free
from .errors import InvalidInputError, ScenarioError
from .rng import RandomSource
from .swarm import (
    DEFAULT_SPREAD,
    PsoParams,
    Swarm,
    Uniform,
    Vec2,
    init_swarm,
    update_global_best,
    update_personal_best,
    update_velocity,
)

DEFAULT_EPSILON = 1.0
DEFAULT_MAX_ITERATIONS = 500
MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class StopRules:
    epsilon: float = DEFAULT_EPSILON
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not math.isfinite(self.epsilon) or self.epsilon <= 0:
            raise InvalidInputError(f"epsilon must be finite and > 0, got {self.epsilon}")
        if isinstance(self.max_iterations, bool) or not isinstance(self.max_iterations, int):
            raise InvalidInputError("max_iterations must be an integer")
        if self.max_iterations < 1:
            raise InvalidInputError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass(frozen=True)
class Scenario:
    environment: Environment
    start: Vec2
    target: Vec2
    params: PsoParams
    policy: MovePolicy = field(default_factory=MovePolicy)
    stop: StopRules = field(default_factory=StopRules)
    seed: int = 0
    spread: float = DEFAULT_SPREAD

    def __post_init__(self):
        object.__setattr__(self, "start", Vec2(*self.start))
        object.__setattr__(self, "target", Vec2(*self.target))

    def validate(self) -> None:
        """Raise ScenarioError if the start or target is not a free point."""
        if not 0 <= self.seed <= MAX_SEED:
            raise ScenarioError("must be a 64-bit unsigned integer", "seed")
        if not math.isfinite(self.spread) or self.spread < 0:
            raise ScenarioError("must be finite and >= 0", "spread")
        for name in ("start", "target"):
            point = getattr(self, name)
            if not point.is_finite():
                raise ScenarioError("must be finite", name)
            if not contains_free(self.environment, point):
                raise ScenarioError(
                    f"{tuple(point)} is not in free space (outside bounds or inside an obstacle)",
                    name,
                )


@dataclass(frozen=True)
class RunResult:
    converged: bool
    steps: int
    trace: tuple[tuple[Vec2, ...], ...]
    gbest_path: tuple[Vec2, ...]
    error_series: tuple[float, ...]
    seed: int
    epsilon: float
    target: Vec2
    start: Vec2
    environment: Environment

    @property
    def final_error(self) -> float:
        return self.error_series[-1]


def step(swarm: Swarm, scenario: Scenario, rng: Uniform) -> Swarm:
    """One synchronous iteration over all particles, in index order.

    The global best is held fixed during the sweep and refreshed once at
    the end. Consumes exactly 2 draws per particle.
    """
    env, params, policy, target = scenario.environment, scenario.params, scenario.policy, scenario.target
    gbest = swarm.global_best_position
    moved = []
    for p in swarm.particles:
        v = update_velocity(p, gbest, params, rng)
        p = apply_move(env, p, v, policy)
        moved.append(update_personal_best(p, target))
    return update_global_best(swarm._replace(particles=tuple(moved)))


def distance_to_target(swarm: Swarm) -> float:
    return math.sqrt(swarm.global_best_fitness)


def converged(swarm: Swarm, target: Vec2, epsilon: float) -> bool:
    if not epsilon > 0:
        raise InvalidInputError(f"epsilon must be > 0, got {epsilon}")
    g = swarm.global_best_position
    dx = target[0] - g[0]
    dy = target[1] - g[1]
    return math.sqrt(dx * dx + dy * dy) <= epsilon


def run(scenario: Scenario, rng: RandomSource | None = None) -> RunResult:
    """Execute a scenario to convergence or ``max_iterations``.

    Iteration 0 is the freshly initialized swarm. ``rng`` defaults to a
    fresh source seeded with ``scenario.seed``; passing one in is only
    useful for inspecting its draw count afterwards.
    """
    scenario.validate()
    if rng is None:
        rng = RandomSource(scenario.seed)
    env, target = scenario.environment, scenario.target
    swarm = init_swarm(
        scenario.params, scenario.start, target, rng, scenario.spread,
        is_free=lambda p: contains_free(env, p),
    )
    trace = [tuple(p.position for p in swarm.particles)]
    gbest_path = [swarm.global_best_position]
    errors = [distance_to_target(swarm)]

    steps = 0
    done = converged(swarm, target, scenario.stop.epsilon)
    while not done and steps < scenario.stop.max_iterations:
        swarm = step(swarm, scenario, rng)
        steps += 1
        trace.append(tuple(p.position for p in swarm.particles))
        gbest_path.append(swarm.global_best_position)
        errors.append(distance_to_target(swarm))
        done = converged(swarm, target, scenario.stop.epsilon)

    return RunResult(
        converged=done,
        steps=steps,
        trace=tuple(trace),
        gbest_path=tuple(gbest_path),
        error_series=tuple(errors),
        seed=scenario.seed,
        epsilon=scenario.stop.epsilon,
        target=target,
        start=scenario.start,
        environment=env,
    )


def extract_path(result: RunResult) -> list[Vec2]:
    """Global-best path with consecutive repeats collapsed."""
    path: list[Vec2] = []
    for point in result.gbest_path:
        if not path or path[-1] != point:
            path.append(point)
    return path
