"""PSO state and update rules for a 2D swarm.

Everything here is a pure function of its arguments; randomness comes in
through an explicit source object whose ``uniform()`` is called a fixed
number of times per operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol

from .errors import InvalidInputError, InvalidStateError, PlacementError

UNLIMITED = math.inf
DEFAULT_SPREAD = 15.0
MAX_PLACEMENT_ATTEMPTS = 1000


class Uniform(Protocol):
    def uniform(self) -> float: ...


class Vec2(NamedTuple):
    x: float
    y: float

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


class Particle(NamedTuple):
    position: Vec2
    velocity: Vec2
    best_position: Vec2
    best_fitness: float


class Swarm(NamedTuple):
    particles: tuple[Particle, ...]
    global_best_position: Vec2
    global_best_fitness: float


@dataclass(frozen=True)
class PsoParams:
    """Swarm size and velocity-update coefficients.

    ``v_max`` caps the Euclidean norm of every new velocity; ``math.inf``
    (the default) disables the cap.
    """

    n_particles: int
    w: float
    c1: float
    c2: float
    v_max: float = UNLIMITED

    def __post_init__(self):
        if isinstance(self.n_particles, bool) or not isinstance(self.n_particles, int):
            raise InvalidInputError("n_particles must be an integer")
        if self.n_particles < 1:
            raise InvalidInputError(f"n_particles must be >= 1, got {self.n_particles}")
        for name in ("w", "c1", "c2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise InvalidInputError(f"{name} must be finite and >= 0, got {value}")
        if math.isnan(self.v_max) or self.v_max <= 0:
            raise InvalidInputError(f"v_max must be > 0 or unlimited, got {self.v_max}")

    @property
    def speed_limited(self) -> bool:
        return math.isfinite(self.v_max)


def _require_finite(*points: Vec2) -> None:
    for p in points:
        if not (math.isfinite(p[0]) and math.isfinite(p[1])):
            raise InvalidInputError(f"non-finite point {tuple(p)}")


def fitness(position: Vec2, target: Vec2) -> float:
    """Squared Euclidean distance from ``position`` to ``target``."""
    _require_finite(position, target)
    dx = target[0] - position[0]
    dy = target[1] - position[1]
    return dx * dx + dy * dy


def clamp_norm(v: Vec2, limit: float) -> Vec2:
    """Scale ``v`` down to norm ``limit`` if it is longer; direction is kept."""
    if limit == math.inf:
        return v
    speed = math.hypot(v[0], v[1])
    if speed <= limit:
        return v
    scale = limit / speed
    return Vec2(v[0] * scale, v[1] * scale)


def update_velocity(p: Particle, global_best: Vec2, params: PsoParams, rng: Uniform) -> Vec2:
    """Inertia plus attraction to the personal and global bests.

    Draws exactly two numbers, r1 then r2; each is shared by both axes.
    """
    r1 = rng.uniform()
    r2 = rng.uniform()
    x, v, pbest = p.position, p.velocity, p.best_position
    cog = params.c1 * r1
    soc = params.c2 * r2
    vx = params.w * v[0] + cog * (pbest[0] - x[0]) + soc * (global_best[0] - x[0])
    vy = params.w * v[1] + cog * (pbest[1] - x[1]) + soc * (global_best[1] - x[1])
    return clamp_norm(Vec2(vx, vy), params.v_max)


def propose_position(position: Vec2, velocity: Vec2) -> Vec2:
    return Vec2(position[0] + velocity[0], position[1] + velocity[1])


def update_personal_best(p: Particle, target: Vec2) -> Particle:
    """Adopt the current position as personal best only on strict improvement."""
    f = fitness(p.position, target)
    if f < p.best_fitness:
        return p._replace(best_position=p.position, best_fitness=f)
    return p


def _argmin_best(particles: tuple[Particle, ...]) -> int:
    best = 0
    best_f = particles[0].best_fitness
    for i in range(1, len(particles)):
        f = particles[i].best_fitness
        if f < best_f:
            best, best_f = i, f
    return best


def update_global_best(swarm: Swarm) -> Swarm:
    """Point the global best at the lowest personal best (lowest index on ties)."""
    if not swarm.particles:
        raise InvalidStateError("swarm has no particles")
    winner = swarm.particles[_argmin_best(swarm.particles)]
    return swarm._replace(
        global_best_position=winner.best_position,
        global_best_fitness=winner.best_fitness,
    )


def make_swarm(particles) -> Swarm:
    """Build a swarm from particles and compute its global best."""
    particles = tuple(particles)
    if not particles:
        raise InvalidStateError("swarm has no particles")
    winner = particles[_argmin_best(particles)]
    return Swarm(particles, winner.best_position, winner.best_fitness)


def init_swarm(
    params: PsoParams,
    start: Vec2,
    target: Vec2,
    rng: Uniform,
    spread: float = DEFAULT_SPREAD,
    is_free=None,
) -> Swarm:
    """Scatter ``params.n_particles`` particles around ``start``.

    Positions are uniform in the square of half-width ``spread`` centred on
    ``start``. A position rejected by ``is_free`` is redrawn, up to
    MAX_PLACEMENT_ATTEMPTS times per particle. Two draws per attempt.
    Velocities start at zero and personal bests at the initial positions.
    """
    _require_finite(start, target)
    if not math.isfinite(spread) or spread < 0:
        raise InvalidInputError(f"spread must be finite and >= 0, got {spread}")
    zero = Vec2(0.0, 0.0)
    particles = []
    for i in range(params.n_particles):
        for _ in range(MAX_PLACEMENT_ATTEMPTS):
            pos = Vec2(
                start[0] + spread * (2.0 * rng.uniform() - 1.0),
                start[1] + spread * (2.0 * rng.uniform() - 1.0),
            )
            if is_free is None or is_free(pos):
                break
        else:
            raise PlacementError(i, MAX_PLACEMENT_ATTEMPTS)
        particles.append(Particle(pos, zero, pos, fitness(pos, target)))
    return make_swarm(particles)
