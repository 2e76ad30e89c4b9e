"""Bounded 2D search space with axis-aligned rectangular obstacles.

Obstacles are closed sets: a point on an obstacle edge is blocked. The
bounds are closed too, so a point on the outer frame is free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidInputError
from .swarm import Particle, Vec2, propose_position

DEFAULT_HALF_WIDTH = 100.0


@dataclass(frozen=True)
class Rect:
    min_corner: Vec2
    max_corner: Vec2

    def __post_init__(self):
        lo, hi = self.min_corner, self.max_corner
        if not all(math.isfinite(c) for c in (*lo, *hi)):
            raise InvalidInputError(f"rectangle corners must be finite: {lo}, {hi}")
        if lo[0] > hi[0] or lo[1] > hi[1]:
            raise InvalidInputError(f"rectangle min_corner {tuple(lo)} exceeds max_corner {tuple(hi)}")

    @classmethod
    def from_bounds(cls, min_x: float, min_y: float, max_x: float, max_y: float) -> Rect:
        return cls(Vec2(float(min_x), float(min_y)), Vec2(float(max_x), float(max_y)))

    def as_list(self) -> list[float]:
        return [self.min_corner.x, self.min_corner.y, self.max_corner.x, self.max_corner.y]

    @property
    def width(self) -> float:
        return self.max_corner.x - self.min_corner.x

    @property
    def height(self) -> float:
        return self.max_corner.y - self.min_corner.y

    def contains(self, p: Vec2) -> bool:
        """Closed containment test."""
        return (
            self.min_corner.x <= p[0] <= self.max_corner.x
            and self.min_corner.y <= p[1] <= self.max_corner.y
        )

    def grown(self, margin: float) -> Rect:
        lo, hi = self.min_corner, self.max_corner
        return Rect(Vec2(lo.x - margin, lo.y - margin), Vec2(hi.x + margin, hi.y + margin))

    def clipped(self, other: Rect) -> Rect | None:
        """Intersection with ``other``, or None if they do not overlap."""
        lo = Vec2(max(self.min_corner.x, other.min_corner.x), max(self.min_corner.y, other.min_corner.y))
        hi = Vec2(min(self.max_corner.x, other.max_corner.x), min(self.max_corner.y, other.max_corner.y))
        if lo.x > hi.x or lo.y > hi.y:
            return None
        return Rect(lo, hi)


DEFAULT_BOUNDS = Rect.from_bounds(
    -DEFAULT_HALF_WIDTH, -DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH
)


def segment_hits_rect(a: Vec2, b: Vec2, lo: Vec2, hi: Vec2) -> bool:
    """Whether the closed segment a-b meets the closed box [lo, hi] (slab test)."""
    t0, t1 = 0.0, 1.0
    for axis in (0, 1):
        start = a[axis]
        delta = b[axis] - start
        if delta == 0.0:
            if start < lo[axis] or start > hi[axis]:
                return False
            continue
        ta = (lo[axis] - start) / delta
        tb = (hi[axis] - start) / delta
        if ta > tb:
            ta, tb = tb, ta
        if ta > t0:
            t0 = ta
        if tb < t1:
            t1 = tb
        if t0 > t1:
            return False
    return True


@dataclass(frozen=True)
class Environment:
    bounds: Rect = DEFAULT_BOUNDS
    obstacles: tuple[Rect, ...] = ()
    wall_margin: float = 0.0
    # precomputed (lo, hi) pairs of the inflated, clipped obstacles
    _blocked: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.bounds.width > 0 and self.bounds.height > 0):
            raise InvalidInputError("bounds must have positive area")
        if not math.isfinite(self.wall_margin) or self.wall_margin < 0:
            raise InvalidInputError(f"wall_margin must be finite and >= 0, got {self.wall_margin}")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "_blocked", tuple(
            (r.min_corner, r.max_corner) for r in self.effective_obstacles()
        ))

    def effective_obstacles(self) -> list[Rect]:
        """Obstacles grown by ``wall_margin`` and clipped to the bounds."""
        out = []
        for r in self.obstacles:
            clipped = r.grown(self.wall_margin).clipped(self.bounds)
            if clipped is not None:
                out.append(clipped)
        return out


class CollisionMode(str, Enum):
    POINT_REJECT = "point_reject"
    SEGMENT_REJECT = "segment_reject"


class OnReject(str, Enum):
    KEEP_VELOCITY = "keep_velocity"
    ZERO_VELOCITY = "zero_velocity"


@dataclass(frozen=True)
class MovePolicy:
    collision_mode: CollisionMode = CollisionMode.SEGMENT_REJECT
    on_reject: OnReject = OnReject.KEEP_VELOCITY

    def __post_init__(self):
        object.__setattr__(self, "collision_mode", CollisionMode(self.collision_mode))
        object.__setattr__(self, "on_reject", OnReject(self.on_reject))


def contains_free(env: Environment, p: Vec2) -> bool:
    """Inside the bounds and off every inflated obstacle."""
    x, y = p[0], p[1]
    b = env.bounds
    if not (b.min_corner.x <= x <= b.max_corner.x and b.min_corner.y <= y <= b.max_corner.y):
        return False
    for lo, hi in env._blocked:
        if lo[0] <= x <= hi[0] and lo[1] <= y <= hi[1]:
            return False
    return True


def segment_blocked(env: Environment, a: Vec2, b: Vec2) -> bool:
    """Whether the closed segment a-b leaves the bounds or touches an inflated obstacle.

    The bounds are convex, so the segment stays inside them iff both ends do.
    """
    bounds = env.bounds
    if not (bounds.contains(a) and bounds.contains(b)):
        return True
    for lo, hi in env._blocked:
        if segment_hits_rect(a, b, lo, hi):
            return True
    return False


def apply_move(env: Environment, p: Particle, proposed_velocity: Vec2, policy: MovePolicy) -> Particle:
    """Move ``p`` by ``proposed_velocity`` unless the move is refused.

    A refused move leaves the position where it was; the velocity is kept
    or zeroed per ``policy.on_reject``.
    """
    candidate = propose_position(p.position, proposed_velocity)
    if policy.collision_mode is CollisionMode.SEGMENT_REJECT:
        ok = not segment_blocked(env, p.position, candidate)
    else:
        ok = contains_free(env, candidate)
    if ok:
        return p._replace(position=candidate, velocity=proposed_velocity)
    if policy.on_reject is OnReject.ZERO_VELOCITY:
        return p._replace(velocity=Vec2(0.0, 0.0))
    return p._replace(velocity=proposed_velocity)


def inflate(env: Environment, margin: float) -> Environment:
    if not math.isfinite(margin) or margin < 0:
        raise InvalidInputError(f"margin must be finite and >= 0, got {margin}")
    return Environment(env.bounds, env.obstacles, float(margin))
