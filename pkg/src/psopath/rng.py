"""Portable seeded random source.

The generator is SplitMix64 (Steele, Lea & Flood 2014): a 64-bit state
advanced by the golden-ratio increment and finalized with the MurmurHash3
mixer. Doubles take the top 53 bits of each output, so every draw is an
exact multiple of 2**-53 in [0, 1). Everything is integer arithmetic, so
the stream is identical on every platform and Python version.

Do not change the algorithm or the double conversion: recorded runs and
the test suite depend on the exact stream.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class RandomSource:
    """SplitMix64 stream of uniform doubles on [0, 1).

    ``draws`` counts the doubles handed out since construction; the
    simulator uses it to audit that no step consumes hidden randomness.
    """

    __slots__ = ("seed", "_state", "draws")

    def __init__(self, seed: int):
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise TypeError(f"seed must be an int, got {type(seed).__name__}")
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._state = seed
        self.draws = 0

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix(self._state)

    def uniform(self) -> float:
        """Next double, uniform on [0, 1)."""
        self.draws += 1
        return (self.next_u64() >> 11) * _INV_2_53

    def split(self) -> RandomSource:
        """Independent child stream seeded from this stream's next output."""
        return RandomSource(self.next_u64())

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, draws={self.draws})"


class FixedSource:
    """Stand-in source returning a fixed cycle of values.

    Handy for evaluating the update rules at chosen r1, r2.
    """

    def __init__(self, *values: float):
        if not values:
            raise ValueError("FixedSource needs at least one value")
        self._values = values
        self.draws = 0

    def uniform(self) -> float:
        value = self._values[self.draws % len(self._values)]
        self.draws += 1
        return value
