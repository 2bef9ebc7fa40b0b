"""Shared value types and the seedable random stream used by every run.

A point in the search space is a plain 1-D float64 ``numpy.ndarray``; the
classes here carry the values attached to points (bounds, goodness) and the
deterministic source of randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Bounds", "Goodness", "RngStream"]


@dataclass(frozen=True)
class Bounds:
    """Per-dimension closed box ``[lower_d, upper_d]`` of the search space."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D arrays of equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")

    @property
    def dimension(self) -> int:
        return self.lower.shape[0]

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True)
class Goodness:
    """Quality of an evaluated point: objective value plus total violation.

    ``f_con`` is the weighted sum of constraint violation terms and is zero
    exactly when the point satisfies every transformed constraint.  Ordering
    between Goodness values is defined by the comparators in
    :mod:`swarmrelax.handling`, not by this class.
    """

    f_obj: float
    f_con: float

    def __post_init__(self):
        if self.f_con < 0:
            raise ValueError(f"f_con must be nonnegative, got {self.f_con}")

    @property
    def feasible(self) -> bool:
        return self.f_con == 0.0


class RngStream:
    """Deterministic uniform random stream owned by a single run.

    Backed by numpy's PCG64 generator (128-bit state): the same seed always
    reproduces the same sequence of draws, which makes whole runs replayable.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform_real(self) -> float:
        """Next uniform real in [0, 1)."""
        return float(self._gen.random())

    def uniform_reals(self, n: int) -> np.ndarray:
        """Next ``n`` uniform reals in [0, 1) as a vector."""
        return self._gen.random(n)

    def uniform_int(self, a: int, b: int) -> int:
        """Next uniform integer in the inclusive range [a, b]."""
        if a > b:
            raise ValueError(f"empty range: a={a} > b={b}")
        return int(self._gen.integers(a, b + 1))
