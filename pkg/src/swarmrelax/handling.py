"""Goodness comparison rules and the adaptive relaxation controller.

Two comparators order evaluated points:

* ``compare_bch`` -- the basic constraint-handling rule: lexicographic order
  on (f_con, f_obj).  Feasible beats infeasible, feasible ties break on the
  objective, infeasible ties break on total violation.
* ``compare_relaxed`` -- the same rule after clamping each side's violation
  to ``max(eps_r, f_con)``.  Points whose violation is at most the current
  relaxation threshold eps_r are treated as equally "feasible enough", so
  the objective decides between them.

The controller adapts eps_r once per learning cycle from the repository of
personal bests.  The ratio-keeping sub-rule widens the threshold when too few
points sit inside the relaxed region and shrinks it when too many do; the
optional forcing sub-rule multiplies it down every cycle from ``t_th``
onward, driving eps_r to zero by the end of the run so the relaxed ordering
degenerates into the plain one.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from .core import Goodness

__all__ = [
    "HandlerMode",
    "AcrState",
    "compare_bch",
    "compare_relaxed",
    "init_eps_r",
    "update_eps_r",
    "EPS_R_FLOOR",
]

# Below this, eps_r is snapped to exactly zero (its limiting value) to avoid
# denormal churn.
EPS_R_FLOOR = 1e-12


class HandlerMode(str, Enum):
    """Constraint-handling rule selector.

    BCH: plain lexicographic rule, no relaxation.
    ACR1: adaptive relaxation, ratio-keeping sub-rule only.
    ACR2: adaptive relaxation, ratio-keeping plus forcing sub-rule.
    """

    BCH = "bch"
    ACR1 = "acr1"
    ACR2 = "acr2"

    @property
    def adaptive(self) -> bool:
        return self is not HandlerMode.BCH


def _check_comparable(g: Goodness) -> None:
    if math.isnan(g.f_obj) or math.isnan(g.f_con):
        raise ValueError(f"cannot compare NaN goodness {g}")


def compare_bch(a: Goodness, b: Goodness) -> int:
    """Three-way comparison: negative if ``a`` is better, positive if ``b`` is."""
    _check_comparable(a)
    _check_comparable(b)
    if a.f_con != b.f_con:
        return -1 if a.f_con < b.f_con else 1
    if a.f_obj != b.f_obj:
        return -1 if a.f_obj < b.f_obj else 1
    return 0


def compare_relaxed(a: Goodness, b: Goodness, eps_r: float) -> int:
    """``compare_bch`` with each violation clamped to ``max(eps_r, f_con)``.

    With eps_r = 0 this is identical to ``compare_bch``.
    """
    if eps_r < 0:
        raise ValueError(f"eps_r must be nonnegative, got {eps_r}")
    _check_comparable(a)
    _check_comparable(b)
    ca = a.f_con if a.f_con > eps_r else eps_r
    cb = b.f_con if b.f_con > eps_r else eps_r
    if ca != cb:
        return -1 if ca < cb else 1
    if a.f_obj != b.f_obj:
        return -1 if a.f_obj < b.f_obj else 1
    return 0


@dataclass
class AcrState:
    """Relaxation threshold plus its control constants.

    ``eps_r`` is the only mutable part; it is adjusted once per learning
    cycle by :func:`update_eps_r`.  Defaults: keep between 25% and 75% of the
    repository inside the relaxed region, widen by 1.382, shrink by 0.618,
    and (ACR2 only) force-shrink by 0.618 from the half-way cycle onward.
    """

    eps_r: float
    t_th: float
    total_cycles: int
    r_l: float = 0.25
    r_u: float = 0.75
    beta_l: float = 0.618
    beta_u: float = 1.382
    beta_f: float = 0.618

    def __post_init__(self):
        if self.eps_r < 0:
            raise ValueError("eps_r must be nonnegative")
        if not (0 <= self.r_l < self.r_u <= 1):
            raise ValueError("need 0 <= r_l < r_u <= 1")
        if not (0 < self.beta_l < 1 < self.beta_u):
            raise ValueError("need 0 < beta_l < 1 < beta_u")
        if not (0 < self.beta_f < 1):
            raise ValueError("need 0 < beta_f < 1")

    @classmethod
    def for_run(cls, total_cycles: int, repository: Sequence[Goodness]) -> "AcrState":
        """Default constants, threshold seeded from the initial repository."""
        return cls(
            eps_r=init_eps_r(repository),
            t_th=0.5 * total_cycles,
            total_cycles=total_cycles,
        )


def init_eps_r(repository: Sequence[Goodness]) -> float:
    """Initial threshold: the largest violation in the starting repository."""
    if not repository:
        raise ValueError("repository must be non-empty")
    return max(g.f_con for g in repository)


def update_eps_r(
    state: AcrState,
    repository: Sequence[Goodness],
    t: int,
    mode: HandlerMode,
) -> float:
    """One per-cycle threshold adjustment; mutates and returns ``state.eps_r``.

    The inside-ratio counts repository points with f_con <= eps_r (boundary
    ties count as inside, so an all-feasible repository keeps eps_r at zero
    and the rule degenerates into the plain comparison).  Callers must
    re-select the global best whenever the returned value changed.
    """
    if not mode.adaptive:
        raise ValueError("update_eps_r applies only to the adaptive modes")
    n_inside = sum(1 for g in repository if g.f_con <= state.eps_r)
    r_n = n_inside / len(repository)
    if r_n <= state.r_l:
        state.eps_r = state.beta_u * state.eps_r
    elif r_n >= state.r_u:
        state.eps_r = state.beta_l * state.eps_r
    if mode is HandlerMode.ACR2 and t >= state.t_th:
        state.eps_r = state.beta_f * state.eps_r
    if state.eps_r < EPS_R_FLOOR:
        state.eps_r = 0.0
    return state.eps_r
