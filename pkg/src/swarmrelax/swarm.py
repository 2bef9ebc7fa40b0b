"""Agent action rules (PS, DE, and their alternation) and the run loop.

A swarm holds N agents that act in fixed index order once per learning
cycle.  Each agent keeps a current position ``x`` and velocity ``v`` (used by
the particle rule only) plus its personal best ``p``; the set of personal
bests forms the repository consulted by both the difference-vector rule and
the relaxation controller.  The global best ``g`` is refreshed after every
personal-best update, so later agents in the same cycle see earlier updates.

Position arrays are treated as immutable values: every rule builds a fresh
array, so personal bests and the global best can share storage safely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Bounds, Goodness, RngStream
from .handling import AcrState, HandlerMode, compare_bch, compare_relaxed, update_eps_r
from .problems import ProblemDef, evaluate

__all__ = [
    "Algorithm",
    "SwarmConfig",
    "AgentState",
    "SwarmState",
    "RunResult",
    "wrap_periodic",
    "ps_step",
    "de_step",
    "run_cycle",
    "run",
]


class Algorithm(str, Enum):
    PS = "ps"
    DE = "de"
    DEPS = "deps"


@dataclass(frozen=True)
class SwarmConfig:
    """Swarm size, cycle budget and rule coefficients.

    Defaults are the standard fast-convergence settings: inertia w=0.4 and
    c1=c2=2 for the particle rule; crossover cr=0.9, nv=2 difference vectors
    and scale sf=1/nv=0.5 for the difference-vector rule.
    """

    algorithm: Algorithm = Algorithm.DEPS
    n_agents: int = 70
    cycles: int = 2000
    w: float = 0.4
    c1: float = 2.0
    c2: float = 2.0
    cr: float = 0.9
    sf: float = 0.5
    nv: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.n_agents < 2:
            raise ValueError("need at least 2 agents")
        if self.cycles < 0:
            raise ValueError("cycles must be nonnegative")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError("cr must lie in [0, 1]")
        if self.nv < 1:
            raise ValueError("nv must be at least 1")


@dataclass
class AgentState:
    """One agent: position, velocity, and personal best with its goodness.

    ``x`` and ``v`` belong to the particle rule and are left untouched by the
    difference-vector rule; both rules share ``p``.
    """

    x: np.ndarray
    v: np.ndarray
    p: np.ndarray
    p_good: Goodness


@dataclass
class SwarmState:
    """Mutable whole-swarm state across cycles.

    ``eval_count`` tracks cycle evaluations only (N per completed cycle); the
    N evaluations of the initial population are reported separately.
    """

    agents: list[AgentState]
    g: np.ndarray
    g_good: Goodness
    t: int = 0
    eval_count: int = 0


@dataclass
class RunResult:
    """Outcome of one run, scored without relaxation.

    ``goodness`` is the raw goodness of the final global best; the run is
    feasible only if its total violation is exactly zero at the problem's
    eps_h.  ``reported_objective`` applies the problem's sign convention.
    ``eps_r_trace`` holds the initial threshold plus one value per cycle
    (empty for the plain rule); ``best_trace`` records the global best's raw
    goodness after initialization and after each cycle.
    """

    problem: str
    algorithm: Algorithm
    handler: HandlerMode
    seed: int
    g: np.ndarray
    goodness: Goodness
    reported_objective: float
    feasible: bool
    eps_r_final: float | None
    eps_r_trace: list[float]
    best_trace: list[Goodness]
    cycles: int
    evaluations: int


def wrap_periodic(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Map out-of-box coordinates back by tiling the box periodically.

    A coordinate outside [l, u] becomes l + mod(x - l, u - l); in-range
    coordinates are returned untouched.
    """
    outside = (x < bounds.lower) | (x > bounds.upper)
    if not outside.any():
        return x
    wrapped = x.copy()
    lo = bounds.lower[outside]
    wrapped[outside] = lo + np.mod(x[outside] - lo, bounds.span[outside])
    return wrapped


def ps_step(
    agent: AgentState,
    g: np.ndarray,
    cfg: SwarmConfig,
    problem: ProblemDef,
    comparator,
    rng: RngStream,
) -> bool:
    """Particle rule: steer velocity toward the personal and global bests.

    Fresh uniform draws are used per dimension for each attraction term.
    Returns True if the personal best was replaced.
    """
    r1 = rng.uniform_reals(problem.dimension)
    r2 = rng.uniform_reals(problem.dimension)
    v = cfg.w * agent.v + cfg.c1 * r1 * (agent.p - agent.x) + cfg.c2 * r2 * (g - agent.x)
    x = wrap_periodic(agent.x + v, problem.bounds)
    agent.v = v
    agent.x = x
    good = evaluate(problem, x)
    if comparator(good, agent.p_good) <= 0:
        agent.p = x
        agent.p_good = good
        return True
    return False


def de_step(
    agent: AgentState,
    g: np.ndarray,
    repository: list[AgentState],
    cfg: SwarmConfig,
    problem: ProblemDef,
    comparator,
    rng: RngStream,
) -> bool:
    """Difference-vector rule: recombine the global best with repository noise.

    The trial starts as a copy of the personal best; each dimension passing
    the crossover draw (plus one forced dimension) is replaced by
    ``g_d + sf * delta_d``, where delta sums ``nv`` randomly drawn
    repository differences.  Index draws may repeat, including the agent
    itself.  The trial replaces ``p`` when not worse.  Returns True on
    replacement.
    """
    d = problem.dimension
    n = len(repository)
    forced = rng.uniform_int(1, d) - 1
    delta = np.zeros(d)
    for _ in range(cfg.nv):
        a = rng.uniform_int(1, n) - 1
        b = rng.uniform_int(1, n) - 1
        delta += repository[a].p - repository[b].p
    mask = rng.uniform_reals(d) < cfg.cr
    mask[forced] = True
    x_de = np.where(mask, g + cfg.sf * delta, agent.p)
    x_de = wrap_periodic(x_de, problem.bounds)
    good = evaluate(problem, x_de)
    if comparator(good, agent.p_good) <= 0:
        agent.p = x_de
        agent.p_good = good
        return True
    return False


def _best_index(agents: list[AgentState], comparator) -> int:
    """First index whose personal best no other strictly beats."""
    best = 0
    for i in range(1, len(agents)):
        if comparator(agents[i].p_good, agents[best].p_good) < 0:
            best = i
    return best


def run_cycle(
    state: SwarmState,
    cfg: SwarmConfig,
    problem: ProblemDef,
    mode: HandlerMode,
    acr: AcrState | None,
    rng: RngStream,
) -> None:
    """Advance the swarm by one learning cycle.

    In the adaptive modes the relaxation threshold is adjusted first and the
    global best re-selected under the new ordering; the ordering then stays
    fixed for the whole cycle.  The alternating algorithm applies the
    particle rule on odd cycles and the difference-vector rule on even ones.
    Exactly one evaluation happens per agent.
    """
    state.t += 1
    t = state.t
    if mode.adaptive:
        update_eps_r(acr, [a.p_good for a in state.agents], t, mode)
        eps = acr.eps_r
        comparator = lambda a, b: compare_relaxed(a, b, eps)  # noqa: E731
        best = _best_index(state.agents, comparator)
        state.g = state.agents[best].p
        state.g_good = state.agents[best].p_good
    else:
        comparator = compare_bch

    if cfg.algorithm is Algorithm.PS:
        use_ps = True
    elif cfg.algorithm is Algorithm.DE:
        use_ps = False
    else:
        use_ps = t % 2 == 1

    for agent in state.agents:
        if use_ps:
            updated = ps_step(agent, state.g, cfg, problem, comparator, rng)
        else:
            updated = de_step(agent, state.g, state.agents, cfg, problem, comparator, rng)
        if updated and comparator(agent.p_good, state.g_good) < 0:
            state.g = agent.p
            state.g_good = agent.p_good
    state.eval_count += cfg.n_agents


def run(
    problem: ProblemDef,
    cfg: SwarmConfig,
    mode: HandlerMode = HandlerMode.ACR2,
    seed: int | None = None,
) -> RunResult:
    """Execute one full run and score the final global best unrelaxed.

    Positions start uniform inside the bounds with zero velocity, and each
    personal best starts at the agent's position.  In the adaptive modes the
    threshold starts at the largest initial violation and the initial global
    best is selected under that relaxed ordering.
    """
    if seed is None:
        seed = cfg.seed
    rng = RngStream(seed)
    d = problem.dimension
    lo, span = problem.bounds.lower, problem.bounds.span

    agents = []
    for _ in range(cfg.n_agents):
        x = lo + rng.uniform_reals(d) * span
        agents.append(AgentState(x=x, v=np.zeros(d), p=x, p_good=evaluate(problem, x)))

    acr = None
    if mode.adaptive:
        acr = AcrState.for_run(cfg.cycles, [a.p_good for a in agents])
        eps0 = acr.eps_r
        comparator = lambda a, b: compare_relaxed(a, b, eps0)  # noqa: E731
    else:
        comparator = compare_bch
    best = _best_index(agents, comparator)
    state = SwarmState(agents=agents, g=agents[best].p, g_good=agents[best].p_good)

    eps_r_trace = [acr.eps_r] if acr is not None else []
    best_trace = [state.g_good]
    for _ in range(cfg.cycles):
        run_cycle(state, cfg, problem, mode, acr, rng)
        if acr is not None:
            eps_r_trace.append(acr.eps_r)
        best_trace.append(state.g_good)

    goodness = state.g_good
    return RunResult(
        problem=problem.name,
        algorithm=cfg.algorithm,
        handler=mode,
        seed=seed,
        g=state.g.copy(),
        goodness=goodness,
        reported_objective=problem.reported_objective(goodness.f_obj),
        feasible=goodness.f_con == 0.0,
        eps_r_final=acr.eps_r if acr is not None else None,
        eps_r_trace=eps_r_trace,
        best_trace=best_trace,
        cycles=cfg.cycles,
        evaluations=cfg.n_agents + state.eval_count,
    )
