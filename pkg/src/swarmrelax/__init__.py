"""Constrained swarm optimization with adaptive violation relaxation.

Agents improve candidate solutions under box bounds while a single scalar
violation measure folds all constraints together.  Selection either demands
strictly smaller violation (the plain rule) or tolerates violations below a
threshold that adapts to the swarm's progress (the relaxing rules), which
keeps equality-constrained problems from stalling at the feasibility wall.
"""

from .core import Bounds, Goodness, RngStream
from .handling import (
    AcrState,
    HandlerMode,
    compare_bch,
    compare_relaxed,
    init_eps_r,
    update_eps_r,
)
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    RunRecord,
    default_cycles,
    emit,
    reference_table,
    run_experiment,
)
from .problems import (
    EvaluationError,
    ProblemDef,
    ReferenceRecord,
    REFERENCE_RECORDS,
    available_problems,
    evaluate,
    get_problem,
    make_g3,
    make_g5,
    make_g11,
    make_g13,
    register_problem,
    violation_terms,
)
from .swarm import (
    AgentState,
    Algorithm,
    RunResult,
    SwarmConfig,
    SwarmState,
    de_step,
    ps_step,
    run,
    run_cycle,
    wrap_periodic,
)

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "Goodness",
    "RngStream",
    "HandlerMode",
    "AcrState",
    "compare_bch",
    "compare_relaxed",
    "init_eps_r",
    "update_eps_r",
    "EvaluationError",
    "ProblemDef",
    "ReferenceRecord",
    "REFERENCE_RECORDS",
    "available_problems",
    "evaluate",
    "get_problem",
    "make_g3",
    "make_g5",
    "make_g11",
    "make_g13",
    "register_problem",
    "violation_terms",
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
    "ExperimentConfig",
    "ExperimentResult",
    "RunRecord",
    "default_cycles",
    "run_experiment",
    "reference_table",
    "emit",
    "__version__",
]
