"""Batch experiments: repeated runs, success accounting and result emission.

An experiment repeats independent runs of one algorithm/handler pairing on
one benchmark, seeding run i with ``base_seed + i``.  A run fails when its
final global best still has positive violation; summary statistics are taken
over the successful runs only, which matches how published mean/std figures
for these benchmarks are computed.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass

from .handling import HandlerMode
from .problems import REFERENCE_RECORDS, ProblemDef, get_problem
from .swarm import Algorithm, SwarmConfig, run

__all__ = [
    "ExperimentConfig",
    "RunRecord",
    "ExperimentResult",
    "default_cycles",
    "run_experiment",
    "reference_table",
    "emit",
    "CSV_HEADER",
]

CSV_HEADER = "problem,algorithm,handler,runs,mean,std,failed,evals,seed"

# Published mean/std of the alternating algorithm under the forced-shrink
# adaptive rule, for the --compare view next to the older reference methods.
HYBRID_MEANS = {"g3": 1.00050, "g5": 5126.497, "g11": 0.74990, "g13": 0.066257}
HYBRID_STDS = {"g3": 8.12e-07, "g5": 1.41e-10, "g11": 0.0, "g13": 6.78e-2}


def default_cycles(problem_name: str, mode: HandlerMode) -> int:
    """Cycle budget used for the headline results.

    The plain rule gets 5000 cycles everywhere; the adaptive rules converge
    faster and use 2000, except on the scaled product benchmark which keeps
    5000.
    """
    if not mode.adaptive:
        return 5000
    return 5000 if problem_name == "g3" else 2000


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: problem, algorithm, handler and repetition plan.

    ``cycles=None`` picks the benchmark's default budget.  ``eps_o``, when
    set, additionally marks runs as solved once the reported objective is
    within eps_o of the problem's best known value; it has no effect on the
    failure accounting.
    """

    problem: str
    algorithm: Algorithm = Algorithm.DEPS
    handler: HandlerMode = HandlerMode.ACR2
    n_agents: int = 70
    cycles: int | None = None
    runs: int = 100
    seed: int = 0
    eps_h: float | None = None
    eps_o: float | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")


@dataclass(frozen=True)
class RunRecord:
    """One run's scoreboard entry."""

    run_index: int
    seed: int
    objective: float
    f_con: float
    feasible: bool
    eps_r_final: float | None
    evaluations: int
    solved: bool | None = None


@dataclass(frozen=True)
class ExperimentResult:
    """Aggregated experiment outcome.

    ``mean``/``std`` cover successful runs only; mean is None when every run
    failed and std is None with fewer than two successes (sample std).
    """

    config: ExperimentConfig
    records: tuple[RunRecord, ...]
    mean: float | None
    std: float | None
    failed: int
    cycles: int

    @property
    def successful(self) -> int:
        return len(self.records) - self.failed

    @property
    def solved(self) -> int | None:
        """Runs within eps_o of the best known value; None when not tracked."""
        if self.config.eps_o is None:
            return None
        return sum(1 for r in self.records if r.solved)


def _summarize(values: list[float]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else None
    return mean, std


def run_experiment(cfg: ExperimentConfig, problem: ProblemDef | None = None) -> ExperimentResult:
    """Run the experiment sequentially and aggregate feasible-run statistics."""
    if problem is None:
        problem = get_problem(cfg.problem, eps_h=cfg.eps_h)
    elif cfg.eps_h is not None and problem.eps_h != cfg.eps_h:
        problem = problem.with_eps_h(cfg.eps_h)
    cycles = cfg.cycles if cfg.cycles is not None else default_cycles(problem.name, cfg.handler)
    swarm_cfg = SwarmConfig(algorithm=cfg.algorithm, n_agents=cfg.n_agents, cycles=cycles)

    f_star = None
    ref = REFERENCE_RECORDS.get(problem.name)
    if ref is not None:
        f_star = ref.f_star

    records = []
    for i in range(cfg.runs):
        seed = cfg.seed + i
        out = run(problem, swarm_cfg, cfg.handler, seed=seed)
        solved = None
        if cfg.eps_o is not None and f_star is not None:
            solved = out.feasible and abs(out.reported_objective - f_star) <= cfg.eps_o
        records.append(
            RunRecord(
                run_index=i,
                seed=seed,
                objective=out.reported_objective,
                f_con=out.goodness.f_con,
                feasible=out.feasible,
                eps_r_final=out.eps_r_final,
                evaluations=out.evaluations,
                solved=solved,
            )
        )

    good = [r.objective for r in records if r.feasible]
    mean, std = _summarize(good)
    return ExperimentResult(
        config=cfg,
        records=tuple(records),
        mean=mean,
        std=std,
        failed=len(records) - len(good),
        cycles=cycles,
    )


def reference_table() -> dict[str, dict[str, float | None]]:
    """Best known values plus published means/stds for the compared methods."""
    table = {}
    for name, rec in REFERENCE_RECORDS.items():
        table[name] = {
            "f_star": rec.f_star,
            "es_mean": rec.es_mean,
            "es_std": rec.es_std,
            "ga_mean": rec.ga_mean,
            "ga_std": rec.ga_std,
            "hybrid_mean": HYBRID_MEANS.get(name),
            "hybrid_std": HYBRID_STDS.get(name),
        }
    return table


def _fmt(value, none_token: str = "NA") -> str:
    if value is None:
        return none_token
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_csv(result: ExperimentResult) -> str:
    cfg = result.config
    evals = cfg.n_agents * (result.cycles + 1)
    row = [
        cfg.problem,
        cfg.algorithm.value,
        cfg.handler.value,
        str(cfg.runs),
        _fmt(result.mean),
        _fmt(result.std),
        str(result.failed),
        str(evals),
        str(cfg.seed),
    ]
    return CSV_HEADER + "\n" + ",".join(row) + "\n"


def _emit_json(result: ExperimentResult) -> str:
    cfg = result.config
    payload = {
        "problem": cfg.problem,
        "algorithm": cfg.algorithm.value,
        "handler": cfg.handler.value,
        "runs": cfg.runs,
        "mean": result.mean,
        "std": result.std,
        "failed": result.failed,
        "solved": result.solved,
        "evals": cfg.n_agents * (result.cycles + 1),
        "seed": cfg.seed,
        "records": [
            {
                "run_index": r.run_index,
                "seed": r.seed,
                "objective": r.objective,
                "f_con": r.f_con,
                "feasible": r.feasible,
                "eps_r_final": r.eps_r_final,
                "evaluations": r.evaluations,
                "solved": r.solved,
            }
            for r in result.records
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _emit_text(result: ExperimentResult, compare: bool) -> str:
    cfg = result.config
    lines = []
    lines.append(f"problem   : {cfg.problem}")
    lines.append(f"algorithm : {cfg.algorithm.value}")
    lines.append(f"handler   : {cfg.handler.value}")
    lines.append(f"runs      : {cfg.runs} ({result.failed} failed)")
    if result.solved is not None:
        lines.append(f"solved    : {result.solved}")
    lines.append(f"cycles    : {result.cycles}")
    lines.append(f"evals/run : {cfg.n_agents * (result.cycles + 1)}")
    lines.append(f"mean      : {_fmt(result.mean)}")
    lines.append(f"std       : {_fmt(result.std)}")
    if compare:
        ref = reference_table().get(cfg.problem)
        if ref is not None:
            lines.append(f"f_star    : {_fmt(ref['f_star'])}")
            lines.append(
                "published : "
                f"es {_fmt(ref['es_mean'])} / ga {_fmt(ref['ga_mean'])} / "
                f"hybrid {_fmt(ref['hybrid_mean'])}"
            )
    return "\n".join(lines) + "\n"


def emit(result: ExperimentResult, format: str = "csv", compare: bool = False) -> str:
    """Serialize an experiment result as csv, json or a text table.

    Floats are written with full round-trip precision; missing statistics
    become NA in csv/text and null in json.
    """
    if format == "csv":
        return _emit_csv(result)
    if format == "json":
        return _emit_json(result)
    if format == "text":
        return _emit_text(result, compare)
    raise ValueError(f"unknown format: {format!r}")
