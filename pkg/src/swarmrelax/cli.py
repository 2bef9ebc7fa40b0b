"""Command line front end for running benchmark experiments."""

from __future__ import annotations

import click

from .handling import HandlerMode
from .harness import ExperimentConfig, emit, reference_table, run_experiment
from .problems import REFERENCE_RECORDS, available_problems, get_problem
from .swarm import Algorithm

_INT_KEYS = {"runs", "seed", "n", "t"}
_FLOAT_KEYS = {"eps_h"}
_BOOL_KEYS = {"compare"}
_STR_KEYS = {"problem", "algo", "handler", "format", "out"}


def _parse_config(path: str) -> dict:
    """Read a key=value file; blank lines and # comments are skipped."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.ClickException(f"{path}:{lineno}: expected key=value")
            key, _, text = line.partition("=")
            key = key.strip().replace("-", "_")
            text = text.strip()
            if key in _INT_KEYS:
                values[key] = int(text)
            elif key in _FLOAT_KEYS:
                values[key] = float(text)
            elif key in _BOOL_KEYS:
                values[key] = text.lower() in ("1", "true", "yes", "on")
            elif key in _STR_KEYS:
                values[key] = text
            else:
                raise click.ClickException(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _pick(cli_value, config: dict, key: str, default):
    """Command line beats config file beats built-in default."""
    if cli_value is not None:
        return cli_value
    if key in config:
        return config[key]
    return default


@click.group()
def main():
    """Constrained swarm optimization with adaptive violation relaxation."""


@main.command("run")
@click.option("--problem", type=str, default=None, help="Benchmark name (see list-problems).")
@click.option(
    "--algo",
    type=click.Choice([a.value for a in Algorithm]),
    default=None,
    help="Agent action rule.  [default: deps]",
)
@click.option(
    "--handler",
    type=click.Choice([m.value for m in HandlerMode]),
    default=None,
    help="Violation handling rule.  [default: acr2]",
)
@click.option("--runs", type=int, default=None, help="Independent runs.  [default: 100]")
@click.option("--seed", type=int, default=None, help="Base seed; run i uses seed+i.  [default: 0]")
@click.option("--n", type=int, default=None, help="Agents per swarm.  [default: 70]")
@click.option("--t", type=int, default=None, help="Learning cycles.  [default: per benchmark]")
@click.option("--eps-h", type=float, default=None, help="Equality tolerance.  [default: 1e-4]")
@click.option(
    "--format",
    "format_",
    type=click.Choice(["csv", "json", "text"]),
    default=None,
    help="Output format.  [default: csv]",
)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--compare", is_flag=True, default=None, help="Show published figures (text format).")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="key=value file; explicit flags win over it.",
)
def run_cmd(problem, algo, handler, runs, seed, n, t, eps_h, format_, out, compare, config_path):
    """Run one experiment and print or save its summary."""
    config = _parse_config(config_path) if config_path else {}
    problem = _pick(problem, config, "problem", None)
    if problem is None:
        raise click.ClickException("missing --problem (or problem= in --config)")
    algo = _pick(algo, config, "algo", Algorithm.DEPS.value)
    handler = _pick(handler, config, "handler", HandlerMode.ACR2.value)
    runs = _pick(runs, config, "runs", 100)
    seed = _pick(seed, config, "seed", 0)
    n = _pick(n, config, "n", 70)
    t = _pick(t, config, "t", None)
    eps_h = _pick(eps_h, config, "eps_h", None)
    format_ = _pick(format_, config, "format", "csv")
    out = _pick(out, config, "out", None)
    compare = bool(_pick(compare, config, "compare", False))

    try:
        cfg = ExperimentConfig(
            problem=problem,
            algorithm=Algorithm(algo),
            handler=HandlerMode(handler),
            n_agents=n,
            cycles=t,
            runs=runs,
            seed=seed,
            eps_h=eps_h,
        )
        result = run_experiment(cfg)
    except (KeyError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc

    text = emit(result, format=format_, compare=compare)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


@main.command("list-problems")
def list_problems_cmd():
    """List the registered benchmarks."""
    for name in available_problems():
        problem = get_problem(name)
        ref = REFERENCE_RECORDS.get(name)
        star = f"  f* = {ref.f_star}" if ref is not None else ""
        kinds = []
        if problem.inequalities:
            kinds.append(f"{len(problem.inequalities)} ineq")
        if problem.equalities:
            kinds.append(f"{len(problem.equalities)} eq")
        click.echo(f"{name}: d={problem.dimension}, {', '.join(kinds)}{star}")


@main.command("reference")
def reference_cmd():
    """Print best known values and published method figures."""
    table = reference_table()
    header = f"{'problem':<8}{'f_star':>14}{'es_mean':>14}{'ga_mean':>14}{'hybrid_mean':>14}"
    click.echo(header)
    for name, row in table.items():

        def cell(value):
            return "NA" if value is None else f"{value}"

        click.echo(
            f"{name:<8}{cell(row['f_star']):>14}{cell(row['es_mean']):>14}"
            f"{cell(row['ga_mean']):>14}{cell(row['hybrid_mean']):>14}"
        )


if __name__ == "__main__":
    main()
