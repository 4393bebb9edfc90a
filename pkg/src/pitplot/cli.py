"""Command-line interface: validate, simulate, pit, tornado, whatif, serve.

Exit codes: 0 ok, 2 validation error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click

from . import __version__
from .analysis import portfolio_outcomes, run_pit
from .engine import export_ledger, simulate_portfolio
from .metrics import METRICS, MetricDomainError, pit_to_csv, pit_to_dict
from .model import (
    PortfolioSpec,
    PortfolioValidationError,
    SimConfig,
    load_config,
    load_portfolio,
    validate_config,
    validate_portfolio,
)
from .render import render_pit, render_pit_text, render_tornado, render_tornado_text
from .tornado import (
    Perturbation,
    load_scenario_fixture,
    portfolio_tornado,
    tornado_analysis,
    tornado_to_csv,
    tornado_to_dict,
)
from .whatif import WhatIf, apply_whatif

EXIT_VALIDATION = 2
EXIT_COMPUTE = 3
EXIT_IO = 4


class CliError(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _load_portfolio(path: str) -> PortfolioSpec:
    try:
        spec = load_portfolio(path)
    except OSError as exc:
        raise CliError(f"cannot read portfolio file {path}: {exc}", EXIT_IO)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed portfolio file {path}: {exc}", EXIT_VALIDATION)
    try:
        return validate_portfolio(spec)
    except PortfolioValidationError as exc:
        raise CliError(f"invalid portfolio {path}:\n  " +
                       "\n  ".join(str(d) for d in exc.diagnostics), EXIT_VALIDATION)


def _build_config(config_path: str | None, seed: int | None, engine: str | None,
                  iterations: int | None) -> SimConfig:
    # precedence: flags > config file > built-in defaults
    try:
        cfg = load_config(config_path) if config_path else SimConfig()
    except OSError as exc:
        raise CliError(f"cannot read config file {config_path}: {exc}", EXIT_IO)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise CliError(f"malformed config file {config_path}: {exc}", EXIT_VALIDATION)
    if seed is not None:
        cfg = dataclasses.replace(cfg, seed=seed)
    if engine is not None:
        cfg = dataclasses.replace(cfg, engine=engine)
    if iterations is not None:
        cfg = dataclasses.replace(cfg, iterations=iterations)
    try:
        return validate_config(cfg)
    except PortfolioValidationError as exc:
        raise CliError(f"invalid config: {exc}", EXIT_VALIDATION)


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc}", EXIT_IO)
    else:
        click.echo(text, nl=False)


def _pit_output(data, fmt: str) -> str:
    if fmt == "svg":
        return render_pit(data)
    if fmt == "text":
        return render_pit_text(data)
    if fmt == "csv":
        return pit_to_csv(data)
    return json.dumps(pit_to_dict(data), indent=2) + "\n"


def _tornado_output(rows, fmt: str) -> str:
    if fmt == "svg":
        return render_tornado(rows)
    if fmt == "text":
        return render_tornado_text(rows)
    if fmt == "csv":
        return tornado_to_csv(rows)
    return json.dumps(tornado_to_dict(rows), indent=2) + "\n"


config_opt = click.option("--config", "config_path", type=click.Path(), default=None,
                          help="Simulation config JSON file.")
seed_opt = click.option("--seed", type=int, default=None, help="Override RNG seed.")
engine_opt = click.option("--engine", type=click.Choice(["monte_carlo", "analytic"]),
                          default=None, help="Override engine.")
iters_opt = click.option("--iterations", type=int, default=None, help="Override iteration count.")
metric_opt = click.option("--metric", type=click.Choice(sorted(METRICS)), default="pi",
                          show_default=True)
format_opt = click.option("--format", "fmt", type=click.Choice(["svg", "text", "csv", "json"]),
                          default="text", show_default=True)
out_opt = click.option("--out", type=click.Path(), default=None, help="Write output to a file.")


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Phase-gated R&D portfolio simulation and PIT-plot analytics."""


@main.command()
@click.argument("portfolio_file", type=click.Path())
def validate(portfolio_file: str) -> None:
    """Validate a portfolio file; print diagnostics for every violation."""
    spec = _load_portfolio(portfolio_file)
    click.echo(f"ok: {spec.name} ({len(spec.projects)} projects)")


@main.command()
@click.argument("portfolio_file", type=click.Path())
@config_opt
@seed_opt
@engine_opt
@iters_opt
@click.option("--ledger", is_flag=True, help="Emit the raw per-iteration ledger (CSV).")
@out_opt
def simulate(portfolio_file: str, config_path: str | None, seed: int | None,
             engine: str | None, iterations: int | None, ledger: bool,
             out: str | None) -> None:
    """Simulate the portfolio and report per-project risk-adjusted totals."""
    spec = _load_portfolio(portfolio_file)
    cfg = _build_config(config_path, seed, engine, iterations)
    if ledger:
        if cfg.engine != "monte_carlo":
            raise CliError("--ledger requires --engine monte_carlo", EXIT_VALIDATION)
        text = "".join(export_ledger(cf) for cf in simulate_portfolio(spec, cfg))
        _emit(text, out)
        return
    outcomes = portfolio_outcomes(spec, cfg)
    lines = ["project_id,expected_revenue,expected_cost"]
    for o in outcomes:
        lines.append(f"{o.project_id},{o.revenue:.9g},{o.cost:.9g}")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.argument("portfolio_file", type=click.Path())
@config_opt
@seed_opt
@engine_opt
@iters_opt
@metric_opt
@format_opt
@out_opt
def pit(portfolio_file: str, config_path: str | None, seed: int | None, engine: str | None,
        iterations: int | None, metric: str, fmt: str, out: str | None) -> None:
    """Compute PIT bars (exclusion + guaranteed-success impact per project)."""
    spec = _load_portfolio(portfolio_file)
    cfg = _build_config(config_path, seed, engine, iterations)
    try:
        data = run_pit(spec, cfg, METRICS[metric])
    except MetricDomainError as exc:
        raise CliError(str(exc), EXIT_COMPUTE)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_COMPUTE)
    _emit(_pit_output(data, fmt), out)


@main.command()
@click.argument("input_file", type=click.Path())
@config_opt
@metric_opt
@format_opt
@click.option("--perturb", "perturbations", multiple=True,
              help="PROJECT:FIELD_PATH:LOW:HIGH perturbation of a portfolio field "
                   "(portfolio-metric mode).")
@out_opt
def tornado(input_file: str, config_path: str | None, metric: str, fmt: str,
            perturbations: tuple[str, ...], out: str | None) -> None:
    """One-at-a-time sensitivity analysis.

    INPUT_FILE is either a scenario-model fixture (low/base/high table) or,
    with --perturb options, a portfolio file.
    """
    if perturbations:
        spec = _load_portfolio(input_file)
        cfg = _build_config(config_path, None, "analytic", None)
        perts = []
        for raw in perturbations:
            parts = raw.split(":")
            if len(parts) != 4:
                raise CliError(f"bad --perturb {raw!r}; expected PROJECT:FIELD:LOW:HIGH",
                               EXIT_VALIDATION)
            perts.append(Perturbation(parts[0], parts[1], float(parts[2]), float(parts[3])))
        try:
            rows = portfolio_tornado(spec, cfg, METRICS[metric], perts)
        except (KeyError, PortfolioValidationError, ValueError) as exc:
            raise CliError(str(exc), EXIT_COMPUTE)
    else:
        try:
            model, variables = load_scenario_fixture(input_file)
        except OSError as exc:
            raise CliError(f"cannot read {input_file}: {exc}", EXIT_IO)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CliError(f"malformed tornado fixture {input_file}: {exc}", EXIT_VALIDATION)
        try:
            rows = tornado_analysis(model, variables)
        except RuntimeError as exc:
            raise CliError(str(exc), EXIT_COMPUTE)
    _emit(_tornado_output(rows, fmt), out)


@main.command()
@click.argument("portfolio_file", type=click.Path())
@config_opt
@seed_opt
@engine_opt
@iters_opt
@metric_opt
@format_opt
@click.option("--exclude", "excludes", multiple=True, help="Project id to exclude.")
@click.option("--force-success", "forces", multiple=True,
              help="Project id whose phases all get success probability 1.")
@click.option("--override", "overrides", multiple=True,
              help="PROJECT:FIELD_PATH:VALUE field override.")
@out_opt
def whatif(portfolio_file: str, config_path: str | None, seed: int | None,
           engine: str | None, iterations: int | None, metric: str, fmt: str,
           excludes: tuple[str, ...], forces: tuple[str, ...],
           overrides: tuple[str, ...], out: str | None) -> None:
    """Compare baseline vs what-if PIT tables (with a per-project delta column)."""
    spec = _load_portfolio(portfolio_file)
    cfg = _build_config(config_path, seed, engine, iterations)
    parsed = []
    for raw in overrides:
        parts = raw.split(":")
        if len(parts) != 3:
            raise CliError(f"bad --override {raw!r}; expected PROJECT:FIELD:VALUE",
                           EXIT_VALIDATION)
        parsed.append((parts[0], parts[1], float(parts[2])))
    w = WhatIf(exclusions=frozenset(excludes), forced_success=frozenset(forces),
               overrides=tuple(parsed))
    try:
        scenario_spec = apply_whatif(spec, w)
    except KeyError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    except PortfolioValidationError as exc:
        raise CliError(f"what-if produces an invalid portfolio: {exc}", EXIT_VALIDATION)
    try:
        baseline = run_pit(spec, cfg, METRICS[metric])
        scenario = run_pit(scenario_spec, cfg, METRICS[metric])
    except (MetricDomainError, ValueError) as exc:
        raise CliError(str(exc), EXIT_COMPUTE)

    if fmt == "json":
        _emit(json.dumps({"baseline": pit_to_dict(baseline),
                          "scenario": pit_to_dict(scenario)}, indent=2) + "\n", out)
        return
    if fmt == "svg":
        _emit(render_pit(baseline) + render_pit(scenario), out)
        return
    if fmt == "csv":
        scen = {r.project_id: r for r in scenario.rows}
        lines = [f"# metric={baseline.metric_name} baseline_center={baseline.center_value:.9g} "
                 f"scenario_center={scenario.center_value:.9g}",
                 "project_id,baseline_delta_exclusion,scenario_delta_exclusion,delta"]
        for r in baseline.rows:
            s = scen.get(r.project_id)
            if s is None:
                lines.append(f"{r.project_id},{r.delta_exclusion:.9g},,excluded")
            else:
                lines.append(f"{r.project_id},{r.delta_exclusion:.9g},{s.delta_exclusion:.9g},"
                             f"{s.delta_exclusion - r.delta_exclusion:.9g}")
        _emit("\n".join(lines) + "\n", out)
        return
    text = ("=== baseline ===\n" + render_pit_text(baseline) +
            "=== what-if ===\n" + render_pit_text(scenario))
    _emit(text, out)


@main.command()
@click.argument("portfolio_file", type=click.Path(), required=False)
@config_opt
@click.option("--bind", default="127.0.0.1:8000", show_default=True, help="HOST:PORT to bind.")
@click.option("--state-file", type=click.Path(), default=None,
              help="Persist session state here on shutdown; load on start.")
def serve(portfolio_file: str | None, config_path: str | None, bind: str,
          state_file: str | None) -> None:
    """Run the HTTP what-if service (and static UI, if built)."""
    import uvicorn

    from .service import create_app

    spec = _load_portfolio(portfolio_file) if portfolio_file else None
    cfg = _build_config(config_path, None, None, None)
    app = create_app(portfolio=spec, config=cfg, state_file=state_file)
    host, _, port = bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()
