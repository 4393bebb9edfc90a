"""One-at-a-time low/base/high sensitivity analysis (tornado-plot data)."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .engine import analytic_expectation
from .metrics import MetricDef, ProjectOutcome, outcome_from_analytic, compute_pit, portfolio_totals
from .model import PortfolioSpec, SimConfig, validate_portfolio


@dataclass(frozen=True)
class ScenarioVariable:
    name: str
    low: float
    base: float
    high: float

    def __post_init__(self):
        if not (self.low <= self.base <= self.high):
            raise ValueError(f"{self.name}: need low <= base <= high, got "
                             f"{self.low}, {self.base}, {self.high}")


@dataclass(frozen=True)
class TornadoRow:
    variable_name: str
    outcome_low: float
    outcome_base: float
    outcome_high: float

    @property
    def span(self) -> float:
        outs = (self.outcome_low, self.outcome_base, self.outcome_high)
        return max(outs) - min(outs)


def tornado_analysis(
    model: Callable[[Mapping[str, float]], float],
    variables: Sequence[ScenarioVariable],
) -> list[TornadoRow]:
    """Evaluate the model varying one input at a time; rows sorted by span
    descending, ties by name."""
    if not variables:
        raise ValueError("tornado analysis needs at least one variable")
    base_point = {v.name: v.base for v in variables}
    base_outcome = _eval(model, base_point, "base case")

    rows = []
    for v in variables:
        lo = _eval(model, {**base_point, v.name: v.low}, f"{v.name} low")
        hi = _eval(model, {**base_point, v.name: v.high}, f"{v.name} high")
        rows.append(TornadoRow(v.name, lo, base_outcome, hi))
    rows.sort(key=lambda r: (-r.span, r.variable_name))
    return rows


def _eval(model, point, label):
    try:
        return float(model(point))
    except Exception as exc:
        raise RuntimeError(f"model evaluation failed at {label}: {exc}") from exc


# ---------------------------------------------------------------------------
# Portfolio-metric tornado: perturb a single numeric field of the portfolio


@dataclass(frozen=True)
class Perturbation:
    project_id: str
    field_path: str  # e.g. "peak_sales" or "phases[Ph3].success_prob"
    low: float
    high: float


_PHASE_FIELDS = {"duration": "duration_years", "cost": "cost_total",
                 "pos": "success_prob", "duration_years": "duration_years",
                 "cost_total": "cost_total", "success_prob": "success_prob"}


def _resolve_field(portfolio: PortfolioSpec, project_id: str, field_path: str):
    """Return (getter, setter) for a numeric field addressed by path."""
    project = portfolio.project(project_id)  # raises KeyError for unknown id
    if field_path == "peak_sales":
        def get():
            return portfolio.project(project_id).peak_sales

        def set_(pf: PortfolioSpec, value: float) -> PortfolioSpec:
            projects = tuple(
                dataclasses.replace(p, peak_sales=value) if p.id == project_id else p
                for p in pf.projects)
            return dataclasses.replace(pf, projects=projects)
        return get, set_

    if field_path.startswith("phases[") and "]." in field_path:
        phase_id, _, attr = field_path[len("phases["):].partition("].")
        if attr not in _PHASE_FIELDS:
            raise KeyError(f"unknown field path: {field_path}")
        attr = _PHASE_FIELDS[attr]
        if not any(ph.phase_id == phase_id for ph in project.phases):
            raise KeyError(f"project {project_id} has no phase {phase_id}")

        def get():
            ph = next(p for p in portfolio.project(project_id).phases if p.phase_id == phase_id)
            return getattr(ph, attr)

        def set_(pf: PortfolioSpec, value: float) -> PortfolioSpec:
            if attr == "duration_years":
                value = int(value)
            projects = []
            for p in pf.projects:
                if p.id == project_id:
                    phases = tuple(
                        dataclasses.replace(ph, **{attr: value}) if ph.phase_id == phase_id else ph
                        for ph in p.phases)
                    p = dataclasses.replace(p, phases=phases)
                projects.append(p)
            return dataclasses.replace(pf, projects=tuple(projects))
        return get, set_

    raise KeyError(f"unknown field path: {field_path}")


def portfolio_tornado(
    portfolio: PortfolioSpec,
    config: SimConfig,
    metric: MetricDef,
    perturbations: Sequence[Perturbation],
) -> list[TornadoRow]:
    """Tornado over a portfolio metric; each perturbation is one variable with
    base = the field's current value. Uses the analytic engine (no MC noise)."""
    accessors = {}
    variables = []
    for pert in perturbations:
        key = f"{pert.project_id}.{pert.field_path}"
        get, set_ = _resolve_field(portfolio, pert.project_id, pert.field_path)
        accessors[key] = set_
        variables.append(ScenarioVariable(key, pert.low, float(get()), pert.high))

    def model(point: Mapping[str, float]) -> float:
        pf = portfolio
        for key, value in point.items():
            pf = accessors[key](pf, value)
        validate_portfolio(pf)
        outcomes = [outcome_from_analytic(analytic_expectation(p, config)) for p in pf.projects]
        return metric.evaluate(portfolio_totals([o.totals for o in outcomes]))

    return tornado_analysis(model, variables)


# ---------------------------------------------------------------------------
# Scenario-model fixtures (standalone tornado inputs)

_SCENARIO_MODELS: dict[str, Callable[[Mapping[str, float]], float]] = {
    # total production cost: fixed + unit cost * volume
    "total_cost": lambda p: p["fixed_cost"] + p["variable_cost"] * p["items_produced"],
}


def load_scenario_fixture(path: str | Path):
    """Load a scenario-model tornado fixture: named model + variable table."""
    with open(path) as fh:
        doc = json.load(fh)
    model_name = doc["model"]
    if model_name not in _SCENARIO_MODELS:
        raise KeyError(f"unknown scenario model: {model_name}")
    variables = [ScenarioVariable(v["name"], float(v["low"]), float(v["base"]), float(v["high"]))
                 for v in doc["variables"]]
    return _SCENARIO_MODELS[model_name], variables


def tornado_to_dict(rows: Sequence[TornadoRow]) -> dict:
    return {
        "rows": [
            {"rank": k, "variable": r.variable_name, "low": r.outcome_low,
             "base": r.outcome_base, "high": r.outcome_high, "span": r.span}
            for k, r in enumerate(rows)
        ]
    }


def tornado_to_csv(rows: Sequence[TornadoRow]) -> str:
    lines = ["rank,variable,outcome_low,outcome_base,outcome_high,span"]
    for k, r in enumerate(rows):
        lines.append(f"{k},{r.variable_name},{r.outcome_low:.9g},{r.outcome_base:.9g},"
                     f"{r.outcome_high:.9g},{r.span:.9g}")
    return "\n".join(lines) + "\n"
