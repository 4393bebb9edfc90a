"""Risk-adjusted totals, portfolio metrics and the PIT bar computations.

A PIT row pairs two counterfactuals per project: the metric with the project
excluded (exclusion bar) and the metric with the project's launch
conditioned as certain (success bar), each relative to the portfolio value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .engine import AnalyticExpectation, CashFlowSet


class MetricDomainError(ValueError):
    """Metric evaluated outside its domain (e.g. PI with zero cost)."""


@dataclass(frozen=True)
class Totals:
    revenue: float
    cost: float
    scope: str = "project"


@dataclass(frozen=True)
class MetricDef:
    name: str
    evaluate: Callable[[Totals], float]
    additive: bool


def discount_factor(q: float, t: int) -> float:
    if q < 0 or t < 0:
        raise ValueError("discount_factor requires q >= 0 and t >= 0")
    return 1.0 / (1.0 + q) ** t


def productivity_index(t: Totals) -> float:
    if t.cost <= 0:
        raise MetricDomainError(f"PI undefined for zero cost ({t.scope})")
    return (t.revenue - t.cost) / t.cost


def enpv(t: Totals) -> float:
    return t.revenue - t.cost


METRICS: dict[str, MetricDef] = {
    "pi": MetricDef("PI", productivity_index, additive=False),
    "enpv": MetricDef("eNPV", enpv, additive=True),
}


@dataclass(frozen=True)
class ProjectOutcome:
    """Per-project aggregates feeding the PIT computation: risk-adjusted
    totals plus success-conditional totals (unavailable when no iteration
    succeeded)."""
    project_id: str
    revenue: float
    cost: float
    cond_revenue: float
    cond_cost: float
    success_available: bool

    @property
    def totals(self) -> Totals:
        return Totals(self.revenue, self.cost, scope=f"project({self.project_id})")


def project_totals(cf: CashFlowSet) -> Totals:
    return Totals(
        revenue=float(cf.revenue.sum() / cf.iterations),
        cost=float(cf.cost.sum() / cf.iterations),
        scope=f"project({cf.project_id})",
    )


def portfolio_totals(all_totals: Sequence[Totals]) -> Totals:
    return Totals(
        revenue=sum(t.revenue for t in all_totals),
        cost=sum(t.cost for t in all_totals),
        scope="portfolio",
    )


def exclusion_totals(outcomes: Sequence[ProjectOutcome], project_id: str) -> Totals:
    if len(outcomes) < 2:
        raise ValueError("exclusion undefined for a single-project portfolio")
    rest = [o for o in outcomes if o.project_id != project_id]
    if len(rest) == len(outcomes):
        raise KeyError(f"unknown project id: {project_id}")
    return Totals(
        revenue=sum(o.revenue for o in rest),
        cost=sum(o.cost for o in rest),
        scope=f"portfolio_excluding({project_id})",
    )


def success_conditional_totals(outcomes: Sequence[ProjectOutcome], project_id: str) -> Totals:
    target = next((o for o in outcomes if o.project_id == project_id), None)
    if target is None:
        raise KeyError(f"unknown project id: {project_id}")
    if not target.success_available:
        raise ValueError(f"success bar not estimable for project {project_id}")
    rest = [o for o in outcomes if o.project_id != project_id]
    return Totals(
        revenue=sum(o.revenue for o in rest) + target.cond_revenue,
        cost=sum(o.cost for o in rest) + target.cond_cost,
        scope=f"portfolio_given_success({project_id})",
    )


def outcome_from_cashflows(cf: CashFlowSet) -> ProjectOutcome:
    n_success = int(cf.success.sum())
    if n_success > 0:
        cond_rev = float(cf.revenue[cf.success].sum() / n_success)
        cond_cost = float(cf.cost[cf.success].sum() / n_success)
    else:
        cond_rev = cond_cost = float("nan")
    return ProjectOutcome(
        project_id=cf.project_id,
        revenue=float(cf.revenue.sum() / cf.iterations),
        cost=float(cf.cost.sum() / cf.iterations),
        cond_revenue=cond_rev,
        cond_cost=cond_cost,
        success_available=n_success > 0,
    )


def outcome_from_analytic(ae: AnalyticExpectation) -> ProjectOutcome:
    return ProjectOutcome(
        project_id=ae.project_id,
        revenue=ae.expected_revenue,
        cost=ae.expected_cost,
        cond_revenue=ae.conditional_revenue,
        cond_cost=ae.conditional_cost,
        success_available=ae.success_prob > 0,
    )


@dataclass(frozen=True)
class PitRow:
    project_id: str
    delta_exclusion: float
    delta_success: float | None
    project_metric: float | None
    success_available: bool
    note: str = ""


@dataclass(frozen=True)
class PitData:
    metric_name: str
    center_value: float
    rows: tuple[PitRow, ...]


def compute_pit(outcomes: Sequence[ProjectOutcome], metric: MetricDef) -> PitData:
    if len(outcomes) < 2:
        raise ValueError("PIT requires at least two projects (exclusion undefined)")
    center = metric.evaluate(portfolio_totals([o.totals for o in outcomes]))

    rows: list[PitRow] = []
    for o in outcomes:
        notes: list[str] = []
        delta_exclusion = metric.evaluate(exclusion_totals(outcomes, o.project_id)) - center

        delta_success: float | None = None
        if o.success_available:
            try:
                delta_success = metric.evaluate(
                    success_conditional_totals(outcomes, o.project_id)) - center
            except MetricDomainError as exc:
                notes.append(str(exc))
        else:
            notes.append(f"success bar not estimable for project {o.project_id}")

        try:
            project_metric: float | None = metric.evaluate(o.totals)
        except MetricDomainError as exc:
            project_metric = None
            notes.append(str(exc))

        rows.append(PitRow(
            project_id=o.project_id,
            delta_exclusion=delta_exclusion,
            delta_success=delta_success,
            project_metric=project_metric,
            success_available=o.success_available and delta_success is not None,
            note="; ".join(notes),
        ))

    rows.sort(key=lambda r: (r.delta_exclusion, r.project_id))
    return PitData(metric_name=metric.name, center_value=center, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Tabular serialization (shared by CLI and service)


def pit_to_dict(data: PitData) -> dict:
    return {
        "metric": data.metric_name,
        "center_value": data.center_value,
        "rows": [
            {
                "rank": k,
                "project_id": r.project_id,
                "delta_exclusion": r.delta_exclusion,
                "delta_success": r.delta_success,
                "project_metric": r.project_metric,
                "success_available": r.success_available,
                "note": r.note,
            }
            for k, r in enumerate(data.rows)
        ],
    }


def pit_to_csv(data: PitData) -> str:
    lines = [f"# metric={data.metric_name} center={data.center_value:.9g}",
             "rank,project_id,delta_exclusion,delta_success,project_metric,flags"]
    for k, r in enumerate(data.rows):
        ds = f"{r.delta_success:.9g}" if r.delta_success is not None else ""
        pm = f"{r.project_metric:.9g}" if r.project_metric is not None else ""
        flag = "" if r.success_available else "success_unavailable"
        lines.append(f"{k},{r.project_id},{r.delta_exclusion:.9g},{ds},{pm},{flag}")
    return "\n".join(lines) + "\n"
