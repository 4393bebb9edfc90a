"""Cash-flow generation: seeded Monte Carlo plus exact closed-form expectations.

The two paths implement the same phase-gate model and serve as mutual
oracles: phases run back-to-back from year 0, each phase's cost is spread
uniformly over its years, a Bernoulli trial at phase end gates progression,
and full success launches the revenue curve the year after Reg ends.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .model import PortfolioSpec, ProjectSpec, SimConfig


@dataclass(frozen=True)
class CashFlowSet:
    project_id: str
    horizon_years: int
    iterations: int
    cost: np.ndarray            # [J, T] discounted
    revenue: np.ndarray         # [J, T] discounted
    nominal_cost: np.ndarray    # [J, T]
    nominal_revenue: np.ndarray  # [J, T]
    success: np.ndarray         # [J] bool


@dataclass(frozen=True)
class AnalyticExpectation:
    project_id: str
    expected_revenue: float
    expected_cost: float
    success_prob: float
    conditional_revenue: float
    conditional_cost: float


def discount_factors(q: float, horizon: int) -> np.ndarray:
    """V_t = 1/(1+q)^t for t = 0..horizon-1; year 0 undiscounted."""
    return (1.0 + q) ** -np.arange(horizon, dtype=float)


def revenue_curve(project: ProjectSpec, config: SimConfig) -> np.ndarray:
    """Nominal annual revenue for the market years, flat at peak with an
    optional linear ramp over the first ramp_years."""
    n = config.market_years
    curve = np.full(n, project.peak_sales, dtype=float)
    if config.ramp_years > 0:
        ramp = np.arange(1, config.ramp_years + 1) / config.ramp_years
        curve[: config.ramp_years] = project.peak_sales * ramp
    return curve


def project_horizon(project: ProjectSpec, config: SimConfig) -> int:
    return project.total_duration + config.market_years


def _substream(seed: int, project_id: str) -> np.random.Generator:
    # keyed by project id so reordering the portfolio file cannot change results
    digest = hashlib.sha256(project_id.encode()).digest()
    words = [int.from_bytes(digest[i:i + 4], "big") for i in range(0, 16, 4)]
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), *words]))


def simulate_project(
    project: ProjectSpec,
    config: SimConfig,
    rng: np.random.Generator | None = None,
    horizon: int | None = None,
) -> CashFlowSet:
    """Run J seeded iterations of the phase-gate model for one project."""
    if rng is None:
        rng = _substream(config.seed, project.id)
    J = config.iterations
    T = horizon if horizon is not None else project_horizon(project, config)

    nominal_cost = np.zeros((J, T))
    nominal_revenue = np.zeros((J, T))

    # one uniform draw per (iteration, phase); trial at phase END
    n_phases = len(project.phases)
    draws = rng.random((J, n_phases))
    passed = np.empty((J, n_phases), dtype=bool)
    for h, ph in enumerate(project.phases):
        passed[:, h] = draws[:, h] < ph.success_prob

    reached = np.ones(J, dtype=bool)  # phase h is entered iff all earlier passed
    year = 0
    for h, ph in enumerate(project.phases):
        annual = ph.cost_total / ph.duration_years
        nominal_cost[reached, year:year + ph.duration_years] = annual
        reached = reached & passed[:, h]
        year += ph.duration_years

    success = reached
    curve = revenue_curve(project, config)
    launch = project.total_duration
    nominal_revenue[np.ix_(success, range(launch, launch + config.market_years))] = curve

    V = discount_factors(config.discount_rate, T)
    return CashFlowSet(
        project_id=project.id,
        horizon_years=T,
        iterations=J,
        cost=nominal_cost * V,
        revenue=nominal_revenue * V,
        nominal_cost=nominal_cost,
        nominal_revenue=nominal_revenue,
        success=success,
    )


def simulate_portfolio(portfolio: PortfolioSpec, config: SimConfig) -> list[CashFlowSet]:
    """Simulate every project on an independent substream; common horizon."""
    horizon = max(project_horizon(p, config) for p in portfolio.projects)
    return [simulate_project(p, config, horizon=horizon) for p in portfolio.projects]


def analytic_expectation(project: ProjectSpec, config: SimConfig) -> AnalyticExpectation:
    """Exact expectations of the simulated model (timing is deterministic)."""
    q = config.discount_rate
    reach = 1.0
    expected_cost = 0.0
    conditional_cost = 0.0
    year = 0
    for ph in project.phases:
        annual = ph.cost_total / ph.duration_years
        disc = sum(annual / (1.0 + q) ** t for t in range(year, year + ph.duration_years))
        expected_cost += reach * disc
        conditional_cost += disc
        reach *= ph.success_prob
        year += ph.duration_years

    curve = revenue_curve(project, config)
    launch = project.total_duration
    conditional_revenue = sum(
        float(curve[k]) / (1.0 + q) ** (launch + k) for k in range(config.market_years)
    )
    return AnalyticExpectation(
        project_id=project.id,
        expected_revenue=reach * conditional_revenue,
        expected_cost=expected_cost,
        success_prob=reach,
        conditional_revenue=conditional_revenue,
        conditional_cost=conditional_cost,
    )


def export_ledger(cf: CashFlowSet) -> str:
    """Raw per-(iteration, year) ledger as CSV for external audit."""
    lines = ["project_id,iteration,year,nominal_cost,cost,nominal_revenue,revenue,success"]
    for j in range(cf.iterations):
        for t in range(cf.horizon_years):
            lines.append(
                f"{cf.project_id},{j},{t},{cf.nominal_cost[j, t]:.10g},{cf.cost[j, t]:.10g},"
                f"{cf.nominal_revenue[j, t]:.10g},{cf.revenue[j, t]:.10g},{int(cf.success[j])}"
            )
    return "\n".join(lines) + "\n"
