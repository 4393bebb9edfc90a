"""End-to-end runs: portfolio + config + metric -> PIT data, either engine."""

from __future__ import annotations

from .engine import analytic_expectation, simulate_portfolio
from .metrics import (
    MetricDef,
    PitData,
    ProjectOutcome,
    compute_pit,
    outcome_from_analytic,
    outcome_from_cashflows,
)
from .model import PortfolioSpec, SimConfig, validate_config, validate_portfolio


def portfolio_outcomes(portfolio: PortfolioSpec, config: SimConfig) -> list[ProjectOutcome]:
    validate_portfolio(portfolio)
    validate_config(config)
    if config.engine == "analytic":
        return [outcome_from_analytic(analytic_expectation(p, config))
                for p in portfolio.projects]
    return [outcome_from_cashflows(cf) for cf in simulate_portfolio(portfolio, config)]


def run_pit(portfolio: PortfolioSpec, config: SimConfig, metric: MetricDef) -> PitData:
    return compute_pit(portfolio_outcomes(portfolio, config), metric)
