"""Phase-gated R&D portfolio simulation and Project Impact Tornado analytics."""

__version__ = "0.1.0"

from .engine import AnalyticExpectation, CashFlowSet, analytic_expectation, simulate_portfolio, simulate_project
from .metrics import (
    METRICS,
    MetricDef,
    MetricDomainError,
    PitData,
    PitRow,
    Totals,
    compute_pit,
    discount_factor,
    enpv,
    productivity_index,
)
from .model import (
    PhaseSpec,
    PortfolioSpec,
    PortfolioValidationError,
    ProjectSpec,
    SimConfig,
    fixture_path,
    load_config,
    load_portfolio,
    validate_portfolio,
)
from .tornado import Perturbation, ScenarioVariable, TornadoRow, portfolio_tornado, tornado_analysis
from .whatif import WhatIf, apply_whatif
