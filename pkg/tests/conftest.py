import pytest

from pitplot.model import (
    PhaseSpec,
    ProjectSpec,
    PortfolioSpec,
    SimConfig,
    fixture_path,
    load_portfolio,
    validate_portfolio,
)


@pytest.fixture(scope="session")
def table1():
    return validate_portfolio(load_portfolio(fixture_path("paper_table1.json")))


@pytest.fixture(scope="session")
def project4(table1):
    return table1.project("P4")


@pytest.fixture
def analytic_config():
    return SimConfig(engine="analytic")


@pytest.fixture
def mc_config():
    return SimConfig(iterations=200_000, engine="monte_carlo")


def make_project(pid="X", phases=None, peak_sales=100.0):
    phases = phases or [PhaseSpec("Reg", 1, 40.0, 1.0)]
    return ProjectSpec(id=pid, name=pid, phases=tuple(phases), peak_sales=peak_sales)


def make_portfolio(*projects):
    return PortfolioSpec(name="test", projects=tuple(projects))
