import dataclasses
import math

import numpy as np
import pytest

from conftest import make_portfolio, make_project
from pitplot.engine import (
    analytic_expectation,
    discount_factors,
    export_ledger,
    simulate_portfolio,
    simulate_project,
)
from pitplot.model import PhaseSpec, SimConfig


def test_single_phase_certain_project():
    # {Reg: D=1, C=40, P=1}, peak 100, N_m=2, q=0, J=1
    proj = make_project("R", [PhaseSpec("Reg", 1, 40.0, 1.0)], peak_sales=100.0)
    cfg = SimConfig(iterations=1, market_years=2, engine="monte_carlo")
    cf = simulate_project(proj, cfg)
    assert cf.cost.tolist() == [[40.0, 0.0, 0.0]]
    assert cf.revenue.tolist() == [[0.0, 100.0, 100.0]]
    assert cf.success.tolist() == [True]


def test_bernoulli_gate_mean_within_three_se():
    proj = make_project("R", [PhaseSpec("Reg", 1, 40.0, 0.5)], peak_sales=100.0)
    cfg = SimConfig(iterations=100_000, market_years=2, engine="monte_carlo")
    cf = simulate_project(proj, cfg)
    mean_rev = cf.revenue.sum() / cfg.iterations
    # per-iteration revenue is 200 on success; mean = 200 * p_hat
    se = 200.0 * math.sqrt(0.25 / cfg.iterations)
    assert abs(mean_rev - 100.0) <= 3 * se


def test_project4_mc_matches_closed_form(project4, mc_config):
    cf = simulate_project(project4, mc_config)
    mean_cost = cf.cost.sum() / mc_config.iterations
    mean_rev = cf.revenue.sum() / mc_config.iterations
    assert mean_cost == pytest.approx(528.0, rel=0.005)
    assert mean_rev == pytest.approx(2660.0, rel=0.005)


def test_project4_analytic_exact(project4, analytic_config):
    ae = analytic_expectation(project4, analytic_config)
    assert ae.expected_cost == pytest.approx(528.0)
    assert ae.expected_revenue == pytest.approx(2660.0)
    assert ae.success_prob == pytest.approx(0.665)
    assert ae.conditional_revenue == pytest.approx(4000.0)
    assert ae.conditional_cost == pytest.approx(540.0)


def test_analytic_certainty_limit():
    proj = make_project("C", [PhaseSpec("Ph3", 2, 200.0, 1.0), PhaseSpec("Reg", 1, 40.0, 1.0)],
                        peak_sales=50.0)
    ae = analytic_expectation(proj, SimConfig(market_years=10))
    assert ae.expected_cost == pytest.approx(240.0)
    assert ae.expected_revenue == pytest.approx(500.0)


def test_analytic_expected_revenue_decomposition(table1, analytic_config):
    for proj in table1.projects:
        ae = analytic_expectation(proj, analytic_config)
        assert ae.expected_revenue == pytest.approx(ae.success_prob * ae.conditional_revenue)


def test_huge_discount_kills_revenue_but_not_year0_cost(project4):
    cfg = SimConfig(discount_rate=1e6)
    ae = analytic_expectation(project4, cfg)
    assert ae.expected_revenue == pytest.approx(0.0, abs=1e-12)
    # year-0 share of Ph3 cost is undiscounted
    assert ae.expected_cost >= 500.0 / 3


def test_mc_vs_analytic_all_table1_projects(table1, mc_config):
    for proj in table1.projects:
        cf = simulate_project(proj, mc_config)
        ae = analytic_expectation(proj, mc_config)
        mean_rev = cf.revenue.sum() / mc_config.iterations
        mean_cost = cf.cost.sum() / mc_config.iterations
        assert mean_rev == pytest.approx(ae.expected_revenue, rel=0.005), proj.id
        assert mean_cost == pytest.approx(ae.expected_cost, rel=0.005), proj.id


def test_success_fraction_within_four_se(table1, mc_config):
    J = mc_config.iterations
    for proj in table1.projects:
        cf = simulate_project(proj, mc_config)
        p = proj.success_prob
        se = math.sqrt(p * (1 - p) / J)
        assert abs(cf.success.mean() - p) <= 4 * se, proj.id


def test_conditional_decomposition_exact(table1):
    cfg = SimConfig(iterations=20_000, engine="monte_carlo")
    cf = simulate_project(table1.project("P5"), cfg)
    n_success = cf.success.sum()
    mean_all = cf.revenue.sum() / cfg.iterations
    mean_given_success = cf.revenue[cf.success].sum() / n_success
    assert mean_all == pytest.approx((n_success / cfg.iterations) * mean_given_success)


def test_failed_iteration_cost_below_success_cost(table1):
    cfg = SimConfig(iterations=10_000, engine="monte_carlo")
    cf = simulate_project(table1.project("P1"), cfg)
    fail_costs = cf.nominal_cost[~cf.success].sum(axis=1)
    success_cost = cf.nominal_cost[cf.success].sum(axis=1)
    assert success_cost.min() == success_cost.max()  # deterministic timing
    assert (fail_costs <= success_cost.min() + 1e-9).all()


def test_revenue_implies_success(table1):
    cfg = SimConfig(iterations=5_000, engine="monte_carlo")
    for cf in simulate_portfolio(table1, cfg):
        rows_with_revenue = (cf.revenue > 0).any(axis=1)
        assert (~rows_with_revenue | cf.success).all()


def test_discount_identity_q0(table1):
    cfg = SimConfig(iterations=1_000, engine="monte_carlo")
    cf = simulate_project(table1.project("P2"), cfg)
    assert (cf.cost == cf.nominal_cost).all()
    assert (cf.revenue == cf.nominal_revenue).all()


def test_discounted_equals_nominal_times_factor(table1):
    cfg = SimConfig(iterations=500, engine="monte_carlo", discount_rate=0.1)
    cf = simulate_project(table1.project("P3"), cfg)
    V = discount_factors(0.1, cf.horizon_years)
    np.testing.assert_allclose(cf.cost, cf.nominal_cost * V)
    np.testing.assert_allclose(cf.revenue, cf.nominal_revenue * V)


def test_failed_phase_truncates_cost(table1):
    cfg = SimConfig(iterations=5_000, engine="monte_carlo")
    p1 = table1.project("P1")  # Ph1 spans years 0-1
    cf = simulate_project(p1, cfg)
    failed_ph1 = cf.nominal_cost[:, 2] == 0  # no Ph2 cost => failed at Ph1 gate
    assert failed_ph1.any()
    assert (cf.nominal_cost[failed_ph1, 2:] == 0).all()
    assert (cf.nominal_cost[failed_ph1, :2] == 50.0).all()  # Ph1 cost fully incurred


def test_portfolio_runs_bit_identical(table1):
    cfg = SimConfig(iterations=2_000, engine="monte_carlo")
    a = simulate_portfolio(table1, cfg)
    b = simulate_portfolio(table1, cfg)
    for cfa, cfb in zip(a, b):
        assert (cfa.cost == cfb.cost).all()
        assert (cfa.revenue == cfb.revenue).all()
        assert (cfa.success == cfb.success).all()


def test_substreams_keyed_by_id_not_position(table1):
    cfg = SimConfig(iterations=2_000, engine="monte_carlo")
    reordered = dataclasses.replace(table1, projects=tuple(reversed(table1.projects)))
    by_id = {cf.project_id: cf for cf in simulate_portfolio(table1, cfg)}
    for cf in simulate_portfolio(reordered, cfg):
        assert (cf.cost == by_id[cf.project_id].cost).all()
        assert (cf.success == by_id[cf.project_id].success).all()


def test_j1_all_certain_equals_analytic(analytic_config):
    proj = make_project("C", [PhaseSpec("Ph3", 2, 100.0, 1.0), PhaseSpec("Reg", 1, 40.0, 1.0)],
                        peak_sales=30.0)
    cfg = SimConfig(iterations=1, engine="monte_carlo", discount_rate=0.1)
    cf = simulate_project(proj, cfg)
    ae = analytic_expectation(proj, dataclasses.replace(analytic_config, discount_rate=0.1))
    assert cf.cost.sum() == pytest.approx(ae.conditional_cost)
    assert cf.revenue.sum() == pytest.approx(ae.conditional_revenue)


def test_ramp_years_curve():
    proj = make_project("R", [PhaseSpec("Reg", 1, 0.0, 1.0)], peak_sales=100.0)
    cfg = SimConfig(iterations=1, market_years=4, ramp_years=2, engine="monte_carlo")
    cf = simulate_project(proj, cfg)
    assert cf.nominal_revenue[0, 1:].tolist() == [50.0, 100.0, 100.0, 100.0]
    ae = analytic_expectation(proj, cfg)
    assert ae.conditional_revenue == pytest.approx(350.0)


def test_export_ledger_shape():
    proj = make_project("L", [PhaseSpec("Reg", 1, 10.0, 1.0)], peak_sales=5.0)
    cfg = SimConfig(iterations=2, market_years=1, engine="monte_carlo")
    text = export_ledger(simulate_project(proj, cfg))
    lines = text.strip().split("\n")
    assert lines[0].startswith("project_id,iteration,year")
    assert len(lines) == 1 + 2 * 2  # header + J*T
