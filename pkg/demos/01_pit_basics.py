"""Walkthrough: from a ten-project phase-gated portfolio to a PIT-plot.

Each project carries its remaining phases (duration, cost, success
probability) and a peak-sales level. The engine turns that into
risk-adjusted expected revenue/cost per project, and the PIT computation
asks two counterfactual questions per project:

  * exclusion bar  -- how does the portfolio metric move if we drop it?
  * success bar    -- how does it move if its launch were guaranteed?

Run: python3 demos/01_pit_basics.py
"""

from pitplot import METRICS, SimConfig, fixture_path, load_portfolio, validate_portfolio
from pitplot.analysis import run_pit
from pitplot.render import render_pit_text

portfolio = validate_portfolio(load_portfolio(fixture_path("paper_table1.json")))
config = SimConfig(engine="analytic")  # exact expectations, no MC noise

data = run_pit(portfolio, config, METRICS["pi"])

print(f"portfolio productivity index: {data.center_value:.4f}\n")
print(render_pit_text(data))

print("reading the plot:")
bottom = [r.project_id for r in data.rows[-2:]]
print(f"  bottom rows {bottom} have positive exclusion bars -> dropping them")
print("  would raise the portfolio PI: candidates for termination.")
top_success = sorted(data.rows, key=lambda r: r.delta_success, reverse=True)[:2]
print(f"  largest success bars: {[r.project_id for r in top_success]} -> the most to gain")
print("  from de-risking; candidates for risk-mitigation investment.")
