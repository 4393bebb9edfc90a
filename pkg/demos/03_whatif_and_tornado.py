"""What-if scenarios and classic tornado sensitivity.

Two complementary tools: apply_whatif rebuilds the portfolio with projects
excluded or de-risked and re-runs the PIT analysis; portfolio_tornado
wiggles single input fields low/high and ranks them by impact span.

Run: python3 demos/03_whatif_and_tornado.py
"""

from pitplot import (
    METRICS,
    Perturbation,
    SimConfig,
    WhatIf,
    apply_whatif,
    fixture_path,
    load_portfolio,
    portfolio_tornado,
    validate_portfolio,
)
from pitplot.analysis import run_pit
from pitplot.render import render_tornado_text

portfolio = validate_portfolio(load_portfolio(fixture_path("paper_table1.json")))
config = SimConfig(engine="analytic")

# drop the two termination candidates and compare portfolio efficiency
baseline = run_pit(portfolio, config, METRICS["pi"])
trimmed = apply_whatif(portfolio, WhatIf(exclusions=frozenset({"P1", "P5"})))
scenario = run_pit(trimmed, config, METRICS["pi"])
print(f"portfolio PI: {baseline.center_value:.4f} -> {scenario.center_value:.4f} "
      "after excluding P1 and P5\n")

# guarantee P9's success instead: its success bar collapses to zero
derisked = apply_whatif(portfolio, WhatIf(forced_success=frozenset({"P9"})))
p9 = next(r for r in run_pit(derisked, config, METRICS["pi"]).rows if r.project_id == "P9")
print(f"P9 success bar with launch guaranteed: {p9.delta_success:+.6f}\n")

# tornado over single fields of the big movers, ranked by span
rows = portfolio_tornado(portfolio, config, METRICS["enpv"], [
    Perturbation("P9", "peak_sales", 1100, 1500),
    Perturbation("P9", "phases[Ph3].success_prob", 0.60, 0.80),
    Perturbation("P4", "phases[Ph3].success_prob", 0.63, 0.77),
    Perturbation("P6", "phases[Ph3].cost", 400, 600),
])
print(render_tornado_text(rows))
