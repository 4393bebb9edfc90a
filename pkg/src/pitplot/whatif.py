"""What-if transformations: exclusions, forced successes, field overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .model import PortfolioSpec, validate_portfolio
from .tornado import _resolve_field


@dataclass(frozen=True)
class WhatIf:
    exclusions: frozenset[str] = frozenset()
    forced_success: frozenset[str] = frozenset()
    overrides: tuple[tuple[str, str, float], ...] = ()  # (project_id, field_path, value)


def apply_whatif(portfolio: PortfolioSpec, w: WhatIf) -> PortfolioSpec:
    """Return a new validated portfolio with the what-if applied; the input
    is never mutated."""
    known = set(portfolio.ids())
    for pid in sorted(w.exclusions | w.forced_success):
        if pid not in known:
            raise KeyError(f"unknown project id: {pid}")

    result = portfolio
    for pid, path, value in w.overrides:
        _, set_ = _resolve_field(result, pid, path)  # raises KeyError on bad path
        result = set_(result, value)

    if w.forced_success:
        projects = []
        for p in result.projects:
            if p.id in w.forced_success:
                phases = tuple(dataclasses.replace(ph, success_prob=1.0) for ph in p.phases)
                p = dataclasses.replace(p, phases=phases)
            projects.append(p)
        result = dataclasses.replace(result, projects=tuple(projects))

    if w.exclusions:
        projects = tuple(p for p in result.projects if p.id not in w.exclusions)
        result = dataclasses.replace(result, projects=projects)

    return validate_portfolio(result)


def whatif_from_dict(d: dict) -> WhatIf:
    return WhatIf(
        exclusions=frozenset(d.get("exclusions", [])),
        forced_success=frozenset(d.get("forced_success", [])),
        overrides=tuple(
            (str(o["project_id"]), str(o["field_path"]), float(o["value"]))
            for o in d.get("overrides", [])
        ),
    )
