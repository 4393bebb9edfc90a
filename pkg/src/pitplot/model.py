"""Domain types for projects, portfolios and simulation configuration.

All money values are plain floats in millions. Durations are whole years;
the annual time grid is what keeps the closed-form expectations exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable

PHASE_ORDER = ("Ph1", "Ph2", "Ph3", "Reg")

ENGINES = ("monte_carlo", "analytic")


class PortfolioValidationError(ValueError):
    """Raised when a portfolio fails validation; carries all diagnostics."""

    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    project_id: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"[{self.project_id}] {self.field}: {self.message}"


@dataclass(frozen=True)
class PhaseSpec:
    phase_id: str  # one of PHASE_ORDER
    duration_years: int
    cost_total: float
    success_prob: float


@dataclass(frozen=True)
class ProjectSpec:
    id: str
    name: str
    phases: tuple[PhaseSpec, ...]
    peak_sales: float

    @property
    def total_duration(self) -> int:
        return sum(p.duration_years for p in self.phases)

    @property
    def success_prob(self) -> float:
        prod = 1.0
        for p in self.phases:
            prod *= p.success_prob
        return prod


@dataclass(frozen=True)
class PortfolioSpec:
    name: str
    projects: tuple[ProjectSpec, ...]

    def project(self, project_id: str) -> ProjectSpec:
        for p in self.projects:
            if p.id == project_id:
                return p
        raise KeyError(f"unknown project id: {project_id}")

    def ids(self) -> list[str]:
        return [p.id for p in self.projects]


@dataclass(frozen=True)
class SimConfig:
    iterations: int = 1
    seed: int = 20241201
    discount_rate: float = 0.0
    market_years: int = 10
    ramp_years: int = 0
    engine: str = "analytic"


def _validate_phase(pid: str, idx: int, ph: PhaseSpec, out: list[Diagnostic]) -> None:
    label = f"phases[{idx}]"
    if ph.phase_id not in PHASE_ORDER:
        out.append(Diagnostic(pid, f"{label}.phase", f"unknown phase id {ph.phase_id!r}"))
    if not isinstance(ph.duration_years, int) or isinstance(ph.duration_years, bool):
        out.append(Diagnostic(pid, f"{label}.duration", "duration must be a whole number of years"))
    elif ph.duration_years < 1:
        out.append(Diagnostic(pid, f"{label}.duration", f"duration must be >= 1, got {ph.duration_years}"))
    if ph.cost_total < 0:
        out.append(Diagnostic(pid, f"{label}.cost", f"cost must be >= 0, got {ph.cost_total}"))
    if not (0.0 < ph.success_prob <= 1.0):
        out.append(Diagnostic(pid, f"{label}.pos", f"success probability must be in (0, 1], got {ph.success_prob}"))


def validate_portfolio(spec: PortfolioSpec) -> PortfolioSpec:
    """Return the spec unchanged if valid, else raise with ALL diagnostics."""
    diags: list[Diagnostic] = []
    if not spec.projects:
        diags.append(Diagnostic("<portfolio>", "projects", "portfolio has no projects"))
    seen: set[str] = set()
    for proj in spec.projects:
        if proj.id in seen:
            diags.append(Diagnostic(proj.id, "id", "duplicate id"))
        seen.add(proj.id)
        if not proj.phases:
            diags.append(Diagnostic(proj.id, "phases", "phase list is empty"))
        else:
            order = [PHASE_ORDER.index(p.phase_id) for p in proj.phases if p.phase_id in PHASE_ORDER]
            if any(b <= a for a, b in zip(order, order[1:])):
                diags.append(Diagnostic(proj.id, "phases", "phases out of canonical order Ph1->Ph2->Ph3->Reg"))
            if proj.phases[-1].phase_id != "Reg":
                diags.append(Diagnostic(proj.id, "phases", "phase list must end at Reg"))
            for i, ph in enumerate(proj.phases):
                _validate_phase(proj.id, i, ph, diags)
        if proj.peak_sales < 0:
            diags.append(Diagnostic(proj.id, "peak_sales", f"peak sales must be >= 0, got {proj.peak_sales}"))
    if diags:
        raise PortfolioValidationError(diags)
    return spec


def validate_config(cfg: SimConfig) -> SimConfig:
    diags: list[Diagnostic] = []
    if cfg.iterations < 1:
        diags.append(Diagnostic("<config>", "iterations", f"iterations must be >= 1, got {cfg.iterations}"))
    if cfg.discount_rate < 0:
        diags.append(Diagnostic("<config>", "discount_rate", f"discount rate must be >= 0, got {cfg.discount_rate}"))
    if cfg.market_years < 0:
        diags.append(Diagnostic("<config>", "market_years", f"market years must be >= 0, got {cfg.market_years}"))
    if cfg.ramp_years < 0 or cfg.ramp_years > cfg.market_years:
        diags.append(Diagnostic("<config>", "ramp_years", "ramp years must be in [0, market_years]"))
    if cfg.engine not in ENGINES:
        diags.append(Diagnostic("<config>", "engine", f"engine must be one of {ENGINES}, got {cfg.engine!r}"))
    if diags:
        raise PortfolioValidationError(diags)
    return cfg


# ---------------------------------------------------------------------------
# JSON (de)serialization


def _phase_from_dict(d: dict) -> PhaseSpec:
    dur = d["duration"]
    if isinstance(dur, float):
        if dur != int(dur):
            # kept as float so validation reports "whole number" rather than crashing
            return PhaseSpec(d["phase"], dur, float(d["cost"]), float(d["pos"]))  # type: ignore[arg-type]
        dur = int(dur)
    return PhaseSpec(d["phase"], dur, float(d["cost"]), float(d["pos"]))


def portfolio_from_dict(d: dict) -> PortfolioSpec:
    projects = tuple(
        ProjectSpec(
            id=str(p["id"]),
            name=str(p.get("name", p["id"])),
            phases=tuple(_phase_from_dict(ph) for ph in p.get("phases", [])),
            peak_sales=float(p["peak_sales"]),
        )
        for p in d.get("projects", [])
    )
    return PortfolioSpec(name=str(d.get("name", "portfolio")), projects=projects)


def portfolio_to_dict(spec: PortfolioSpec) -> dict:
    return {
        "name": spec.name,
        "projects": [
            {
                "id": p.id,
                "name": p.name,
                "peak_sales": p.peak_sales,
                "phases": [
                    {"phase": ph.phase_id, "duration": ph.duration_years,
                     "cost": ph.cost_total, "pos": ph.success_prob}
                    for ph in p.phases
                ],
            }
            for p in spec.projects
        ],
    }


def config_from_dict(d: dict) -> SimConfig:
    base = SimConfig()
    return SimConfig(
        iterations=int(d.get("iterations", base.iterations)),
        seed=int(d.get("seed", base.seed)),
        discount_rate=float(d.get("discount_rate", base.discount_rate)),
        market_years=int(d.get("market_years", base.market_years)),
        ramp_years=int(d.get("ramp_years", base.ramp_years)),
        engine=str(d.get("engine", base.engine)),
    )


def config_to_dict(cfg: SimConfig) -> dict:
    return asdict(cfg)


def load_portfolio(path: str | Path) -> PortfolioSpec:
    with open(path) as fh:
        return portfolio_from_dict(json.load(fh))


def load_config(path: str | Path) -> SimConfig:
    with open(path) as fh:
        return config_from_dict(json.load(fh))


def fixture_path(name: str) -> Path:
    return Path(__file__).parent / "fixtures" / name
