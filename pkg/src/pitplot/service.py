"""HTTP facade for the what-if UI: one in-memory session, stateless compute."""

from __future__ import annotations

import json
import threading
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .analysis import run_pit
from .metrics import METRICS, MetricDomainError, pit_to_dict
from .model import (
    PortfolioSpec,
    PortfolioValidationError,
    SimConfig,
    config_from_dict,
    config_to_dict,
    fixture_path,
    load_portfolio,
    portfolio_from_dict,
    portfolio_to_dict,
    validate_config,
    validate_portfolio,
)
from .tornado import Perturbation, portfolio_tornado, tornado_to_dict
from .whatif import apply_whatif, whatif_from_dict

STATIC_DIR = Path(__file__).parent / "static"


class Session:
    """Single-analyst session: current portfolio + config, guarded by a lock.

    Computations snapshot the state at request start, so concurrent reads
    never observe a half-applied write.
    """

    def __init__(self, portfolio: PortfolioSpec | None, config: SimConfig):
        self._lock = threading.Lock()
        self._portfolio = portfolio
        self._config = config

    def snapshot(self) -> tuple[PortfolioSpec | None, SimConfig]:
        with self._lock:
            return self._portfolio, self._config

    def set_portfolio(self, spec: PortfolioSpec) -> None:
        with self._lock:
            self._portfolio = spec

    def set_config(self, cfg: SimConfig) -> None:
        with self._lock:
            self._config = cfg


def _metric(name: str):
    if name not in METRICS:
        raise HTTPException(422, f"unknown metric: {name}")
    return METRICS[name]


def _require_portfolio(session: Session) -> tuple[PortfolioSpec, SimConfig]:
    portfolio, config = session.snapshot()
    if portfolio is None:
        raise HTTPException(404, "no portfolio loaded; PUT /api/portfolio first")
    return portfolio, config


def _echo(config: SimConfig) -> dict:
    return {"engine": config.engine, "seed": config.seed, "config": config_to_dict(config)}


def create_app(portfolio: PortfolioSpec | None = None,
               config: SimConfig | None = None,
               state_file: str | None = None,
               allow_origins: list[str] | None = None) -> FastAPI:
    config = config or SimConfig()
    if portfolio is None and state_file and Path(state_file).exists():
        with open(state_file) as fh:
            state = json.load(fh)
        portfolio = validate_portfolio(portfolio_from_dict(state["portfolio"]))
        config = validate_config(config_from_dict(state["config"]))

    session = Session(portfolio, config)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if state_file:
            pf, cfg = session.snapshot()
            if pf is not None:
                with open(state_file, "w") as fh:
                    json.dump({"portfolio": portfolio_to_dict(pf),
                               "config": config_to_dict(cfg)}, fh, indent=2)

    app = FastAPI(title="pitplot service", version=__version__, lifespan=lifespan)
    app.state.session = session
    app.add_middleware(
        CORSMiddleware,
        allow_origins=allow_origins if allow_origins is not None else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(PortfolioValidationError)
    async def _validation_handler(request, exc: PortfolioValidationError):
        return JSONResponse(status_code=400, content={
            "error": "validation",
            "diagnostics": [
                {"project_id": d.project_id, "field": d.field, "message": d.message}
                for d in exc.diagnostics
            ],
        })

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/portfolio")
    def get_portfolio() -> dict:
        portfolio, config = session.snapshot()
        if portfolio is None:
            raise HTTPException(404, "no portfolio loaded")
        return {"portfolio": portfolio_to_dict(portfolio), "config": config_to_dict(config)}

    @app.put("/api/portfolio")
    def put_portfolio(body: dict) -> dict:
        spec = validate_portfolio(portfolio_from_dict(body))
        session.set_portfolio(spec)
        return {"ok": True, "projects": len(spec.projects)}

    @app.put("/api/config")
    def put_config(body: dict) -> dict:
        cfg = validate_config(config_from_dict(body))
        session.set_config(cfg)
        return {"ok": True, "config": config_to_dict(cfg)}

    @app.post("/api/pit")
    def post_pit(body: dict) -> dict:
        portfolio, config = _require_portfolio(session)
        metric = _metric(body.get("metric", "pi"))
        try:
            data = run_pit(portfolio, config, metric)
        except MetricDomainError as exc:
            raise HTTPException(422, str(exc))
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return {"pit": pit_to_dict(data), **_echo(config)}

    @app.post("/api/whatif")
    def post_whatif(body: dict) -> dict:
        portfolio, config = _require_portfolio(session)
        metric = _metric(body.get("metric", "pi"))
        try:
            scenario_spec = apply_whatif(portfolio, whatif_from_dict(body.get("whatif", body)))
        except KeyError as exc:
            raise HTTPException(404, str(exc))
        try:
            baseline = run_pit(portfolio, config, metric)
            scenario = run_pit(scenario_spec, config, metric)
        except MetricDomainError as exc:
            raise HTTPException(422, str(exc))
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        return {"baseline": pit_to_dict(baseline), "scenario": pit_to_dict(scenario),
                **_echo(config)}

    @app.post("/api/tornado")
    def post_tornado(body: dict) -> dict:
        portfolio, config = _require_portfolio(session)
        metric = _metric(body.get("metric", "pi"))
        try:
            perts = [Perturbation(str(p["project_id"]), str(p["field_path"]),
                                  float(p["low"]), float(p["high"]))
                     for p in body.get("perturbations", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(400, f"malformed perturbations: {exc}")
        if not perts:
            raise HTTPException(400, "perturbations must be a non-empty list")
        try:
            rows = portfolio_tornado(portfolio, config, metric, perts)
        except KeyError as exc:
            raise HTTPException(404, str(exc))
        except (MetricDomainError, RuntimeError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        return {"tornado": tornado_to_dict(rows), **_echo(config)}

    if STATIC_DIR.is_dir():
        app.mount("/", StaticFiles(directory=STATIC_DIR, html=True), name="ui")

    return app


def default_app() -> FastAPI:
    """App preloaded with the bundled ten-project fixture (uvicorn factory)."""
    return create_app(portfolio=validate_portfolio(load_portfolio(fixture_path("paper_table1.json"))))
