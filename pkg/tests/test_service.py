import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from pitplot.cli import main as cli_main
from pitplot.model import fixture_path, portfolio_to_dict, load_portfolio
from pitplot.service import create_app

TABLE1_DOC = json.loads(fixture_path("paper_table1.json").read_text())


@pytest.fixture
def client():
    with TestClient(create_app()) as c:
        yield c


@pytest.fixture
def loaded(client):
    assert client.put("/api/portfolio", json=TABLE1_DOC).status_code == 200
    return client


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_portfolio_roundtrip(loaded):
    resp = loaded.get("/api/portfolio")
    assert resp.status_code == 200
    assert len(resp.json()["portfolio"]["projects"]) == 10


def test_portfolio_404_before_load(client):
    assert client.get("/api/portfolio").status_code == 404
    assert client.post("/api/pit", json={"metric": "pi"}).status_code == 404


def test_put_invalid_portfolio_400_with_diagnostics(client):
    doc = {"name": "bad", "projects": [
        {"id": "A", "peak_sales": 1,
         "phases": [{"phase": "Reg", "duration": 1, "cost": 1, "pos": 1.5}]}]}
    resp = client.put("/api/portfolio", json=doc)
    assert resp.status_code == 400
    diags = resp.json()["diagnostics"]
    assert any("pos" in d["field"] for d in diags)


def test_put_config(loaded):
    resp = loaded.put("/api/config", json={"engine": "analytic", "discount_rate": 0.1})
    assert resp.status_code == 200
    assert resp.json()["config"]["discount_rate"] == 0.1


def test_pit_matches_cli(loaded):
    resp = loaded.post("/api/pit", json={"metric": "pi"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["engine"] == "analytic"

    cli = CliRunner().invoke(cli_main, ["pit", str(fixture_path("paper_table1.json")),
                                        "--format", "json"])
    cli_doc = json.loads(cli.output)
    assert body["pit"]["center_value"] == cli_doc["center_value"]
    assert body["pit"]["rows"] == cli_doc["rows"]


def test_pit_identical_responses(loaded):
    a = loaded.post("/api/pit", json={"metric": "pi"}).json()
    b = loaded.post("/api/pit", json={"metric": "pi"}).json()
    assert a == b


def test_whatif_does_not_mutate_baseline(loaded):
    before = loaded.get("/api/portfolio").json()
    resp = loaded.post("/api/whatif", json={"metric": "pi",
                                            "whatif": {"exclusions": ["P1", "P5"]}})
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["baseline"]["rows"]) == 10
    assert len(body["scenario"]["rows"]) == 8
    assert body["scenario"]["center_value"] > body["baseline"]["center_value"]
    assert loaded.get("/api/portfolio").json() == before


def test_whatif_unknown_id_404(loaded):
    resp = loaded.post("/api/whatif", json={"whatif": {"exclusions": ["P99"]}})
    assert resp.status_code == 404


def test_whatif_excluding_all_but_one_422(loaded):
    resp = loaded.post("/api/whatif", json={
        "metric": "pi", "whatif": {"exclusions": [f"P{i}" for i in range(1, 10)]}})
    assert resp.status_code == 422
    assert "exclusion undefined" in resp.json()["detail"] or "two projects" in resp.json()["detail"]


def test_whatif_force_success(loaded):
    resp = loaded.post("/api/whatif", json={"metric": "pi",
                                            "whatif": {"forced_success": ["P9"]}})
    row = next(r for r in resp.json()["scenario"]["rows"] if r["project_id"] == "P9")
    assert row["delta_success"] == pytest.approx(0.0, abs=1e-12)


def test_tornado_endpoint(loaded):
    resp = loaded.post("/api/tornado", json={
        "metric": "enpv",
        "perturbations": [{"project_id": "P4", "field_path": "phases[Ph3].success_prob",
                           "low": 0.63, "high": 0.77}]})
    assert resp.status_code == 200
    row = resp.json()["tornado"]["rows"][0]
    assert row["high"] - row["base"] == pytest.approx(0.07 * 3760)


def test_tornado_empty_perturbations_400(loaded):
    assert loaded.post("/api/tornado", json={"perturbations": []}).status_code == 400


def test_unknown_metric_422(loaded):
    assert loaded.post("/api/pit", json={"metric": "irr"}).status_code == 422


def test_response_carries_config_echo(loaded):
    body = loaded.post("/api/pit", json={"metric": "pi"}).json()
    assert {"engine", "seed", "config"} <= set(body)
    assert body["config"]["market_years"] == 10


def test_state_file_persistence(tmp_path):
    state = tmp_path / "state.json"
    with TestClient(create_app(state_file=str(state))) as c:
        c.put("/api/portfolio", json=TABLE1_DOC)
        c.put("/api/config", json={"discount_rate": 0.1})
    assert state.exists()
    with TestClient(create_app(state_file=str(state))) as c:
        resp = c.get("/api/portfolio")
        assert resp.status_code == 200
        assert resp.json()["config"]["discount_rate"] == 0.1


def test_preloaded_app():
    pf = load_portfolio(fixture_path("paper_table1.json"))
    with TestClient(create_app(portfolio=pf)) as c:
        assert len(c.get("/api/portfolio").json()["portfolio"]["projects"]) == 10
