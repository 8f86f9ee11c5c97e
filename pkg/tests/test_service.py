"""HTTP service: same handlers as the CLI, HTTP status discipline.

Computation outcomes (ok / fail / guard) come back as HTTP 200 with the
status in the body; malformed requests are 422, either from pydantic or
from the handler usage checks.
"""

import pytest
from fastapi.testclient import TestClient

from schurext.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_hom_roundtrip(client):
    r = client.post("/hom", json={"expr_a": "sym(2)", "expr_b": "wedge(2)",
                                  "p": 2})
    assert r.status_code == 200
    pay = r.json()
    assert pay["status"] == "ok"
    assert pay["dim"] == 1


def test_bad_expression_is_422(client):
    r = client.post("/hom", json={"expr_a": "sym((", "expr_b": "I", "p": 2})
    assert r.status_code == 422
    assert "expected" in r.json()["detail"]


def test_pydantic_validation_is_422(client):
    r = client.post("/hom", json={"expr_a": "I", "p": 2})
    assert r.status_code == 422
    r = client.post("/hom", json={"expr_a": "I", "expr_b": "I", "p": 1})
    assert r.status_code == 422


def test_guard_is_200_with_guard_status(client, tmp_path):
    r = client.post("/ext", json={
        "expr_a": "gamma(2)", "expr_b": "twist(I, 1)", "p": 2, "max_deg": 2,
        "max_layer_dim": 1, "cache_dir": str(tmp_path),
    })
    assert r.status_code == 200
    assert r.json()["status"] == "guard"


def test_verify_endpoint(client):
    r = client.post("/verify", json={"check": "fs-star", "p": 2, "r": 1})
    assert r.status_code == 200
    assert r.json()["report"]["verdict"] == "pass"
    r = client.post("/verify", json={"check": "goldbach"})
    assert r.status_code == 422


def test_oracle_endpoint_weight_forms(client):
    r = client.post("/oracle", json={"expr": "sym(3)", "weight": [2, 1],
                                     "p": 3})
    assert r.status_code == 200
    assert r.json()["dim"] == 1
    r = client.post("/oracle", json={"expr": "box(I, I)",
                                     "weight": [[1], [1]], "p": 2})
    assert r.status_code == 200
    assert r.json()["dim"] == 1


def test_hilbert_endpoint(client):
    r = client.post("/hilbert", json={"group": "o", "dmax": 1,
                                      "closed_form_only": True})
    assert r.status_code == 200
    assert r.json()["table"]["1"] == {"0": 1, "2": 1, "4": 1}


def test_lell_endpoint(client):
    r = client.post("/lell", json={"expr": "sym(2)", "p": 2, "r": 1,
                                   "length": 3})
    assert r.status_code == 200
    assert r.json()["homology_dims"]["2"] == 2


def test_cache_endpoint(client, tmp_path):
    r = client.post("/cache", json={"action": "stats",
                                    "cache_dir": str(tmp_path)})
    assert r.status_code == 200
    assert r.json()["entries"] == 0
