import pytest
from fastapi.testclient import TestClient

from app.api import app

BASE = "/api/v1"


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_welcome(client):
    response = client.get(f"{BASE}/")
    assert response.status_code == 200
    body = response.json()
    assert body["app_name"] == "psi-calculus"
    assert body["description"].startswith("Exact psi-extended finite operator calculus")
    assert body["defaults"]["preset"] == "classical"
    assert body["suites"][0] == "ghw" and "commutant" in body["suites"]


def test_health(client):
    body = client.get(f"{BASE}/calculus/health").json()
    assert body["status"] == "healthy"
    assert "ghw" in body["suites"] and "commutant" in body["suites"]


def test_table(client):
    response = client.get(f"{BASE}/calculus/table", params={"psi": "q-jackson", "q": "1/2", "cap": 4})
    assert response.status_code == 200
    body = response.json()
    assert body["psi"]["n_psi"] == ["0/1", "1/1", "3/2", "7/4", "15/8"]
    assert body["exp_coeffs"][:3] == ["1/1", "1/1", "2/3"]


def test_table_rejects_bad_config(client):
    assert client.get(f"{BASE}/calculus/table", params={"cap": 2}).status_code == 422
    assert client.get(f"{BASE}/calculus/table", params={"psi": "q-jackson"}).status_code == 422


def test_named_operator(client):
    body = client.get(f"{BASE}/calculus/operator/d_psi", params={"cap": 4}).json()
    assert body["kind"] == "d_psi"
    assert body["shift"] == -1
    # d_psi x^2 = 2 x under the classical preset
    assert body["matrix"][2][:2] == ["0/1", "2/1"]
    assert set(body) == {"kind", "psi", "cap", "valid_degree", "shift", "matrix"}
    assert body["psi"] == "classical"
    assert client.get(f"{BASE}/calculus/operator/nonsense", params={"cap": 4}).status_code == 422


def test_classify(client):
    body = client.post(f"{BASE}/calculus/classify", json={"cap": 8, "Q": "d_x_hat_d"}).json()
    assert body["is_series"] and body["preset"] == "dxd"
    body = client.post(f"{BASE}/calculus/classify", json={"cap": 8, "Q": "non-psi-series"}).json()
    assert body["failure_witness"] == [4, 3]


def test_classify_error_maps_to_422(client):
    response = client.post(f"{BASE}/calculus/classify", json={"cap": 6, "Q": "x_hat"})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("NotDegreeLowering")


def test_basic_seq(client):
    body = client.post(f"{BASE}/calculus/basic-seq", json={"cap": 6, "delta": "forward-difference", "M": 3}).json()
    assert body["verdict"] == "AGREE"
    assert body["routes"]["lagrange3"]["polys"][3] == ["0/1", "2/1", "-3/1", "1/1"]


def test_expand(client):
    body = client.post(f"{BASE}/calculus/expand", json={"cap": 8, "T": "x_hat", "M": 4}).json()
    assert body["verified"]
    assert body["q_polys"][0] == ["0/1", "1/1"]


def test_verify(client):
    response = client.post(
        f"{BASE}/calculus/verify",
        json={"cap": 8, "psi": "q-jackson", "q": "1/3", "suites": ["bridge", "special"], "trials": 2},
    )
    assert response.status_code == 200
    assert [s["status"] for s in response.json()["suites"]] == ["PASS", "PASS"]


def test_verify_unknown_suite(client):
    response = client.post(f"{BASE}/calculus/verify", json={"cap": 8, "suites": ["nope"]})
    assert response.status_code == 422
