"""测试 Flask API"""
import pytest

import app as app_module
from services.report_storage_service import ReportStorageService


@pytest.fixture
def client(monkeypatch, tmp_path):
    storage = ReportStorageService(str(tmp_path))
    monkeypatch.setattr(app_module, "storage_service", storage)
    monkeypatch.setattr(app_module.verification_controller, "storage_service", storage)
    app_module.app.config["TESTING"] = True
    with app_module.app.test_client() as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "healthy"


def test_info_and_suites(client):
    info = client.get("/api/info").get_json()
    assert info["defaults"]["seed"] == app_module.get_settings().seed
    suites = client.get("/api/suites").get_json()
    assert suites[-1] == "all"
    assert "parser" in suites


def test_eval_success(client):
    response = client.post("/api/expression/eval", json={"expression": "z1 ** z2"})
    assert response.status_code == 200
    assert response.get_json()["kind"] == "algebra"


def test_eval_errors(client):
    assert client.post("/api/expression/eval", json={}).status_code == 400
    assert client.post("/api/expression/eval", data="not json").status_code == 400
    response = client.post("/api/expression/eval", json={"expression": "z1 + * z2"})
    assert response.status_code == 400
    assert response.get_json()["status"] == "syntax_error"
    response = client.post("/api/expression/eval", json={"expression": "z1", "deformed": "maybe"})
    assert response.status_code == 400
    response = client.post("/api/expression/eval", json={"expression": "1/0"})
    assert response.status_code == 400
    assert response.get_json()["status"] == "syntax_error"


def test_verify_suite(client):
    response = client.post("/api/verify/scalars", json={"seed": 9})
    assert response.status_code == 200
    report = response.get_json()
    assert report["status"] == "passed"
    assert report["seed"] == 9


def test_verify_tampered(client):
    response = client.post("/api/verify/strong-connection", json={"nmax": 1, "tamper": True})
    assert response.status_code == 200
    assert response.get_json()["status"] == "failed"


def test_verify_bad_requests(client):
    response = client.post("/api/verify/no-such-suite", json={})
    assert response.status_code == 404
    assert response.get_json()["status"] == "error"
    assert client.post("/api/verify/scalars", json={"nmax": 99}).status_code == 400
    assert client.post("/api/verify/scalars", json={"colour": 1}).status_code == 200


def test_history_and_stats(client):
    assert client.get("/api/history").get_json() == []
    client.post("/api/verify/scalars", json={})
    client.post("/api/verify/strong-connection", json={"nmax": 1, "tamper": True})
    history = client.get("/api/history").get_json()
    assert [entry["suite_id"] for entry in history] == ["scalars", "strong-connection"]
    stats = client.get("/api/stats").get_json()
    assert stats["counts"] == {"passed": 1, "failed": 1, "error": 0, "total": 2}
    assert stats["wall_time_s"]["count"] == 2
