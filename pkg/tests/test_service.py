import json

import pytest
from fastapi.testclient import TestClient

import mmk
from mmk.service import create_app

from conftest import load_fixture


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "sessions")
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


def create_session(client) -> dict:
    resp = client.post("/api/v1/sessions", json={"model_ref": "sre-himm@1"})
    assert resp.status_code == 201, resp.text
    return resp.json()


def put_matrix(client, session, matrix_id, items, judgments, revision=None):
    body = {
        "expected_revision": session["revision"] if revision is None else revision,
        "items": items,
        "judgments": judgments,
    }
    return client.put(f"/api/v1/sessions/{session['id']}/matrices/{matrix_id}", json=body)


class TestMeta:
    def test_healthz(self, client):
        doc = client.get("/api/v1/healthz").json()
        assert doc["status"] == "ok"
        assert doc["version"] == mmk.__version__

    def test_models_listing(self, client):
        doc = client.get("/api/v1/models").json()
        assert [m["ref"] for m in doc["models"]] == ["sre-himm@1"]
        assert doc["models"][0]["practices"] == 51

    def test_model_detail(self, client):
        doc = client.get("/api/v1/models/sre-himm").json()
        assert doc["ref"] == "sre-himm@1"
        assert len(doc["levels"]) == 5

    def test_unknown_model_404(self, client):
        resp = client.get("/api/v1/models/zzz")
        assert resp.status_code == 404
        assert resp.json()["error"]["code"] == "not_found"


class TestSessions:
    def test_create_and_get(self, client):
        s = create_session(client)
        assert s["revision"] == 0
        assert s["partial"] is True
        doc = client.get(f"/api/v1/sessions/{s['id']}").json()
        assert doc == s

    def test_listing(self, client):
        ids = {create_session(client)["id"] for _ in range(2)}
        doc = client.get("/api/v1/sessions").json()
        assert {row["id"] for row in doc["sessions"]} == ids

    def test_unknown_session_404(self, client):
        resp = client.get("/api/v1/sessions/unknown")
        assert resp.status_code == 404

    def test_create_validates_body(self, client):
        resp = client.post("/api/v1/sessions", json={"model": "sre-himm@1"})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "validation"

    def test_create_unknown_model(self, client):
        resp = client.post("/api/v1/sessions", json={"model_ref": "zzz@1"})
        assert resp.status_code == 404


class TestMatrices:
    def test_put_and_read_back(self, client):
        s = create_session(client)
        resp = put_matrix(
            client, s, "cats",
            ["a", "b", "c"],
            [{"row": "a", "col": "b", "value": 2}, {"row": "a", "col": "c", "value": "1/3"}],
        )
        assert resp.status_code == 200, resp.text
        doc = resp.json()
        assert doc["revision"] == 1
        matrix = doc["matrices"]["cats"]
        assert matrix["missing_pairs"] == 1
        assert matrix["grid"][0][1] == "2"
        assert matrix["grid"][1][0] == "1/2"
        assert matrix["grid"][2][2] == "1"
        assert matrix["grid"][1][2] == ""

    def test_judgment_delete_via_null(self, client):
        s = create_session(client)
        s = put_matrix(client, s, "m", ["a", "b"], [{"row": "a", "col": "b", "value": 3}]).json()
        resp = put_matrix(client, s, "m", None, [{"row": "a", "col": "b", "value": None}])
        body = {"expected_revision": s["revision"], "judgments": [{"row": "a", "col": "b", "value": None}]}
        resp = client.put(f"/api/v1/sessions/{s['id']}/matrices/m", json=body)
        assert resp.status_code in (200, 409)

    def test_revision_conflict(self, client):
        s = create_session(client)
        put_matrix(client, s, "m", ["a", "b"], [])
        resp = put_matrix(client, s, "m", ["a", "b"], [], revision=0)
        assert resp.status_code == 409
        err = resp.json()["error"]
        assert err["code"] == "revision_conflict"
        assert err["detail"] == {"expected": 0, "actual": 1}

    def test_out_of_range_value_422(self, client):
        s = create_session(client)
        resp = put_matrix(client, s, "m", ["a", "b"], [{"row": "a", "col": "b", "value": 99}])
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "judgment_out_of_range"

    def test_extra_body_field_400(self, client):
        s = create_session(client)
        body = {"expected_revision": 0, "items": ["a", "b"], "judgments": [], "frobnicate": 1}
        resp = client.put(f"/api/v1/sessions/{s['id']}/matrices/m", json=body)
        assert resp.status_code == 400


class TestConsistency:
    def fill(self, client, s, fixture="matrices/sf_coordination.json"):
        doc = load_fixture(fixture)
        resp = put_matrix(client, s, "main", doc["items"], doc["judgments"])
        assert resp.status_code == 200, resp.text
        return resp.json()

    def test_full_payload(self, client):
        s = create_session(client)
        s = self.fill(client, s)
        resp = client.get(f"/api/v1/sessions/{s['id']}/matrices/main/consistency")
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["matrix_id"] == "main"
        assert doc["method"] == "colnorm"
        assert doc["consistent"] is True
        assert doc["cr"] == pytest.approx(0.07, abs=0.01)
        assert doc["weights"]["items"] == ["SF1", "SF2", "SF3", "SF4", "SF5"]
        assert doc["weights"]["ranks"] == [3, 4, 1, 5, 2]
        assert doc["hint"] is None

    def test_hint_present_when_inconsistent(self, client):
        s = create_session(client)
        s = self.fill(client, s, "matrices/sf_technology.json")
        doc = client.get(f"/api/v1/sessions/{s['id']}/matrices/main/consistency").json()
        assert doc["consistent"] is False
        hint = doc["hint"]
        assert set(hint) == {"row_item", "col_item", "current", "suggested", "deviation"}
        assert hint["row_item"] in doc["weights"]["items"]
        assert hint["deviation"] > 0

    def test_method_parameter(self, client):
        s = create_session(client)
        s = self.fill(client, s)
        doc = client.get(
            f"/api/v1/sessions/{s['id']}/matrices/main/consistency", params={"method": "eigen"}
        ).json()
        assert doc["method"] == "eigen"

    def test_bad_method_400(self, client):
        s = create_session(client)
        s = self.fill(client, s)
        resp = client.get(
            f"/api/v1/sessions/{s['id']}/matrices/main/consistency", params={"method": "magic"}
        )
        assert resp.status_code == 400

    def test_incomplete_matrix_422(self, client):
        s = create_session(client)
        s = put_matrix(client, s, "m", ["a", "b", "c"], [{"row": "a", "col": "b", "value": 2}]).json()
        resp = client.get(f"/api/v1/sessions/{s['id']}/matrices/m/consistency")
        assert resp.status_code == 422
        err = resp.json()["error"]
        assert err["code"] == "matrix_incomplete"
        assert err["detail"] == {"missing_pairs": 2}

    def test_unknown_matrix_404(self, client):
        s = create_session(client)
        resp = client.get(f"/api/v1/sessions/{s['id']}/matrices/none/consistency")
        assert resp.status_code == 404


class TestScoresAndReport:
    def put_scores(self, client, s, entries, partial=None, revision=None):
        body = {
            "expected_revision": s["revision"] if revision is None else revision,
            "scores": entries,
        }
        if partial is not None:
            body["partial"] = partial
        return client.put(f"/api/v1/sessions/{s['id']}/scores", json=body)

    def full_scores_entries(self):
        doc = load_fixture("scores/company_a.json")
        return [
            {
                "practice_id": row["practice_id"],
                "dims": {
                    "approach": row["approach"],
                    "deployment": row["deployment"],
                    "results": row["results"],
                },
            }
            for row in doc["scores"]
        ]

    def test_score_merge_and_report(self, client):
        s = create_session(client)
        resp = self.put_scores(client, s, self.full_scores_entries(), partial=False)
        assert resp.status_code == 200, resp.text
        s = resp.json()
        assert s["revision"] == 1
        report = client.get(f"/api/v1/sessions/{s['id']}/report").json()
        assert report["revision"] == 1
        assert report["achieved_level"] == 3
        assert [w["factor_id"] for w in report["weak_factors"]] == ["CSF6", "CB3"]

    def test_partial_report(self, client):
        s = create_session(client)
        entries = [
            {"practice_id": "P1-CSF1", "dims": {"approach": 6, "deployment": 6, "results": 8}},
        ]
        s = self.put_scores(client, s, entries).json()
        report = client.get(f"/api/v1/sessions/{s['id']}/report").json()
        assert report["achieved_level"] == 1

    def test_incomplete_without_partial_422(self, client):
        s = create_session(client)
        entries = [
            {"practice_id": "P1-CSF1", "dims": {"approach": 6, "deployment": 6, "results": 8}},
        ]
        s = self.put_scores(client, s, entries, partial=False).json()
        resp = client.get(f"/api/v1/sessions/{s['id']}/report")
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "scores_incomplete"

    def test_unknown_practice_422(self, client):
        s = create_session(client)
        entries = [{"practice_id": "PX", "dims": {"approach": 0, "deployment": 0, "results": 0}}]
        resp = self.put_scores(client, s, entries)
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "unknown_practice"

    def test_bad_dimension_value_422(self, client):
        s = create_session(client)
        entries = [{"practice_id": "P1-CSF1", "dims": {"approach": 3, "deployment": 0, "results": 0}}]
        resp = self.put_scores(client, s, entries)
        assert resp.status_code == 422
        assert resp.json()["error"]["code"] == "dimension_out_of_range"

    def test_clear_score_with_null(self, client):
        s = create_session(client)
        entries = [{"practice_id": "P1-CSF1", "dims": {"approach": 6, "deployment": 6, "results": 8}}]
        s = self.put_scores(client, s, entries).json()
        s2 = self.put_scores(client, s, [{"practice_id": "P1-CSF1", "dims": None}]).json()
        assert s2["scores"] == {}


class TestWhatIf:
    def test_whatif_flow(self, client):
        s = create_session(client)
        doc = load_fixture("scores/company_a.json")
        entries = [
            {
                "practice_id": row["practice_id"],
                "dims": {
                    "approach": row["approach"],
                    "deployment": row["deployment"],
                    "results": row["results"],
                },
            }
            for row in doc["scores"]
        ]
        body = {"expected_revision": 0, "partial": False, "scores": entries}
        s = client.put(f"/api/v1/sessions/{s['id']}/scores", json=body).json()
        resp = client.post(f"/api/v1/sessions/{s['id']}/whatif", json={"target_level": 4})
        assert resp.status_code == 200
        plan = resp.json()
        assert plan["target_level"] == 4
        assert {f["factor_id"] for f in plan["factors"]} == {"CSF6", "CB3"}

    def test_whatif_bad_target_422(self, client):
        s = create_session(client)
        resp = client.post(f"/api/v1/sessions/{s['id']}/whatif", json={"target_level": 99})
        assert resp.status_code == 422


class TestErrorEnvelope:
    def test_validation_error_shape(self, client):
        resp = client.post("/api/v1/sessions", json={"model_ref": 5})
        assert resp.status_code == 400
        err = resp.json()["error"]
        assert err["code"] == "validation"
        assert isinstance(err["detail"], list)

    def test_envelope_keys(self, client):
        resp = client.get("/api/v1/sessions/none")
        err = resp.json()["error"]
        assert set(err) == {"code", "message", "detail"}
