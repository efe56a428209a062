"""Freeze API responses into test/fixtures for the frontend test suite.

Drives the real service in-process and saves the exact JSON bodies the
browser client would receive. Rerun after any server-side change:

    python3 scripts/freeze_fixtures.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from mmk.service import create_app

FRONTEND = Path(__file__).resolve().parent.parent
REPO = FRONTEND.parent
OUT = FRONTEND / "test" / "fixtures"


def read_json(path: Path) -> dict:
    return json.loads(path.read_text())


def save(name: str, payload: object) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path.relative_to(FRONTEND)}")


def score_entry(row: dict) -> dict:
    return {
        "practice_id": row["practice_id"],
        "dims": {
            "approach": row["approach"],
            "deployment": row["deployment"],
            "results": row["results"],
        },
    }


def put_matrix(client: TestClient, session: dict, matrix_id: str, doc: dict) -> dict:
    resp = client.put(
        f"/api/v1/sessions/{session['id']}/matrices/{matrix_id}",
        json={
            "expected_revision": session["revision"],
            "items": doc["items"],
            "judgments": doc["judgments"],
        },
    )
    resp.raise_for_status()
    return resp.json()


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        client = TestClient(create_app(data_dir=tmp))

        model = client.get("/api/v1/models/sre-himm").json()
        save("model.json", model)

        # matrix entry and the consistency check, one consistent, one not
        s = client.post("/api/v1/sessions", json={"model_ref": "sre-himm@1"}).json()
        coordination = read_json(REPO / "fixtures" / "matrices" / "sf_coordination.json")
        s = put_matrix(client, s, "coordination", coordination)
        save("matrix_coordination.json", s["matrices"]["coordination"])
        save(
            "consistency_coordination.json",
            client.get(f"/api/v1/sessions/{s['id']}/matrices/coordination/consistency").json(),
        )

        technology = read_json(REPO / "fixtures" / "matrices" / "sf_technology.json")
        s = put_matrix(client, s, "technology", technology)
        save(
            "consistency_technology.json",
            client.get(f"/api/v1/sessions/{s['id']}/matrices/technology/consistency").json(),
        )

        # a matrix with unfilled pairs, kept for the error envelope shape
        s = put_matrix(
            client,
            s,
            "sparse",
            {"items": ["a", "b", "c"], "judgments": [{"row": "a", "col": "b", "value": 2}]},
        )
        resp = client.get(f"/api/v1/sessions/{s['id']}/matrices/sparse/consistency")
        assert resp.status_code == 422, resp.text
        save("error_matrix_incomplete.json", {"status": resp.status_code, "body": resp.json()})

        # partial session scoring only the five level-2 CSF1 practices
        s2 = client.post("/api/v1/sessions", json={"model_ref": "sre-himm@1"}).json()
        worked = read_json(REPO / "fixtures" / "scores" / "worked_example.json")
        resp = client.put(
            f"/api/v1/sessions/{s2['id']}/scores",
            json={
                "expected_revision": s2["revision"],
                "partial": True,
                "scores": [score_entry(row) for row in worked["scores"]],
            },
        )
        resp.raise_for_status()
        save(
            "report_worked_example.json",
            client.get(f"/api/v1/sessions/{s2['id']}/report").json(),
        )

        # full assessment of the example company, then a level-4 plan
        s3 = client.post("/api/v1/sessions", json={"model_ref": "sre-himm@1"}).json()
        company = read_json(REPO / "fixtures" / "scores" / "company_a.json")
        entries = [score_entry(row) for row in company["scores"]]
        resp = client.put(
            f"/api/v1/sessions/{s3['id']}/scores",
            json={"expected_revision": s3["revision"], "partial": False, "scores": entries},
        )
        resp.raise_for_status()
        save("report_company.json", client.get(f"/api/v1/sessions/{s3['id']}/report").json())
        resp = client.post(
            f"/api/v1/sessions/{s3['id']}/whatif", json={"target_level": 4}
        )
        resp.raise_for_status()
        save("plan_company.json", resp.json())

    return 0


if __name__ == "__main__":
    sys.exit(main())
