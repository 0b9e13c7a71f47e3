"""Capture real service payloads for the frontend test suite.

Writes one JSON snapshot per canvas fixture (canvas, relations, render,
position, and the operations payload for every view) plus an apply/undo
session transcript, into frontend/tests/fixtures/.
"""
import json
import pathlib
import sys

from fastapi.testclient import TestClient

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from semsnap.service import create_app  # noqa: E402
from semsnap.specio import parse_canvas  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
OUT = ROOT / "frontend" / "tests" / "fixtures"


def client_for(name: str) -> TestClient:
    canvas = parse_canvas((FIXTURES / name).read_text(),
                          base_path=str(FIXTURES))
    return TestClient(create_app(canvas))


def snapshot(client: TestClient, view_ids) -> dict:
    return {
        "canvas": client.get("/api/canvas").json(),
        "relations": client.get("/api/relations").json(),
        "render": client.get("/api/render").json(),
        "position": client.get("/api/position").json(),
        "views": {vid: client.get(f"/api/views/{vid}/operations").json()
                  for vid in view_ids},
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    names = sorted(p.name for p in FIXTURES.glob("*.canvas.json"))
    index = []
    for name in names:
        client = client_for(name)
        doc = client.get("/api/canvas").json()
        view_ids = [v["id"] for v in doc["views"]]
        snap = snapshot(client, view_ids)
        out_name = name.replace(".canvas.json", "") + ".snapshot.json"
        (OUT / out_name).write_text(json.dumps(snap, indent=2) + "\n")
        index.append(out_name)

    # apply/undo transcript on the election canvas: differentiate needs no
    # confirmation, so the UI flow is snapshot -> apply -> undo -> snapshot.
    client = client_for("election.canvas.json")
    doc = client.get("/api/canvas").json()
    view_ids = [v["id"] for v in doc["views"]]
    before = snapshot(client, view_ids)
    ops = client.get("/api/views/polls/operations").json()
    plan = next(p for p in ops["plans"] if p["category"] == "differentiate")
    applied = client.post(f"/api/operations/{plan['id']}/apply",
                          json={"confirmations": {}}).json()
    during = snapshot(client, view_ids)
    undone = client.post("/api/history/undo").json()
    after = snapshot(client, view_ids)
    (OUT / "session.apply-undo.json").write_text(json.dumps({
        "plan": plan,
        "before": before,
        "applyResponse": applied,
        "during": during,
        "undoResponse": undone,
        "after": after,
    }, indent=2) + "\n")
    (OUT / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    print(f"wrote {len(index)} snapshots + session transcript to {OUT}")


if __name__ == "__main__":
    main()
