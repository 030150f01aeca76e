"""Record one full session of real wire traffic for the frontend tests.

Plays the deterministic scripted session the vitest suite replays: click
the starred cell when there is one, otherwise the first frontier cell;
answer trust=7 / selfConfidence=3 after every map. Regenerate with:

    python3 frontend/scripts/record_transcript.py
"""
import json
from pathlib import Path

from fastapi.testclient import TestClient

from treasurehunt.service import ServiceConfig, create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "session_transcript.json"

client = TestClient(create_app(ServiceConfig(master_seed=11)))
records = []


def call(method: str, path: str, body=None):
    response = client.request(method, path, json=body)
    records.append(
        {
            "method": method,
            "path": path,
            "body": body,
            "status": response.status_code,
            "response": response.json(),
        }
    )
    return response.json()


created = call("POST", "/sessions", {"participantId": "transcript"})
token = created["token"]
view = call("GET", f"/sessions/{token}/state")

while not view.get("complete"):
    if view["awaitingQuestionnaire"]:
        view = call(
            "POST", f"/sessions/{token}/questionnaire", {"trust": 7, "selfConfidence": 3}
        )
    else:
        cell = view["recommendation"] or sorted(view["frontier"])[0]
        view = call("POST", f"/sessions/{token}/move", {"cell": cell})

OUT.parent.mkdir(parents=True, exist_ok=True)
OUT.write_text(json.dumps(records, indent=1))
print(f"wrote {len(records)} exchanges to {OUT}")
conditions = [r["response"].get("condition") for r in records if r["response"].get("condition")]
print("conditions seen:", sorted(set(conditions)))
