"""The HTTP service driven in-process: create a session, poll the state,
move, answer questionnaires. This is exactly what the browser client
does. Run with: python demos/06_http_session.py"""
import random

from fastapi.testclient import TestClient

from treasurehunt.service import ServiceConfig, create_app

client = TestClient(create_app(ServiceConfig(master_seed=1)))
rng = random.Random(2)

token = client.post("/sessions", json={"participantId": "demo"}).json()["token"]
view = client.get(f"/sessions/{token}/state").json()
print(f"map 1/{view['mapsTotal']} ({view['condition']}): frontier {view['frontier']}")

for map_no in range(15):
    view = client.get(f"/sessions/{token}/state").json()
    while view["status"] == "in_progress":
        target = view["recommendation"] or rng.choice(view["frontier"])
        view = client.post(f"/sessions/{token}/move", json={"cell": target}).json()
    if map_no < 2:  # show the first two terminal payloads
        print(f"map {map_no + 1} over: status={view['status']} score={view['score']}"
              f" condition={view['condition']}"
              + (" rationale rows shown" if "rationale" in view else ""))
    done = client.post(
        f"/sessions/{token}/questionnaire", json={"trust": 7, "selfConfidence": 3}
    ).json()

print(f"\nsession complete: total score {done['totalScore']}")
print("per-map:", [m["finalScore"] for m in done["maps"]])
csv_text = client.get(f"/sessions/{token}/export").text
print("\nexport preview:")
print("\n".join(csv_text.splitlines()[:4]))
