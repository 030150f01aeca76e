import random

import pytest
from fastapi.testclient import TestClient

from treasurehunt.service import ServiceConfig, create_app


@pytest.fixture()
def client():
    return TestClient(create_app(ServiceConfig(master_seed=99)))


def start_session(client, participant="p1"):
    r = client.post("/sessions", json={"participantId": participant})
    assert r.status_code == 201
    return r.json()["token"]


def play_map_through(client, token, rng):
    """Random legal moves until the map ends; returns the terminal view."""
    view = client.get(f"/sessions/{token}/state").json()
    while view["status"] == "in_progress":
        cell = rng.choice(view["frontier"])
        r = client.post(f"/sessions/{token}/move", json={"cell": cell})
        assert r.status_code == 200, r.text
        view = r.json()
    return view


class TestSessionLifecycle:
    def test_create_returns_token_and_plan(self, client):
        r = client.post("/sessions", json={"participantId": "alice"})
        assert r.status_code == 201
        body = r.json()
        assert body["plan"]["mapsTotal"] == 15
        assert set(body["plan"]["conditionOrder"]) == {"rationale", "no_rationale"}

    def test_duplicate_participant_conflicts(self, client):
        start_session(client, "bob")
        r = client.post("/sessions", json={"participantId": "bob"})
        assert r.status_code == 409

    def test_unknown_token_is_not_found(self, client):
        assert client.get("/sessions/nope/state").status_code == 404
        assert client.post("/sessions/nope/move", json={"cell": "A2"}).status_code == 404

    def test_sessions_are_independent(self, client):
        t1 = start_session(client, "p-a")
        t2 = start_session(client, "p-b")
        client.post(f"/sessions/{t1}/move", json={"cell": "A2"})
        v1 = client.get(f"/sessions/{t1}/state").json()
        v2 = client.get(f"/sessions/{t2}/state").json()
        assert len(v1["cells"]) == 2
        assert len(v2["cells"]) == 1


class TestStateAndMoves:
    def test_repeated_polls_agree(self, client):
        token = start_session(client)
        a = client.get(f"/sessions/{token}/state").json()
        b = client.get(f"/sessions/{token}/state").json()
        assert a == b

    def test_recommendation_stable_until_move(self, client):
        token = start_session(client, "p2")
        # training map 1 has no assistant; advance to map 2 first
        rng = random.Random(0)
        play_map_through(client, token, rng)
        client.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        views = [client.get(f"/sessions/{token}/state").json() for _ in range(5)]
        recs = {v["recommendation"] for v in views}
        assert len(recs) == 1 and None not in recs

    def test_legal_move_reflects_score(self, client):
        token = start_session(client)
        view = client.get(f"/sessions/{token}/state").json()
        r = client.post(f"/sessions/{token}/move", json={"cell": view["frontier"][0]})
        assert r.json()["score"] <= -10

    def test_illegal_move_lists_frontier(self, client):
        token = start_session(client)
        r = client.post(f"/sessions/{token}/move", json={"cell": "D4"})
        assert r.status_code == 400
        assert set(r.json()["detail"]["frontier"]) == {"A2", "B1"}

    def test_bad_cell_label_rejected(self, client):
        token = start_session(client)
        assert client.post(f"/sessions/{token}/move", json={"cell": "Z9x"}).status_code == 400

    def test_terminal_map_rejects_moves_pointing_to_questionnaire(self, client):
        token = start_session(client)
        view = play_map_through(client, token, random.Random(1))
        assert view["awaitingQuestionnaire"]
        r = client.post(f"/sessions/{token}/move", json={"cell": "A2"})
        assert r.status_code == 409
        assert "questionnaire" in r.json()["detail"]

    def test_failed_move_changes_nothing(self, client):
        token = start_session(client)
        before = client.get(f"/sessions/{token}/state").json()
        client.post(f"/sessions/{token}/move", json={"cell": "D4"})
        after = client.get(f"/sessions/{token}/state").json()
        assert before == after


class TestQuestionnaireFlow:
    def test_out_of_range_rating(self, client):
        token = start_session(client)
        play_map_through(client, token, random.Random(2))
        r = client.post(f"/sessions/{token}/questionnaire", json={"trust": 10, "selfConfidence": 5})
        assert r.status_code == 400

    def test_order_enforced(self, client):
        token = start_session(client)
        r = client.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        assert r.status_code == 409

    def test_full_session_reaches_completion_summary(self, client):
        token = start_session(client, "runner")
        rng = random.Random(3)
        summary = None
        for _ in range(15):
            play_map_through(client, token, rng)
            r = client.post(
                f"/sessions/{token}/questionnaire", json={"trust": 6, "selfConfidence": 4}
            )
            assert r.status_code == 200
            summary = r.json()
        assert summary["complete"] is True
        assert len(summary["maps"]) == 15
        assert client.get(f"/sessions/{token}/state").json()["complete"] is True

    def test_export_after_completion(self, client):
        token = start_session(client, "exporter")
        rng = random.Random(4)
        assert client.get(f"/sessions/{token}/export").status_code == 409
        for _ in range(15):
            play_map_through(client, token, rng)
            client.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        r = client.get(f"/sessions/{token}/export")
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("text/csv")
        assert r.text.splitlines()[0].startswith("participant_id,condition")
        assert len(r.text.strip().splitlines()) == 16


class TestConditionVisibility:
    def test_rationale_present_iff_condition_says_so(self, client):
        token = start_session(client, "vis")
        rng = random.Random(5)
        seen = {"rationale": 0, "no_rationale": 0, "unassisted": 0}
        for _ in range(15):
            view = client.get(f"/sessions/{token}/state").json()
            while view["status"] == "in_progress":
                has_table = "rationale" in view
                assert has_table == (view["condition"] == "rationale")
                if view["condition"] == "unassisted":
                    assert view["recommendation"] is None
                else:
                    assert view["recommendation"] in view["frontier"]
                if has_table:
                    starred = [row for row in view["rationale"] if row["starred"]]
                    assert len(starred) == 1
                    assert view["recommendation"] in starred[0]["cells"]
                seen[view["condition"]] += 1
                cell = rng.choice(view["frontier"])
                view = client.post(f"/sessions/{token}/move", json={"cell": cell}).json()
            client.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        assert all(seen.values())


def collect_cell_labels(payload) -> set[str]:
    """Every cell-label-shaped string anywhere in a JSON payload."""
    import re

    labels = set()
    if isinstance(payload, dict):
        for v in payload.values():
            labels |= collect_cell_labels(v)
    elif isinstance(payload, list):
        for v in payload:
            labels |= collect_cell_labels(v)
    elif isinstance(payload, str) and re.fullmatch(r"[A-D][1-4]", payload):
        labels.add(payload)
    return labels


class TestEndpointReplay:
    def test_recorded_choices_reproduce_scores_through_the_api(self):
        """Same master seed + participant slot + same choices => same scores."""
        first = TestClient(create_app(ServiceConfig(master_seed=77)))
        token = start_session(first, "replayed")
        rng = random.Random(8)
        made: list[str] = []
        scores: list[int] = []
        for _ in range(15):
            view = first.get(f"/sessions/{token}/state").json()
            while view["status"] == "in_progress":
                cell = rng.choice(view["frontier"])
                made.append(cell)
                view = first.post(f"/sessions/{token}/move", json={"cell": cell}).json()
            scores.append(view["score"])
            first.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})

        fresh = TestClient(create_app(ServiceConfig(master_seed=77)))
        token = start_session(fresh, "replayed")
        replay_iter = iter(made)
        replayed_scores: list[int] = []
        for _ in range(15):
            view = fresh.get(f"/sessions/{token}/state").json()
            while view["status"] == "in_progress":
                view = fresh.post(f"/sessions/{token}/move", json={"cell": next(replay_iter)}).json()
            replayed_scores.append(view["score"])
            fresh.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        assert replayed_scores == scores


class TestSessionHousekeeping:
    def test_idle_sessions_expire(self):
        import time

        client = TestClient(create_app(ServiceConfig(master_seed=0, idle_timeout=0.05)))
        token = start_session(client, "sleepy")
        assert client.get(f"/sessions/{token}/state").status_code == 200
        time.sleep(0.1)
        assert client.get(f"/sessions/{token}/state").status_code == 404

    def test_event_log_file_named_by_participant(self, tmp_path):
        client = TestClient(create_app(ServiceConfig(master_seed=0, log_dir=tmp_path)))
        token = start_session(client, "logged")
        client.post(f"/sessions/{token}/move", json={"cell": "A2"})
        files = list(tmp_path.glob("logged_*.ndjson"))
        assert len(files) == 1
        lines = files[0].read_text().splitlines()
        assert '"event":"header"' in lines[0]
        assert any('"event":"step"' in line for line in lines)


class TestStaticClient:
    def test_browser_client_served_when_configured(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>client</body></html>")
        app = create_app(ServiceConfig(master_seed=0, static_dir=tmp_path))
        response = TestClient(app).get("/app/")
        assert response.status_code == 200
        assert "client" in response.text

    def test_no_mount_without_configuration(self, client):
        assert client.get("/app/").status_code == 404


class TestInformationHiding:
    def test_payload_mentions_only_what_the_client_already_knows(self, client):
        """Client-side mirror audit: the only cells a payload may name are the
        ones the participant visited plus the current frontier, and markers
        only ever sit on visited cells."""
        token = start_session(client, "fuzz")
        rng = random.Random(6)
        visited = {"A1"}
        audited = 0
        for _ in range(15):
            view = client.get(f"/sessions/{token}/state").json()
            visited = {"A1"}
            while True:
                payload_cells = {c["cell"] for c in view["cells"]}
                assert payload_cells == visited
                mentioned = collect_cell_labels(view)
                assert mentioned <= visited | set(view["frontier"]), (
                    f"payload names hidden cells: {mentioned - visited - set(view['frontier'])}"
                )
                audited += 1
                if view["status"] != "in_progress":
                    break
                cell = rng.choice(view["frontier"])
                view = client.post(f"/sessions/{token}/move", json={"cell": cell}).json()
                visited.add(cell)
            client.post(f"/sessions/{token}/questionnaire", json={"trust": 5, "selfConfidence": 5})
        assert audited > 40
