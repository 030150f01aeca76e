"""Session-scoped HTTP API: the only gateway between the browser client
and the game, assistant and harness.

Every payload is built from what the participant is allowed to see:
visited cells with their percepts and events, the frontier, the cached
recommendation for the open step and, in the rationale condition, the
grouped option table. Unvisited cell contents never leave the server.
"""
from __future__ import annotations

import random
import secrets
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from . import advisor
from .fixtures import load_packaged_fixtures, load_fixture_dir
from .harness import (
    HarnessError,
    MapFixtures,
    QuestionnaireOrderError,
    RatingRangeError,
    SessionRunner,
    TrialLogger,
    plan_session,
)
from .world import GameStatus, IllegalMoveError, Position, legal_moves


@dataclass
class ServiceConfig:
    fixture_dir: Optional[Path] = None
    master_seed: int = 0
    idle_timeout: float = 1800.0
    log_dir: Optional[Path] = None
    static_dir: Optional[Path] = None  # built browser client, served at /app


class _Session:
    def __init__(self, runner: SessionRunner):
        self.runner = runner
        self.lock = threading.Lock()
        self.last_touch = time.monotonic()


def view_state(runner: SessionRunner) -> dict:
    """Everything the participant may see right now, and nothing more."""
    state = runner.state
    world = runner.world
    slot = runner.slots[runner.trial_index]
    cells = []
    for pos in sorted(state.visited):
        percept = runner.kb.observation_at(pos)
        events = [s.event for s in state.steps if s.pos == pos and s.event != "nothing"]
        cells.append(
            {
                "cell": pos.label,
                "breeze": percept.breeze if percept else False,
                "stench": percept.stench if percept else False,
                "events": events,
            }
        )
    # the fatal cell never got a percept; mark the event that ended the game
    if state.status is GameStatus.DEAD:
        last = state.steps[-1]
        if all(c["cell"] != last.pos.label for c in cells):
            cells.append(
                {"cell": last.pos.label, "breeze": False, "stench": False, "events": [last.event]}
            )
    view = {
        "participantId": runner.plan.participant_id,
        "trialIndex": runner.trial_index,
        "mapsTotal": len(runner.slots),
        "phase": slot.phase,
        "condition": slot.condition.value if slot.condition else "unassisted",
        "status": state.status.value,
        "score": state.score,
        "hunter": state.position.label,
        "cells": cells,
        "frontier": sorted(p.label for p in legal_moves(state)),
        "recommendation": runner.recommended.label if runner.recommended else None,
        "awaitingQuestionnaire": state.status is not GameStatus.IN_PROGRESS,
    }
    if runner.rationale is not None:
        view["rationale"] = advisor.rationale_to_wire(runner.rationale)
    return view


def completion_summary(runner: SessionRunner) -> dict:
    return {
        "participantId": runner.plan.participant_id,
        "complete": True,
        "maps": [
            {
                "mapId": t.map_id,
                "condition": t.condition.value if t.condition else "unassisted",
                "finalScore": t.final_score,
                "acceptanceRate": t.acceptance_rate,
            }
            for t in runner.sealed_trials
        ],
        "totalScore": sum(t.final_score for t in runner.sealed_trials),
    }


class CreateSessionBody(BaseModel):
    participantId: str


class MoveBody(BaseModel):
    cell: str


class QuestionnaireBody(BaseModel):
    trust: int
    selfConfidence: int


def create_app(
    config: ServiceConfig | None = None, fixtures: MapFixtures | None = None
) -> FastAPI:
    config = config or ServiceConfig()
    if fixtures is None:
        fixtures = (
            load_fixture_dir(config.fixture_dir)
            if config.fixture_dir
            else load_packaged_fixtures()
        )

    app = FastAPI(title="treasurehunt")
    sessions: dict[str, _Session] = {}
    participants: set[str] = set()
    counter = {"next": 0}
    registry_lock = threading.Lock()

    def expire_idle() -> None:
        now = time.monotonic()
        for token in list(sessions):
            sess = sessions[token]
            if now - sess.last_touch > config.idle_timeout:
                sess.runner.abandon()
                del sessions[token]

    def get_session(token: str) -> _Session:
        with registry_lock:
            expire_idle()
            sess = sessions.get(token)
        if sess is None:
            raise HTTPException(status_code=404, detail="unknown session token")
        sess.last_touch = time.monotonic()
        return sess

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        if not body.participantId.strip():
            raise HTTPException(status_code=400, detail="participantId must be nonempty")
        with registry_lock:
            expire_idle()
            if body.participantId in participants:
                raise HTTPException(status_code=409, detail="participantId already in use")
            participants.add(body.participantId)
            index = counter["next"]
            counter["next"] += 1
        plan_rng = random.Random(f"{config.master_seed}:{index}:plan")
        plan = plan_session(index, fixtures, plan_rng, participant_id=body.participantId)
        logger = (
            TrialLogger.open_for(body.participantId, config.log_dir) if config.log_dir else None
        )
        tie_rng = random.Random(f"{config.master_seed}:{index}:ties")
        runner = SessionRunner(plan, fixtures, tie_rng, logger)
        token = secrets.token_urlsafe(16)
        with registry_lock:
            sessions[token] = _Session(runner)
        return {
            "token": token,
            "plan": {
                "participantId": plan.participant_id,
                "conditionOrder": [c.value for c in plan.condition_order],
                "mapsTotal": len(runner.slots),
                "trainingMaps": len(plan.training_map_ids),
                "testMaps": len(plan.test_map_ids),
            },
        }

    @app.get("/sessions/{token}/state")
    def get_state(token: str):
        sess = get_session(token)
        with sess.lock:
            if sess.runner.complete:
                return completion_summary(sess.runner)
            return view_state(sess.runner)

    @app.post("/sessions/{token}/move")
    def post_move(token: str, body: MoveBody):
        sess = get_session(token)
        with sess.lock:
            runner = sess.runner
            if runner.complete:
                raise HTTPException(status_code=409, detail="session complete")
            try:
                pos = Position.parse(body.cell)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            if runner.state.status is not GameStatus.IN_PROGRESS:
                raise HTTPException(
                    status_code=409,
                    detail="map is over; submit the questionnaire to continue",
                )
            try:
                runner.make_move(pos)
            except IllegalMoveError as exc:
                raise HTTPException(
                    status_code=400,
                    detail={
                        "error": str(exc),
                        "frontier": sorted(p.label for p in legal_moves(runner.state)),
                    },
                )
            return view_state(runner)

    @app.post("/sessions/{token}/questionnaire")
    def post_questionnaire(token: str, body: QuestionnaireBody):
        sess = get_session(token)
        with sess.lock:
            runner = sess.runner
            if runner.complete:
                raise HTTPException(status_code=409, detail="session complete")
            try:
                runner.submit_questionnaire(body.trust, body.selfConfidence)
            except RatingRangeError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            except QuestionnaireOrderError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            if runner.complete:
                return completion_summary(runner)
            return view_state(runner)

    @app.get("/sessions/{token}/export")
    def get_export(token: str):
        sess = get_session(token)
        with sess.lock:
            try:
                text = sess.runner.export_csv()
            except HarnessError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
        return Response(content=text, media_type="text/csv")

    if config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=config.static_dir, html=True), name="client")

    return app
