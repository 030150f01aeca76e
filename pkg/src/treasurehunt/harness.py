"""Within-subjects experiment orchestration.

A session is 15 maps: 5 fixed-order training maps (the first one played
without the assistant, two later ones with a pit right next to the
start), then 10 test maps shuffled per participant and split 5/5 across
the two display conditions. The condition order alternates with
participant parity. Every move, questionnaire answer and seal is appended
to a newline-delimited JSON log as it happens, so a crash loses at most
the in-flight step.
"""
from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, TextIO

from . import advisor, logic
from .world import (
    EVENT_WUMPUS,
    GameStatus,
    MapSpec,
    Position,
    apply_move,
    initial_state,
    legal_moves,
    percept_at,
    replay,
)

LOG_SCHEMA_VERSION = 1


class HarnessError(Exception):
    pass


class RatingRangeError(HarnessError):
    """Trust / self-confidence outside the 1..9 scale."""


class QuestionnaireOrderError(HarnessError):
    """Questionnaire submitted before the map ended, or twice."""


class StepRejectedError(HarnessError):
    """Chosen cell was not among the offered options."""


class Condition(Enum):
    RATIONALE = "rationale"        # full per-option rationale table shown
    NO_RATIONALE = "no_rationale"  # recommendation star only

    @property
    def rationale_display(self) -> bool:
        return self is Condition.RATIONALE


@dataclass(frozen=True)
class TrialSlot:
    """One scheduled map: which map, whether the assistant helps, and
    under which display condition (None for the unassisted warm-up)."""

    map_id: str
    assisted: bool
    condition: Optional[Condition]
    phase: str  # "training" or "test"


@dataclass(frozen=True)
class MapFixtures:
    training_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    maps: dict[str, MapSpec]

    def __post_init__(self):
        missing = [i for i in (*self.training_ids, *self.test_ids) if i not in self.maps]
        if missing:
            raise ValueError(f"fixture maps missing: {missing}")


@dataclass(frozen=True)
class SessionPlan:
    participant_id: str
    participant_index: int
    condition_order: tuple[Condition, Condition]
    training_map_ids: tuple[str, ...]  # fixed order
    test_map_ids: tuple[str, ...]      # shuffled; first 5 -> first condition

    def slots(self) -> list[TrialSlot]:
        first, second = self.condition_order
        out = [TrialSlot(self.training_map_ids[0], False, None, "training")]
        for map_id, cond in zip(self.training_map_ids[1:], (first, first, second, second)):
            out.append(TrialSlot(map_id, True, cond, "training"))
        for i, map_id in enumerate(self.test_map_ids):
            out.append(TrialSlot(map_id, True, first if i < 5 else second, "test"))
        return out


def plan_session(
    participant_index: int,
    fixtures: MapFixtures,
    rng: random.Random,
    participant_id: str | None = None,
) -> SessionPlan:
    """Counterbalanced plan: even participants see the rationale condition
    first, odd ones second; the 10 test maps are shuffled by ``rng``."""
    if len(fixtures.test_ids) != 10 or len(fixtures.training_ids) != 5:
        raise HarnessError(
            f"need 10 test and 5 training maps, have {len(fixtures.test_ids)}"
            f" and {len(fixtures.training_ids)}"
        )
    order = (
        (Condition.RATIONALE, Condition.NO_RATIONALE)
        if participant_index % 2 == 0
        else (Condition.NO_RATIONALE, Condition.RATIONALE)
    )
    test_ids = list(fixtures.test_ids)
    rng.shuffle(test_ids)
    return SessionPlan(
        participant_id=participant_id or f"p{participant_index:03d}",
        participant_index=participant_index,
        condition_order=order,
        training_map_ids=tuple(fixtures.training_ids),
        test_map_ids=tuple(test_ids),
    )


@dataclass(frozen=True)
class StepRecord:
    step_index: int
    options: tuple[advisor.OptionAssessment, ...]
    recommended: Optional[Position]
    chosen: Position
    accepted: Optional[bool]  # None when no recommendation was shown
    score_delta: int


@dataclass(frozen=True)
class TrialRecord:
    map_id: str
    condition: Optional[Condition]
    assisted: bool
    phase: str
    steps: tuple[StepRecord, ...] = ()
    status: GameStatus = GameStatus.IN_PROGRESS
    trust: Optional[int] = None
    self_confidence: Optional[int] = None
    sealed: bool = False

    @property
    def final_score(self) -> int:
        return sum(s.score_delta for s in self.steps)

    @property
    def acceptance_rate(self) -> Optional[float]:
        rated = [s for s in self.steps if s.accepted is not None]
        if not rated:
            return None
        return sum(1 for s in rated if s.accepted) / len(rated)


def record_step(
    trial: TrialRecord,
    options: Iterable[advisor.OptionAssessment],
    recommended: Optional[Position],
    chosen: Position,
    score_delta: int,
    status_after: GameStatus,
) -> TrialRecord:
    """Append one decision to the trial. The chosen cell must be one of
    the offered options; acceptance is chosen == recommended."""
    options = tuple(options)
    if trial.sealed:
        raise StepRejectedError("trial is sealed")
    if chosen not in {o.pos for o in options}:
        raise StepRejectedError(f"{chosen} is not among the offered options")
    step = StepRecord(
        step_index=len(trial.steps),
        options=options,
        recommended=recommended,
        chosen=chosen,
        accepted=None if recommended is None else chosen == recommended,
        score_delta=score_delta,
    )
    return replace(trial, steps=trial.steps + (step,), status=status_after)


def submit_questionnaire(trial: TrialRecord, trust: int, self_confidence: int) -> TrialRecord:
    """Store the two 9-point ratings and seal the trial against further steps."""
    if trial.sealed:
        raise QuestionnaireOrderError("questionnaire already submitted for this map")
    if trial.status is GameStatus.IN_PROGRESS:
        raise QuestionnaireOrderError("questionnaire comes after the map ends")
    for name, value in (("trust", trust), ("selfConfidence", self_confidence)):
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 9:
            raise RatingRangeError(f"{name} must be an integer 1..9, got {value!r}")
    return replace(trial, trust=trust, self_confidence=self_confidence, sealed=True)


EXPORT_COLUMNS = [
    "participant_id",
    "condition",
    "trial_index",
    "map_id",
    "trust",
    "self_confidence",
    "acceptance_rate",
    "final_score",
]


def _condition_label(trial: TrialRecord) -> str:
    return trial.condition.value if trial.condition else "unassisted"


def export_session(plan: SessionPlan, trials: list[TrialRecord]) -> str:
    """CSV with one row per sealed trial; trial_index counts within each
    condition. Raises if any trial is still open."""
    unsealed = [t.map_id for t in trials if not t.sealed]
    if unsealed:
        raise HarnessError(f"cannot export with unsealed trials: {unsealed}")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(EXPORT_COLUMNS)
    counters: dict[str, int] = {}
    for trial in trials:
        label = _condition_label(trial)
        counters[label] = counters.get(label, 0) + 1
        rate = trial.acceptance_rate
        writer.writerow(
            [
                plan.participant_id,
                label,
                counters[label],
                trial.map_id,
                trial.trust,
                trial.self_confidence,
                "" if rate is None else repr(rate),
                trial.final_score,
            ]
        )
    return buf.getvalue()


def read_export(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


# --- append-only event log ---------------------------------------------------


class TrialLogger:
    """Newline-delimited JSON event log, flushed per event."""

    def __init__(self, stream: TextIO, participant_id: str):
        self.stream = stream
        self.write(
            {
                "event": "header",
                "schema": LOG_SCHEMA_VERSION,
                "participantId": participant_id,
                "createdAt": time.time(),
            }
        )

    def write(self, event: dict) -> None:
        self.stream.write(json.dumps(event, separators=(",", ":")) + "\n")
        self.stream.flush()

    @classmethod
    def open_for(cls, participant_id: str, log_dir: Path) -> "TrialLogger":
        log_dir.mkdir(parents=True, exist_ok=True)
        stamp = time.strftime("%Y%m%dT%H%M%S")
        path = log_dir / f"{participant_id}_{stamp}.ndjson"
        return cls(path.open("a"), participant_id)


def read_log(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _assessment_to_wire(a: advisor.OptionAssessment) -> dict:
    return {
        "cell": a.pos.label,
        "caseId": a.case_id,
        "pWumpus": advisor.format_rational(a.probs.w),
        "pPit": advisor.format_rational(a.probs.p),
        "pGold": advisor.format_rational(a.probs.g),
        "pNothing": advisor.format_rational(a.probs.n),
        "expectedScore": advisor.format_rational(a.expected_score),
    }


class SessionRunner:
    """Live session state machine: one active trial, one active step.

    Wraps the pure engine pieces and owns the only mutable state; the
    HTTP layer is a thin adapter over this class.
    """

    def __init__(
        self,
        plan: SessionPlan,
        fixtures: MapFixtures,
        rng: random.Random,
        logger: TrialLogger | None = None,
    ):
        self.plan = plan
        self.fixtures = fixtures
        self.rng = rng
        self.logger = logger
        self.slots = plan.slots()
        self.sealed_trials: list[TrialRecord] = []
        self.trial_index = 0
        self.complete = False
        if self.logger:
            self.logger.write(
                {
                    "event": "plan",
                    "participantId": plan.participant_id,
                    "conditionOrder": [c.value for c in plan.condition_order],
                    "training": list(plan.training_map_ids),
                    "test": list(plan.test_map_ids),
                }
            )
        self._start_trial()

    # -- trial lifecycle --

    def _start_trial(self) -> None:
        slot = self.slots[self.trial_index]
        self.world = self.fixtures.maps[slot.map_id]
        self.state = initial_state(self.world)
        kb = logic.KnowledgeBase(start=self.world.start, size=self.world.size)
        self.kb = logic.tell(kb, self.world.start, percept_at(self.world, self.world.start), "nothing")
        self.trial = TrialRecord(
            map_id=slot.map_id, condition=slot.condition, assisted=slot.assisted, phase=slot.phase
        )
        if self.logger:
            self.logger.write(
                {
                    "event": "trial_start",
                    "trialIndex": self.trial_index,
                    "mapId": slot.map_id,
                    "condition": _condition_label(self.trial),
                    "assisted": slot.assisted,
                }
            )
        self._open_step()

    def _open_step(self) -> None:
        """Assess the frontier once per step; repeated polls must agree."""
        if self.state.status is not GameStatus.IN_PROGRESS:
            self.options = ()
            self.recommended = None
            self.rationale = None
            return
        slot = self.slots[self.trial_index]
        self.options = tuple(advisor.assess_options(self.kb, legal_moves(self.state)))
        if slot.assisted:
            self.recommended = advisor.recommend(list(self.options), self.rng)
            if slot.condition is Condition.RATIONALE:
                self.rationale = advisor.build_rationale(list(self.options), self.recommended)
            else:
                self.rationale = None
        else:
            self.recommended = None
            self.rationale = None

    # -- participant actions --

    def make_move(self, pos: Position) -> None:
        new_state = apply_move(self.state, self.world, pos)  # raises on illegal moves
        step = new_state.steps[-1]
        new_kb = self.kb
        if step.event != EVENT_WUMPUS:
            new_kb = logic.tell(self.kb, pos, percept_at(self.world, pos), step.event)
        new_trial = record_step(
            self.trial, self.options, self.recommended, pos, step.delta, new_state.status
        )
        self.state, self.kb, self.trial = new_state, new_kb, new_trial
        if self.logger:
            rec = new_trial.steps[-1]
            self.logger.write(
                {
                    "event": "step",
                    "trialIndex": self.trial_index,
                    "stepIndex": rec.step_index,
                    "options": [_assessment_to_wire(o) for o in rec.options],
                    "recommended": rec.recommended.label if rec.recommended else None,
                    "chosen": rec.chosen.label,
                    "accepted": rec.accepted,
                    "scoreDelta": rec.score_delta,
                    "status": new_state.status.value,
                }
            )
        self._open_step()

    def submit_questionnaire(self, trust: int, self_confidence: int) -> None:
        self.trial = submit_questionnaire(self.trial, trust, self_confidence)
        if self.logger:
            self.logger.write(
                {
                    "event": "questionnaire",
                    "trialIndex": self.trial_index,
                    "trust": trust,
                    "selfConfidence": self_confidence,
                }
            )
            rate = self.trial.acceptance_rate
            self.logger.write(
                {
                    "event": "seal",
                    "trialIndex": self.trial_index,
                    "mapId": self.trial.map_id,
                    "finalScore": self.trial.final_score,
                    "acceptanceRate": rate,
                }
            )
        self.sealed_trials.append(self.trial)
        if self.trial_index + 1 < len(self.slots):
            self.trial_index += 1
            self._start_trial()
        else:
            self.complete = True
            if self.logger:
                self.logger.write({"event": "session_complete"})

    def abandon(self) -> None:
        if self.logger and not self.complete:
            self.logger.write({"event": "abandoned", "trialIndex": self.trial_index})

    def export_csv(self) -> str:
        if not self.complete:
            raise HarnessError("session still in progress")
        return export_session(self.plan, self.sealed_trials)


# --- log integrity -----------------------------------------------------------


def trials_from_log(events: list[dict]) -> list[dict]:
    """Group step/questionnaire/seal events by trial, in play order."""
    trials: dict[int, dict] = {}
    for ev in events:
        idx = ev.get("trialIndex")
        if ev["event"] == "trial_start":
            trials[idx] = {"mapId": ev["mapId"], "condition": ev["condition"], "steps": []}
        elif ev["event"] == "step":
            trials[idx]["steps"].append(ev)
        elif ev["event"] == "questionnaire":
            trials[idx].update(trust=ev["trust"], selfConfidence=ev["selfConfidence"])
        elif ev["event"] == "seal":
            trials[idx].update(finalScore=ev["finalScore"], acceptanceRate=ev["acceptanceRate"])
    return [trials[i] for i in sorted(trials)]


def verify_log_replay(events: list[dict], fixtures: MapFixtures) -> None:
    """Re-run every logged trial through the engine and check the logged
    scores and acceptance rates fall out identically."""
    for trial in trials_from_log(events):
        if "finalScore" not in trial:
            continue  # trial was in flight when the log ended
        world = fixtures.maps[trial["mapId"]]
        choices = [Position.parse(s["chosen"]) for s in trial["steps"]]
        final = replay(world, choices)
        if final.score != trial["finalScore"]:
            raise HarnessError(
                f"log mismatch on {trial['mapId']}: replay score {final.score}"
                f" != logged {trial['finalScore']}"
            )
        rated = [s for s in trial["steps"] if s["accepted"] is not None]
        rate = sum(1 for s in rated if s["accepted"]) / len(rated) if rated else None
        if rate != trial["acceptanceRate"]:
            raise HarnessError(f"log mismatch on {trial['mapId']}: acceptance rate")
