"""Expected-value recommendation and the per-option rationale table.

Each frontier cell's hazard judgment maps onto one of six cases, each
case carries a fixed outcome-probability vector over (encounter wumpus,
fall into pit, find gold, nothing happens), and the expected score is the
dot product with the event scores. The recommendation is a uniform random
pick among the highest expected scores; the rationale groups options with
identical probabilities into rows, sorts rows by expected score and stars
the row holding the recommendation.

Probabilities and expected scores are exact rationals internally; the
wire format rounds to two decimals for display.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .logic import HazardJudgment, Judgment, KnowledgeBase, judge
from .world import Position

#: Score of each outcome: wumpus, pit, gold, nothing.
OUTCOME_SCORES = (Fraction(-1000), Fraction(-100), Fraction(500), Fraction(0))


@dataclass(frozen=True)
class OutcomeProbs:
    """Probabilities of encountering the wumpus / falling into a pit /
    finding gold / nothing happening when uncovering a cell."""

    w: Fraction
    p: Fraction
    g: Fraction
    n: Fraction

    def __post_init__(self):
        parts = (self.w, self.p, self.g, self.n)
        if any(x < 0 or x > 1 for x in parts):
            raise ValueError(f"probabilities outside [0,1]: {parts}")
        if sum(parts) != 1:
            raise ValueError(f"probabilities must sum to 1, got {sum(parts)}")


#: The six case rows: case id -> outcome probabilities.
CASE_PROBS: dict[int, OutcomeProbs] = {
    1: OutcomeProbs(Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
    2: OutcomeProbs(Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
    3: OutcomeProbs(Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1, 2)),
    4: OutcomeProbs(Fraction(0), Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
    5: OutcomeProbs(Fraction(1, 3), Fraction(0), Fraction(1, 3), Fraction(1, 3)),
    6: OutcomeProbs(Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
}

_CASE_BY_JUDGMENT = {
    (Judgment.NO, Judgment.YES): 1,
    (Judgment.YES, Judgment.NO): 2,
    (Judgment.NO, Judgment.NO): 3,
    (Judgment.UNKNOWN, Judgment.NO): 4,
    (Judgment.NO, Judgment.UNKNOWN): 5,
    (Judgment.UNKNOWN, Judgment.UNKNOWN): 6,
}


@dataclass(frozen=True)
class OptionAssessment:
    """One frontier cell's case, probabilities and expected score."""

    pos: Position
    case_id: int
    probs: OutcomeProbs
    expected_score: Fraction


@dataclass(frozen=True)
class RationaleRow:
    positions: tuple[Position, ...]
    probs: OutcomeProbs
    expected_score: Fraction
    starred: bool


def classify(judgment: HazardJudgment) -> int:
    """Case id 1..6 for a constructible hazard judgment."""
    try:
        return _CASE_BY_JUDGMENT[(judgment.pit, judgment.wumpus)]
    except KeyError:
        raise ValueError(f"impossible judgment combination: {judgment}") from None


def case_probs(case_id: int) -> OutcomeProbs:
    try:
        return CASE_PROBS[case_id]
    except KeyError:
        raise ValueError(f"case id must be 1..6, got {case_id}") from None


def expected_score(probs: OutcomeProbs) -> Fraction:
    """Dot product with the outcome scores. The constant 10-point uncovering
    cost is identical for every option and therefore left out."""
    parts = (probs.w, probs.p, probs.g, probs.n)
    return sum((p * s for p, s in zip(parts, OUTCOME_SCORES)), Fraction(0))


def assess_options(kb: KnowledgeBase, frontier: set[Position]) -> list[OptionAssessment]:
    """Judge, classify and score every frontier cell. Sorted by cell."""
    out = []
    for pos in sorted(frontier):
        case_id = classify(judge(kb, pos))
        probs = case_probs(case_id)
        out.append(OptionAssessment(pos, case_id, probs, expected_score(probs)))
    return out


def recommend(assessments: list[OptionAssessment], rng: random.Random) -> Position:
    """Uniform random choice among the options with the highest expected score."""
    if not assessments:
        raise ValueError("no options to recommend from")
    best = max(a.expected_score for a in assessments)
    ties = sorted(a.pos for a in assessments if a.expected_score == best)
    return rng.choice(ties)


def build_rationale(
    assessments: list[OptionAssessment], recommended: Position
) -> list[RationaleRow]:
    """Group options with identical probability vectors, sort rows by
    descending expected score, star the recommendation's row."""
    if recommended not in {a.pos for a in assessments}:
        raise ValueError(f"recommended cell {recommended} is not among the options")
    groups: dict[OutcomeProbs, list[OptionAssessment]] = {}
    for a in assessments:
        groups.setdefault(a.probs, []).append(a)
    rows = [
        RationaleRow(
            positions=tuple(sorted(a.pos for a in members)),
            probs=probs,
            expected_score=members[0].expected_score,
            starred=any(a.pos == recommended for a in members),
        )
        for probs, members in groups.items()
    ]
    rows.sort(key=lambda r: (-r.expected_score, r.positions[0]))
    return rows


def format_rational(x: Fraction) -> str:
    """Exact rational -> 2-decimal display string, e.g. 400/3 -> "133.33"."""
    return str(
        (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
            Decimal("0.01"), rounding=ROUND_HALF_EVEN
        )
    )


def rationale_to_wire(rows: list[RationaleRow]) -> list[dict]:
    """Serialise rationale rows for the UI: cells, four probability columns,
    expected score and the star, probabilities as 2-decimal strings."""
    return [
        {
            "cells": [p.label for p in row.positions],
            "pWumpus": format_rational(row.probs.w),
            "pPit": format_rational(row.probs.p),
            "pGold": format_rational(row.probs.g),
            "pNothing": format_rational(row.probs.n),
            "expectedScore": format_rational(row.expected_score),
            "starred": row.starred,
        }
        for row in rows
    ]
