"""Treasure Hunter game engine.

A 4x4 grid hides one gold bar, one wumpus and any number of pits. The
hunter starts on a known safe cell and each turn uncovers one unvisited
cell adjacent to the already-uncovered region. Finding the gold ends the
game with a win, stepping on the wumpus ends it with a death, and a pit
costs points but play continues. Every uncovered cell costs 10 points.

All state is immutable; operations return new values. Same inputs always
produce the same outputs, so recorded games replay bit-identically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

GRID_SIZE = 4

SCORE_GOLD = 500
SCORE_WUMPUS = -1000
SCORE_PIT = -100
SCORE_NEW_CELL = -10

EVENT_NOTHING = "nothing"
EVENT_GOLD = "gold"
EVENT_WUMPUS = "wumpus"
EVENT_PIT = "pit"


class WorldError(Exception):
    """Base class for game rule violations."""


class IllegalMoveError(WorldError):
    """Move to a non-frontier cell, or any move after the game ended."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True, order=True)
class Position:
    """Grid cell. ``col`` 0..3 displays as A..D, ``row`` 0..3 displays as 1..4."""

    col: int
    row: int

    def __post_init__(self):
        if self.col < 0 or self.row < 0:
            raise ValueError(f"negative coordinates: ({self.col}, {self.row})")

    @property
    def label(self) -> str:
        return f"{chr(ord('A') + self.col)}{self.row + 1}"

    @classmethod
    def parse(cls, text: str) -> "Position":
        """Parse a cell label like "B3" (column letter is case-insensitive)."""
        text = text.strip()
        if len(text) < 2 or not text[0].isalpha():
            raise ValueError(f"bad cell label: {text!r}")
        col = ord(text[0].upper()) - ord("A")
        try:
            row = int(text[1:]) - 1
        except ValueError:
            raise ValueError(f"bad cell label: {text!r}") from None
        return cls(col, row)

    def __str__(self) -> str:
        return self.label


def in_bounds(pos: Position, size: int = GRID_SIZE) -> bool:
    return 0 <= pos.col < size and 0 <= pos.row < size


def neighbors(pos: Position, size: int = GRID_SIZE) -> list[Position]:
    """4-connected neighbours on the grid (no diagonals)."""
    cand = [
        Position(pos.col, pos.row - 1) if pos.row > 0 else None,
        Position(pos.col, pos.row + 1) if pos.row + 1 < size else None,
        Position(pos.col - 1, pos.row) if pos.col > 0 else None,
        Position(pos.col + 1, pos.row) if pos.col + 1 < size else None,
    ]
    return [p for p in cand if p is not None]


def all_cells(size: int = GRID_SIZE) -> list[Position]:
    return [Position(c, r) for r in range(size) for c in range(size)]


@dataclass(frozen=True)
class MapSpec:
    """Ground truth for one map: start, gold, wumpus and pit locations.

    Every element occupies its own cell and nothing sits on the start cell,
    so the game always begins alive.
    """

    start: Position
    gold: Position
    wumpus: Position
    pits: frozenset[Position] = field(default_factory=frozenset)
    size: int = GRID_SIZE

    def __post_init__(self):
        object.__setattr__(self, "pits", frozenset(self.pits))
        cells = [self.start, self.gold, self.wumpus, *self.pits]
        for cell in cells:
            if not in_bounds(cell, self.size):
                raise ValueError(f"cell {cell} outside {self.size}x{self.size} grid")
        occupied = [self.gold, self.wumpus, *self.pits]
        if len(set(occupied)) != len(occupied):
            raise ValueError("gold, wumpus and pits must occupy distinct cells")
        if self.start in occupied:
            raise ValueError("start cell must be empty")


@dataclass(frozen=True)
class Percept:
    """Sensor reading at a cell: breeze (pit adjacent), stench (wumpus adjacent)."""

    breeze: bool
    stench: bool


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    WON = "won"
    DEAD = "dead"


@dataclass(frozen=True)
class Step:
    """One accepted move: the chosen cell, its score delta and what happened."""

    pos: Position
    delta: int
    event: str


@dataclass(frozen=True)
class GameState:
    start: Position
    visited: frozenset[Position]
    fallen_pits: frozenset[Position]
    score: int
    status: GameStatus
    steps: tuple[Step, ...]
    size: int = GRID_SIZE

    @property
    def position(self) -> Position:
        """The hunter's nominal location: the last chosen cell (display only)."""
        return self.steps[-1].pos if self.steps else self.start


def initial_state(world: MapSpec) -> GameState:
    return GameState(
        start=world.start,
        visited=frozenset([world.start]),
        fallen_pits=frozenset(),
        score=0,
        status=GameStatus.IN_PROGRESS,
        steps=(),
        size=world.size,
    )


def percept_at(world: MapSpec, pos: Position) -> Percept:
    """Breeze/stench at ``pos`` from the 4-neighbourhood; off-grid cells contribute nothing."""
    if not in_bounds(pos, world.size):
        raise ValueError(f"{pos} outside the grid")
    near = neighbors(pos, world.size)
    return Percept(
        breeze=any(n in world.pits for n in near),
        stench=any(n == world.wumpus for n in near),
    )


def legal_moves(state: GameState) -> set[Position]:
    """The frontier: unvisited cells 4-adjacent to the visited region.

    Empty once the game is over (that signals game over, not a fault).
    """
    if state.status is not GameStatus.IN_PROGRESS:
        return set()
    frontier: set[Position] = set()
    for cell in state.visited:
        for n in neighbors(cell, state.size):
            if n not in state.visited:
                frontier.add(n)
    return frontier


def apply_move(state: GameState, world: MapSpec, pos: Position) -> GameState:
    """Uncover ``pos`` and score the outcome. Raises IllegalMoveError and
    leaves the state untouched if ``pos`` is not currently a legal move."""
    frontier = legal_moves(state)
    if pos not in frontier:
        if state.status is not GameStatus.IN_PROGRESS:
            raise IllegalMoveError(f"game is over ({state.status.value}); no moves accepted")
        raise IllegalMoveError(f"illegal move: {pos} is not on the frontier")

    delta = SCORE_NEW_CELL
    status = GameStatus.IN_PROGRESS
    fallen = state.fallen_pits
    if pos == world.gold:
        delta += SCORE_GOLD
        status = GameStatus.WON
        event = EVENT_GOLD
    elif pos == world.wumpus:
        delta += SCORE_WUMPUS
        status = GameStatus.DEAD
        event = EVENT_WUMPUS
    elif pos in world.pits and pos not in state.fallen_pits:
        delta += SCORE_PIT
        fallen = state.fallen_pits | {pos}
        event = EVENT_PIT
    else:
        event = EVENT_NOTHING

    return GameState(
        start=state.start,
        visited=state.visited | {pos},
        fallen_pits=fallen,
        score=state.score + delta,
        status=status,
        steps=state.steps + (Step(pos, delta, event),),
        size=state.size,
    )


def replay(world: MapSpec, choices: Sequence[Position]) -> GameState:
    """Fold apply_move over ``choices``; bit-identical to live play.

    The first illegal choice aborts with its index on the raised error.
    """
    state = initial_state(world)
    for i, pos in enumerate(choices):
        try:
            state = apply_move(state, world, pos)
        except IllegalMoveError as exc:
            raise IllegalMoveError(f"choice {i} ({pos}): {exc}", index=i) from None
    return state


def score_identity(state: GameState) -> int:
    """Closed form the running score must always equal."""
    return (
        SCORE_NEW_CELL * (len(state.visited) - 1)
        + (SCORE_GOLD if state.status is GameStatus.WON else 0)
        + (SCORE_WUMPUS if state.status is GameStatus.DEAD else 0)
        + SCORE_PIT * len(state.fallen_pits)
    )


# --- map file format -------------------------------------------------------
# {"start": "A1", "gold": "C4", "wumpus": "B3", "pits": ["C1"]}
# Column letters are case-insensitive on read and uppercase on write.


def map_to_dict(world: MapSpec) -> dict:
    return {
        "start": world.start.label,
        "gold": world.gold.label,
        "wumpus": world.wumpus.label,
        "pits": [p.label for p in sorted(world.pits)],
    }


def map_from_dict(data: dict) -> MapSpec:
    return MapSpec(
        start=Position.parse(data["start"]),
        gold=Position.parse(data["gold"]),
        wumpus=Position.parse(data["wumpus"]),
        pits=frozenset(Position.parse(p) for p in data.get("pits", [])),
    )


def save_map(world: MapSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(map_to_dict(world), fh, indent=2)
        fh.write("\n")


def load_map(path) -> MapSpec:
    with open(path) as fh:
        return map_from_dict(json.load(fh))
