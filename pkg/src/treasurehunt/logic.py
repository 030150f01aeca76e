"""Knowledge base and propositional entailment for the assistant.

The assistant reasons over four statements per cell: pit here, no pit
here, wumpus here, no wumpus here. Its knowledge is the percept history
of the visited cells plus the game axioms:

  * breeze at a visited cell  <->  some 4-neighbour holds a pit
  * stench at a visited cell  <->  some 4-neighbour holds the wumpus
  * exactly one wumpus on the map
  * a pit and the wumpus never share a cell
  * a visited cell holds no wumpus, and no pit unless the hunter
    actually fell in there (in which case the pit is a known fact)

``entails`` decides queries with a clause-based consistency search.
``brute_force_entails`` answers the same contract by enumerating every
candidate world outright; it exists as an independent oracle and the two
must always agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .world import GRID_SIZE, Percept, Position, all_cells, in_bounds, neighbors


class UnsatisfiableKBError(Exception):
    """No world is consistent with the knowledge base. Legal play cannot
    produce this; it indicates a corrupted or hand-built contradictory KB."""


class DuplicateTellError(Exception):
    """A percept was already recorded for this cell."""


class LiteralKind(Enum):
    PIT = "P"
    NO_PIT = "¬P"
    WUMPUS = "W"
    NO_WUMPUS = "¬W"


@dataclass(frozen=True)
class Literal:
    kind: LiteralKind
    pos: Position

    def display(self) -> str:
        return f"{self.kind.value}({chr(ord('A') + self.pos.col)},{self.pos.row + 1})"


class Judgment(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class HazardJudgment:
    """Per-cell pit/wumpus verdict. Yes on one side forces No on the other
    (a pit and the wumpus cannot co-exist), so Yes-Yes and Yes-Unknown
    combinations are rejected outright."""

    pit: Judgment
    wumpus: Judgment

    def __post_init__(self):
        if self.pit is Judgment.YES and self.wumpus is not Judgment.NO:
            raise ValueError(f"impossible judgment: pit={self.pit}, wumpus={self.wumpus}")
        if self.wumpus is Judgment.YES and self.pit is not Judgment.NO:
            raise ValueError(f"impossible judgment: pit={self.pit}, wumpus={self.wumpus}")


@dataclass(frozen=True)
class KnowledgeBase:
    """Immutable snapshot of everything the assistant has observed.

    ``observations`` maps visited cells to their percepts; ``pit_cells``
    are visited cells where the hunter fell into a pit. ``tell`` returns
    a new snapshot, queries are pure.
    """

    start: Position
    observations: tuple[tuple[Position, Percept], ...] = ()
    pit_cells: frozenset[Position] = field(default_factory=frozenset)
    size: int = GRID_SIZE

    @property
    def visited(self) -> frozenset[Position]:
        return frozenset({self.start} | {pos for pos, _ in self.observations})

    def observation_at(self, pos: Position) -> Percept | None:
        for p, percept in self.observations:
            if p == pos:
                return percept
        return None


def tell(kb: KnowledgeBase, pos: Position, percept: Percept, event: str) -> KnowledgeBase:
    """Record the percept and survival facts for a newly visited cell.

    ``event`` is the move's event tag; "pit" marks the pit the hunter just
    fell into as a known fact. A fatal move carries no knowledge (there is
    no survivor to update), so "wumpus" is rejected.
    """
    if kb.observation_at(pos) is not None:
        raise DuplicateTellError(f"percept already recorded for {pos}")
    if event == "wumpus":
        raise ValueError("cannot record knowledge from a fatal move")
    pit_cells = kb.pit_cells | {pos} if event == "pit" else kb.pit_cells
    return KnowledgeBase(
        start=kb.start,
        observations=kb.observations + ((pos, percept),),
        pit_cells=pit_cells,
        size=kb.size,
    )


# --- fast entailment path ---------------------------------------------------
#
# A world is (wumpus cell, set of pit cells). Fixing the wumpus cell, the
# remaining pit theory is unit facts plus positive at-least-one clauses
# from breeze observations, so consistency reduces to "every unsatisfied
# clause still has an allowed cell". Queries are answered by searching for
# a consistent world that falsifies the literal.


@dataclass(frozen=True)
class _Constraints:
    candidates: tuple[Position, ...]       # stench-consistent wumpus cells
    no_pit: frozenset[Position]            # cells known pit-free
    pit_cells: frozenset[Position]         # cells known to hold a pit
    clauses: tuple[frozenset[Position], ...]  # >=1 pit among each cell set
    contradiction: bool                    # unit-level conflict, KB unsatisfiable


@lru_cache(maxsize=256)
def _constraints(kb: KnowledgeBase) -> _Constraints:
    visited = kb.visited
    no_pit = set(visited - kb.pit_cells)
    clauses: list[frozenset[Position]] = []
    contradiction = False

    for pos, percept in kb.observations:
        near = neighbors(pos, kb.size)
        if percept.breeze:
            clauses.append(frozenset(near))
        else:
            for n in near:
                if n in kb.pit_cells:
                    contradiction = True
                no_pit.add(n)

    candidates = []
    for w in all_cells(kb.size):
        if w in visited:
            continue
        if all(p.stench == (w in neighbors(pos, kb.size)) for pos, p in kb.observations):
            candidates.append(w)

    return _Constraints(
        candidates=tuple(candidates),
        no_pit=frozenset(no_pit),
        pit_cells=kb.pit_cells,
        clauses=tuple(clauses),
        contradiction=contradiction,
    )


def _exists_world(
    cons: _Constraints,
    pit_true: frozenset[Position] = frozenset(),
    pit_false: frozenset[Position] = frozenset(),
    wumpus_is: Position | None = None,
    wumpus_not: Position | None = None,
) -> bool:
    """Is some world consistent with the KB and the extra unit constraints?"""
    if cons.contradiction:
        return False
    if pit_true & (cons.no_pit | pit_false):
        return False
    if pit_false & cons.pit_cells:
        return False
    known_pit = cons.pit_cells | pit_true
    for w in cons.candidates:
        if wumpus_is is not None and w != wumpus_is:
            continue
        if wumpus_not is not None and w == wumpus_not:
            continue
        if w in known_pit:
            continue
        forbidden = cons.no_pit | pit_false | {w}
        if all(clause & known_pit or clause - forbidden for clause in cons.clauses):
            return True
    return False


def is_satisfiable(kb: KnowledgeBase) -> bool:
    return _exists_world(_constraints(kb))


def entails(kb: KnowledgeBase, literal: Literal) -> bool:
    """True iff the literal holds in every world consistent with the KB."""
    if not in_bounds(literal.pos, kb.size):
        raise ValueError(f"{literal.pos} outside the grid")
    cons = _constraints(kb)
    if not _exists_world(cons):
        raise UnsatisfiableKBError("knowledge base has no consistent world")
    pos = literal.pos
    if literal.kind is LiteralKind.PIT:
        return not _exists_world(cons, pit_false=frozenset([pos]))
    if literal.kind is LiteralKind.NO_PIT:
        return not _exists_world(cons, pit_true=frozenset([pos]))
    if literal.kind is LiteralKind.WUMPUS:
        return not _exists_world(cons, wumpus_not=pos)
    return not _exists_world(cons, wumpus_is=pos)


def judge(kb: KnowledgeBase, pos: Position) -> HazardJudgment:
    """Classify an unvisited cell from the four literal queries."""
    if entails(kb, Literal(LiteralKind.PIT, pos)):
        pit = Judgment.YES
    elif entails(kb, Literal(LiteralKind.NO_PIT, pos)):
        pit = Judgment.NO
    else:
        pit = Judgment.UNKNOWN
    if entails(kb, Literal(LiteralKind.WUMPUS, pos)):
        wumpus = Judgment.YES
    elif entails(kb, Literal(LiteralKind.NO_WUMPUS, pos)):
        wumpus = Judgment.NO
    else:
        wumpus = Judgment.UNKNOWN
    return HazardJudgment(pit=pit, wumpus=wumpus)


def entailed_literals(kb: KnowledgeBase) -> list[str]:
    """Every entailed literal in display notation, e.g. "¬P(B,1)". Debug dump."""
    out = []
    for pos in all_cells(kb.size):
        for kind in LiteralKind:
            lit = Literal(kind, pos)
            if entails(kb, lit):
                out.append(lit.display())
    return out


# --- brute-force oracle ------------------------------------------------------
#
# Full enumeration: every wumpus placement crossed with every pit subset of
# the unvisited cells, each assignment checked against each axiom and
# observation. Pit subsets are the bits of 0 .. 2^n - 1, vectorised with
# numpy so the oracle stays exhaustive yet quick enough to run per step.


@dataclass(frozen=True)
class _WorldSummary:
    unvisited: tuple[Position, ...]
    wumpus_possible: frozenset[Position]
    pit_always: frozenset[Position]    # unvisited cells holding a pit in every world
    pit_possible: frozenset[Position]  # unvisited cells holding a pit in some world
    satisfiable: bool


@lru_cache(maxsize=64)
def _enumerate_worlds(kb: KnowledgeBase) -> _WorldSummary:
    visited = kb.visited
    unvisited = tuple(c for c in all_cells(kb.size) if c not in visited)
    bit = {c: 1 << i for i, c in enumerate(unvisited)}
    masks = np.arange(1 << len(unvisited), dtype=np.uint32)

    or_all = np.uint32(0)
    and_all = np.uint32((1 << len(unvisited)) - 1)
    wumpus_possible: set[Position] = set()
    satisfiable = False

    for w in all_cells(kb.size):
        if w in visited:
            continue  # survival: a visited cell holds no wumpus
        if w in kb.pit_cells:
            continue  # pit and wumpus never share a cell
        ok = np.ones(masks.shape, dtype=bool)
        ok &= (masks & bit[w]) == 0  # no pit under the wumpus
        feasible = True
        for pos, percept in kb.observations:
            near = neighbors(pos, kb.size)
            if percept.stench != (w in near):
                feasible = False
                break
            pit_known = any(n in kb.pit_cells for n in near)
            near_bits = np.uint32(sum(bit[n] for n in near if n in bit))
            if percept.breeze:
                if not pit_known:
                    ok &= (masks & near_bits) != 0
            else:
                if pit_known:
                    feasible = False
                    break
                ok &= (masks & near_bits) == 0
        if not feasible or not ok.any():
            continue
        satisfiable = True
        wumpus_possible.add(w)
        consistent = masks[ok]
        or_all |= np.bitwise_or.reduce(consistent)
        and_all &= np.bitwise_and.reduce(consistent)

    pit_always = frozenset(c for c in unvisited if satisfiable and and_all & bit[c])
    pit_possible = frozenset(c for c in unvisited if or_all & bit[c])
    return _WorldSummary(
        unvisited=unvisited,
        wumpus_possible=frozenset(wumpus_possible),
        pit_always=pit_always,
        pit_possible=pit_possible,
        satisfiable=satisfiable,
    )


def brute_force_entails(kb: KnowledgeBase, literal: Literal) -> bool:
    """Same contract as ``entails``, by full world enumeration. Oracle use."""
    if not in_bounds(literal.pos, kb.size):
        raise ValueError(f"{literal.pos} outside the grid")
    summary = _enumerate_worlds(kb)
    if not summary.satisfiable:
        raise UnsatisfiableKBError("knowledge base has no consistent world")
    pos = literal.pos
    if pos in kb.visited:
        if literal.kind is LiteralKind.PIT:
            return pos in kb.pit_cells
        if literal.kind is LiteralKind.NO_PIT:
            return pos not in kb.pit_cells
        if literal.kind is LiteralKind.WUMPUS:
            return False
        return True
    if literal.kind is LiteralKind.PIT:
        return pos in summary.pit_always
    if literal.kind is LiteralKind.NO_PIT:
        return pos not in summary.pit_possible
    if literal.kind is LiteralKind.WUMPUS:
        return summary.wumpus_possible == frozenset([pos])
    return pos not in summary.wumpus_possible
