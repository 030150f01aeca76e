"""Map generation, self-play evaluation and test-map selection.

The experiment uses hand-picked maps: generate a pool of random maps, let
the assistant play each one alone (always accepting its own
recommendation) a fixed number of times, rank by score standard
deviation, then select maps that are low-variance, do not hand the gold
to the first move, and spread the gold across the four quadrants of the
grid. An omniscient shortest-path score per map gives the optimality
ratio.
"""
from __future__ import annotations

import heapq
import math
import random
import statistics
from dataclasses import dataclass
from typing import Iterator

from . import advisor, logic
from .world import (
    EVENT_WUMPUS,
    GRID_SIZE,
    GameState,
    GameStatus,
    MapSpec,
    Position,
    all_cells,
    apply_move,
    initial_state,
    legal_moves,
    neighbors,
    percept_at,
)


class SelectionError(Exception):
    """The pool cannot satisfy a selection criterion; names the culprit."""

    def __init__(self, criterion: str, message: str):
        super().__init__(message)
        self.criterion = criterion


@dataclass(frozen=True)
class SelectionCriteria:
    pool_size: int = 100
    runs_per_map: int = 20
    select_count: int = 10
    max_std_dev: float = 25.0
    gold_not_adjacent_to_start: bool = True
    balance_quadrants: bool = True

    def __post_init__(self):
        if self.select_count > self.pool_size:
            raise ValueError("cannot select more maps than the pool holds")


@dataclass(frozen=True)
class MapStats:
    map: MapSpec
    scores: tuple[int, ...]
    mean: float
    std_dev: float
    std_err: float
    optimal: int
    ratio: float | None  # mean/optimal, only defined for optimal > 0


def generate_map(
    rng: random.Random,
    pit_count: tuple[int, int] = (1, 3),
    size: int = GRID_SIZE,
) -> MapSpec:
    """Random map: start fixed at A1, gold/wumpus/pits uniform over the
    remaining cells, all distinct."""
    lo, hi = pit_count
    if lo < 0 or hi < lo:
        raise ValueError(f"bad pit count range: {pit_count}")
    if hi + 2 > size * size - 1:
        raise ValueError(f"pit count range {pit_count} leaves no room for gold and wumpus")
    start = Position(0, 0)
    pits = rng.randint(lo, hi)
    cells = sorted(c for c in all_cells(size) if c != start)
    picked = rng.sample(cells, pits + 2)
    return MapSpec(
        start=start,
        gold=picked[0],
        wumpus=picked[1],
        pits=frozenset(picked[2:]),
        size=size,
    )


@dataclass(frozen=True)
class SelfPlayStep:
    """One assistant move with the knowledge it was based on."""

    kb: logic.KnowledgeBase
    assessments: tuple[advisor.OptionAssessment, ...]
    recommended: Position
    state: GameState  # state after the move


def self_play_trace(world: MapSpec, rng: random.Random) -> Iterator[SelfPlayStep]:
    """Assistant playing alone, yielding each step. The rng only breaks ties."""
    state = initial_state(world)
    kb = logic.KnowledgeBase(start=world.start, size=world.size)
    kb = logic.tell(kb, world.start, percept_at(world, world.start), "nothing")
    while state.status is GameStatus.IN_PROGRESS:
        assessments = advisor.assess_options(kb, legal_moves(state))
        rec = advisor.recommend(assessments, rng)
        state = apply_move(state, world, rec)
        step = state.steps[-1]
        if step.event != EVENT_WUMPUS:
            kb = logic.tell(kb, rec, percept_at(world, rec), step.event)
        yield SelfPlayStep(kb=kb, assessments=tuple(assessments), recommended=rec, state=state)


def self_play(world: MapSpec, rng: random.Random) -> GameState:
    """Final state of one assistant-only game."""
    state = initial_state(world)
    for step in self_play_trace(world, rng):
        state = step.state
    return state


def optimal_score(world: MapSpec) -> int:
    """Best score an omniscient player can reach: 500 minus the cheapest
    path cost from start to gold, paying 10 per cell entered (110 for a
    pit cell) and never entering the wumpus cell."""

    def cell_cost(pos: Position) -> int:
        return 110 if pos in world.pits else 10

    dist: dict[Position, int] = {world.start: 0}
    heap = [(0, world.start)]
    while heap:
        d, pos = heapq.heappop(heap)
        if pos == world.gold:
            return 500 - d
        if d > dist.get(pos, 1 << 30):
            continue
        for n in neighbors(pos, world.size):
            if n == world.wumpus:
                continue
            nd = d + cell_cost(n)
            if nd < dist.get(n, 1 << 30):
                dist[n] = nd
                heapq.heappush(heap, (nd, n))
    raise RuntimeError("gold unreachable without entering the wumpus cell")


def evaluate_map(world: MapSpec, runs: int, seeds: list[int]) -> MapStats:
    scores = tuple(self_play(world, random.Random(seed)).score for seed in seeds[:runs])
    mean = statistics.fmean(scores)
    std = statistics.stdev(scores) if len(scores) > 1 else 0.0
    opt = optimal_score(world)
    return MapStats(
        map=world,
        scores=scores,
        mean=mean,
        std_dev=std,
        std_err=std / len(scores) ** 0.5,
        optimal=opt,
        ratio=mean / opt if opt > 0 else None,
    )


def evaluate_pool(
    pool: list[MapSpec], criteria: SelectionCriteria, rng: random.Random
) -> list[MapStats]:
    """Self-play every map ``runs_per_map`` times on distinct derived seeds;
    stable-sorted ascending by score standard deviation."""
    if not pool:
        raise ValueError("empty map pool")
    seeds = [rng.getrandbits(48) for _ in range(len(pool) * criteria.runs_per_map)]
    if len(set(seeds)) != len(seeds):  # astronomically unlikely; keep runs independent
        raise RuntimeError("derived seeds collided; use a different master seed")
    stats = [
        evaluate_map(
            world,
            criteria.runs_per_map,
            seeds[i * criteria.runs_per_map : (i + 1) * criteria.runs_per_map],
        )
        for i, world in enumerate(pool)
    ]
    stats.sort(key=lambda s: s.std_dev)
    return stats


def quadrant(pos: Position, size: int = GRID_SIZE) -> tuple[int, int]:
    """2x2 block of the 4x4 grid that the cell falls in."""
    half = size // 2
    return (pos.col // half, pos.row // half)


def gold_adjacent_to_start(world: MapSpec) -> bool:
    return world.gold in neighbors(world.start, world.size)


def select_test_maps(ranked: list[MapStats], criteria: SelectionCriteria) -> list[MapSpec]:
    """Scan the stddev-ranked pool and keep maps that pass every criterion.

    A map is kept iff its gold is not adjacent to the start and accepting
    it keeps every quadrant's gold count within +-1 of select_count/4.
    """
    target = criteria.select_count / 4
    cap = math.floor(target + 1)
    floor_needed = max(0, math.ceil(target - 1))

    chosen: list[MapStats] = []
    counts: dict[tuple[int, int], int] = {}
    rejected_balance = 0
    rejected_adjacent = 0
    hit_threshold = False
    for stats in ranked:
        if len(chosen) == criteria.select_count:
            break
        if stats.std_dev > criteria.max_std_dev:
            hit_threshold = True
            break  # ranked ascending: nothing further can pass
        if criteria.gold_not_adjacent_to_start and gold_adjacent_to_start(stats.map):
            rejected_adjacent += 1
            continue
        q = quadrant(stats.map.gold, stats.map.size)
        if criteria.balance_quadrants and counts.get(q, 0) + 1 > cap:
            rejected_balance += 1
            continue
        chosen.append(stats)
        counts[q] = counts.get(q, 0) + 1

    if len(chosen) < criteria.select_count:
        shortfall = f"only {len(chosen)} of {criteria.select_count} maps pass the criteria"
        if rejected_balance >= max(rejected_adjacent, 1):
            raise SelectionError(
                "quadrant balance", f"gold locations too concentrated to balance; {shortfall}"
            )
        if rejected_adjacent:
            raise SelectionError("gold adjacent to start", shortfall)
        raise SelectionError("max std dev" if hit_threshold else "pool size", shortfall)
    if criteria.balance_quadrants:
        low = min((counts.get((c, r), 0) for c in range(2) for r in range(2)))
        if low < floor_needed:
            raise SelectionError(
                "quadrant balance",
                f"selected golds leave a quadrant at {low} < {floor_needed}",
            )
    return [s.map for s in chosen]


def select_training_maps(
    ranked: list[MapStats],
    exclude: list[MapSpec],
    count_plain: int = 3,
    count_pit_near_start: int = 2,
) -> list[MapSpec]:
    """Training set: low-variance maps like the test ones for slots 1, 2
    and 4, plus maps with a pit right next to the start for slots 3 and 5
    (a breeze on the very first cell)."""
    taken: set[MapSpec] = set(exclude)

    def pick(pred, n):
        out = []
        for stats in ranked:
            if len(out) == n:
                break
            if stats.map in taken:
                continue
            if pred(stats.map):
                out.append(stats.map)
                taken.add(stats.map)
        if len(out) < n:
            raise SelectionError("training maps", "pool lacks suitable training maps")
        return out

    def pit_near_start(world: MapSpec) -> bool:
        return any(p in world.pits for p in neighbors(world.start, world.size))

    plain = pick(lambda m: not gold_adjacent_to_start(m) and not pit_near_start(m), count_plain)
    breezy = pick(pit_near_start, count_pit_near_start)
    # fixed presentation order: plain, plain, pit-near-start, plain, pit-near-start
    return [plain[0], plain[1], breezy[0], plain[2], breezy[1]]


@dataclass(frozen=True)
class FixtureSet:
    """The shipped experiment maps plus the statistics that justified them."""

    master_seed: int
    criteria: SelectionCriteria
    training: list[MapSpec]
    test: list[MapSpec]
    test_stats: list[MapStats]


def build_fixture_set(
    master_seed: int,
    criteria: SelectionCriteria = SelectionCriteria(),
    pit_count: tuple[int, int] = (1, 3),
) -> FixtureSet:
    """End-to-end pipeline run: generate, evaluate, rank, select."""
    rng = random.Random(master_seed)
    pool = [generate_map(rng, pit_count) for _ in range(criteria.pool_size)]
    ranked = evaluate_pool(pool, criteria, rng)
    test = select_test_maps(ranked, criteria)
    training = select_training_maps(ranked, exclude=test)
    by_map = {s.map: s for s in ranked}
    return FixtureSet(
        master_seed=master_seed,
        criteria=criteria,
        training=training,
        test=test,
        test_stats=[by_map[m] for m in test],
    )
