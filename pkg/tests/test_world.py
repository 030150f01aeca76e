import json
import random

import pytest

from treasurehunt.world import (
    GameStatus,
    IllegalMoveError,
    MapSpec,
    Percept,
    Position,
    all_cells,
    apply_move,
    initial_state,
    legal_moves,
    map_from_dict,
    map_to_dict,
    neighbors,
    percept_at,
    replay,
    score_identity,
)

from conftest import pos


class TestPosition:
    def test_label_round_trip(self):
        for p in all_cells():
            assert Position.parse(p.label) == p

    def test_parse_case_insensitive(self):
        assert Position.parse("b3") == Position(1, 2)
        assert Position.parse("B3").label == "B3"

    def test_parse_rejects_garbage(self):
        for bad in ["", "5", "B", "BB", "B0x"]:
            with pytest.raises(ValueError):
                Position.parse(bad)

    def test_ordering_is_column_then_row(self):
        assert sorted([pos("B1"), pos("A2"), pos("A1")]) == [pos("A1"), pos("A2"), pos("B1")]


class TestMapSpec:
    def test_rejects_overlapping_elements(self):
        with pytest.raises(ValueError):
            MapSpec(start=pos("A1"), gold=pos("B2"), wumpus=pos("B2"))
        with pytest.raises(ValueError):
            MapSpec(start=pos("A1"), gold=pos("B2"), wumpus=pos("C3"), pits=frozenset({pos("B2")}))

    def test_rejects_hazard_on_start(self):
        with pytest.raises(ValueError):
            MapSpec(start=pos("A1"), gold=pos("A1"), wumpus=pos("B2"))
        with pytest.raises(ValueError):
            MapSpec(start=pos("A1"), gold=pos("B2"), wumpus=pos("A1"))
        with pytest.raises(ValueError):
            MapSpec(start=pos("A1"), gold=pos("B2"), wumpus=pos("C3"), pits=frozenset({pos("A1")}))

    def test_zero_pit_map_is_legal(self, bare_map):
        assert bare_map.pits == frozenset()


class TestPercepts:
    def test_breeze_next_to_pit(self, figure_map):
        # pit C1: breeze shows up at B1, C2, D1 and nowhere else
        breezy = {p.label for p in all_cells() if percept_at(figure_map, p).breeze}
        assert breezy == {"B1", "C2", "D1"}

    def test_stench_next_to_wumpus(self, figure_map):
        # wumpus B3: stench at B2, A3, C3, B4
        stinky = {p.label for p in all_cells() if percept_at(figure_map, p).stench}
        assert stinky == {"B2", "A3", "C3", "B4"}

    def test_specific_cells(self, figure_map):
        assert percept_at(figure_map, pos("B1")) == Percept(breeze=True, stench=False)
        assert percept_at(figure_map, pos("B2")) == Percept(breeze=False, stench=True)

    def test_quiet_map(self, bare_map):
        assert percept_at(bare_map, pos("A1")) == Percept(breeze=False, stench=False)

    def test_no_diagonal_percepts(self):
        m = MapSpec(start=pos("A1"), gold=pos("D4"), wumpus=pos("C3"), pits=frozenset({pos("B2")}))
        assert percept_at(m, pos("A1")) == Percept(breeze=False, stench=False)

    def test_out_of_bounds_rejected(self, bare_map):
        with pytest.raises(ValueError):
            percept_at(bare_map, Position(4, 0))


class TestLegalMoves:
    def test_start_frontier(self, bare_map):
        state = initial_state(bare_map)
        assert {p.label for p in legal_moves(state)} == {"A2", "B1"}

    def test_after_one_move(self, bare_map):
        state = apply_move(initial_state(bare_map), bare_map, pos("A2"))
        assert {p.label for p in legal_moves(state)} == {"B1", "A3", "B2"}

    def test_terminal_state_has_no_moves(self, bare_map):
        state = initial_state(bare_map)
        for label in ["B1", "C1", "C2", "C3", "C4"]:
            state = apply_move(state, bare_map, pos(label))
        assert state.status is GameStatus.WON
        assert legal_moves(state) == set()

    def test_frontier_jump_across_the_region(self, bare_map):
        # frontier is relative to all visited cells, not the last one
        state = apply_move(initial_state(bare_map), bare_map, pos("A2"))
        state = apply_move(state, bare_map, pos("A3"))
        assert pos("B1") in legal_moves(state)
        state = apply_move(state, bare_map, pos("B1"))
        assert state.status is GameStatus.IN_PROGRESS


class TestApplyMove:
    def test_plain_cell_costs_ten(self, figure_map):
        state = apply_move(initial_state(figure_map), figure_map, pos("A2"))
        assert state.steps[-1].delta == -10
        assert state.score == -10

    def test_pit_first_entry(self, figure_map):
        state = apply_move(initial_state(figure_map), figure_map, pos("B1"))
        state = apply_move(state, figure_map, pos("C1"))
        assert state.steps[-1].delta == -110
        assert state.status is GameStatus.IN_PROGRESS
        assert state.fallen_pits == frozenset({pos("C1")})

    def test_gold_three_moves_out(self):
        m = MapSpec(start=pos("A1"), gold=pos("A4"), wumpus=pos("D1"))
        state = initial_state(m)
        for label in ["A2", "A3", "A4"]:
            state = apply_move(state, m, pos(label))
        assert state.status is GameStatus.WON
        assert state.score == 470

    def test_wumpus_kills(self, figure_map):
        state = apply_move(initial_state(figure_map), figure_map, pos("A2"))
        state = apply_move(state, figure_map, pos("A3"))
        state = apply_move(state, figure_map, pos("B3"))
        assert state.status is GameStatus.DEAD
        assert state.steps[-1].delta == -1010
        assert state.score == -10 * 3 - 1000

    def test_illegal_cell_rejected_without_change(self, bare_map):
        state = initial_state(bare_map)
        with pytest.raises(IllegalMoveError):
            apply_move(state, bare_map, pos("D4"))
        assert state.visited == frozenset({pos("A1")})

    def test_move_after_game_over_rejected(self, bare_map):
        state = initial_state(bare_map)
        for label in ["B1", "C1", "C2", "C3", "C4"]:
            state = apply_move(state, bare_map, pos(label))
        with pytest.raises(IllegalMoveError):
            apply_move(state, bare_map, pos("A2"))


class TestReplay:
    def test_empty_choices(self, bare_map):
        state = replay(bare_map, [])
        assert state.score == 0
        assert state.visited == frozenset({pos("A1")})

    def test_death_score(self, figure_map):
        state = replay(figure_map, [pos("A2"), pos("A3"), pos("B3")])
        assert state.status is GameStatus.DEAD
        assert state.score == -10 * 3 - 1000

    def test_matches_live_play(self, figure_map):
        rng = random.Random(3)
        live = initial_state(figure_map)
        while live.status is GameStatus.IN_PROGRESS:
            live = apply_move(live, figure_map, rng.choice(sorted(legal_moves(live))))
        again = replay(figure_map, [s.pos for s in live.steps])
        assert again == live

    def test_illegal_choice_reports_index(self, bare_map):
        with pytest.raises(IllegalMoveError) as err:
            replay(bare_map, [pos("A2"), pos("D4")])
        assert err.value.index == 1


def random_playout(world: MapSpec, rng: random.Random):
    state = initial_state(world)
    while state.status is GameStatus.IN_PROGRESS:
        state = apply_move(state, world, rng.choice(sorted(legal_moves(state))))
        yield state


def random_map(rng: random.Random) -> MapSpec:
    cells = sorted(c for c in all_cells() if c != Position(0, 0))
    picked = rng.sample(cells, rng.randint(2, 5))
    return MapSpec(
        start=Position(0, 0), gold=picked[0], wumpus=picked[1], pits=frozenset(picked[2:])
    )


class TestInvariants:
    def test_score_identity_and_connectivity_over_random_playouts(self):
        rng = random.Random(11)
        for _ in range(300):
            world = random_map(rng)
            prev_visited = 1
            for state in random_playout(world, rng):
                assert state.score == score_identity(state)
                assert world.start in state.visited
                assert len(state.visited) == prev_visited + 1
                prev_visited = len(state.visited)
                assert state.fallen_pits <= state.visited & world.pits

    def test_percept_symmetry_on_random_maps(self):
        rng = random.Random(17)
        for _ in range(100):
            world = random_map(rng)
            for p in all_cells():
                percept = percept_at(world, p)
                assert percept.breeze == any(
                    abs(p.col - q.col) + abs(p.row - q.row) == 1 for q in world.pits
                )
                assert percept.stench == (
                    abs(p.col - world.wumpus.col) + abs(p.row - world.wumpus.row) == 1
                )

    def test_visited_region_stays_connected(self):
        rng = random.Random(13)
        world = random_map(rng)
        for state in random_playout(world, rng):
            seen = {world.start}
            queue = [world.start]
            while queue:
                for n in neighbors(queue.pop()):
                    if n in state.visited and n not in seen:
                        seen.add(n)
                        queue.append(n)
            assert seen == set(state.visited)


class TestMapFiles:
    def test_round_trip(self, figure_map):
        data = map_to_dict(figure_map)
        assert data == {"start": "A1", "gold": "D4", "wumpus": "B3", "pits": ["C1"]}
        assert map_from_dict(json.loads(json.dumps(data))) == figure_map

    def test_read_lowercase(self):
        data = {"start": "a1", "gold": "d4", "wumpus": "b3", "pits": ["c1"]}
        assert map_from_dict(data).wumpus == pos("B3")

    def test_missing_pits_key_means_none(self):
        m = map_from_dict({"start": "A1", "gold": "B2", "wumpus": "C3"})
        assert m.pits == frozenset()
