"""Walk through one game by hand: the grid, percepts, scoring and the
frontier rule. Run with: python demos/01_play_a_game.py"""
import random

from treasurehunt.world import (
    GameStatus,
    MapSpec,
    Position,
    apply_move,
    initial_state,
    legal_moves,
    percept_at,
)

P = Position.parse


def draw(world, state):
    rows = []
    for r in range(3, -1, -1):
        cells = []
        for c in range(4):
            pos = Position(c, r)
            if pos not in state.visited:
                cells.append(" ■ ")  # fog of war
                continue
            percept = percept_at(world, pos)
            mark = "~" if percept.breeze else " "
            mark += "s" if percept.stench else " "
            if pos in state.fallen_pits:
                mark = "()"
            if state.status is GameStatus.WON and pos == world.gold:
                mark = "$$"
            if state.status is GameStatus.DEAD and pos == world.wumpus:
                mark = "XX"
            cells.append(f"{mark:>3}")
        rows.append(f"{r+1} |" + "|".join(cells) + "|")
    rows.append("    " + "   ".join("ABCD"))
    return "\n".join(rows)


world = MapSpec(start=P("A1"), gold=P("C3"), wumpus=P("B3"), pits=frozenset({P("C1")}))
state = initial_state(world)

print("The hunter starts at A1. Unvisited cells are fogged (■).")
print("Percepts on visited cells: ~ breeze, s stench, () a pit fallen into.\n")
print(draw(world, state))

rng = random.Random(4)
while state.status is GameStatus.IN_PROGRESS:
    frontier = sorted(legal_moves(state))
    choice = rng.choice(frontier)
    state = apply_move(state, world, choice)
    step = state.steps[-1]
    print(f"\nfrontier {[p.label for p in frontier]} -> move {choice.label}"
          f"  [{step.event}]  delta {step.delta:+d}  score {state.score}")
    print(draw(world, state))

print(f"\ngame over: {state.status.value}, final score {state.score}")
print("moves:", " ".join(s.pos.label for s in state.steps))
