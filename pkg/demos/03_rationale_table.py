"""The recommendation and its rationale: every frontier option, the
outcome probabilities, the expected scores, and the star. This is the
table the browser client renders in the rationale condition. Run with:
python demos/03_rationale_table.py"""
import random

from treasurehunt import advisor
from treasurehunt.logic import KnowledgeBase, tell
from treasurehunt.world import MapSpec, Position, initial_state, legal_moves, apply_move, percept_at

P = Position.parse

world = MapSpec(start=P("A1"), gold=P("D2"), wumpus=P("A4"), pits=frozenset({P("B1"), P("C4")}))
state = initial_state(world)
kb = tell(KnowledgeBase(start=P("A1")), P("A1"), percept_at(world, P("A1")), "nothing")
rng = random.Random(0)


def show_table(rows):
    print("  cells        P(W)   P(P)   P(G)   P(N)   expected")
    for row in advisor.rationale_to_wire(rows):
        star = "*" if row["starred"] else " "
        cells = ",".join(row["cells"])
        print(f"{star} {cells:12s} {row['pWumpus']:>5}  {row['pPit']:>5}  "
              f"{row['pGold']:>5}  {row['pNothing']:>5}  {row['expectedScore']:>8}")


for turn in range(3):
    options = advisor.assess_options(kb, legal_moves(state))
    rec = advisor.recommend(options, rng)
    print(f"\nturn {turn + 1}: breeze at start makes B1/A2 uncertain" if turn == 0
          else f"\nturn {turn + 1}:")
    show_table(advisor.build_rationale(options, rec))
    state = apply_move(state, world, rec)
    step = state.steps[-1]
    print(f"  -> move {rec.label} [{step.event}] score {state.score}")
    if state.status.value != "in_progress":
        break
    kb = tell(kb, rec, percept_at(world, rec), step.event)
