"""What the assistant knows and when: feed percepts into the knowledge
base and watch entailments accumulate. Run with:
python demos/02_logical_inference.py"""
from treasurehunt.logic import KnowledgeBase, entailed_literals, judge, tell
from treasurehunt.world import MapSpec, Position, percept_at

P = Position.parse

# pit at C1, wumpus at B3; the assistant starts knowing only A1 is safe
world = MapSpec(start=P("A1"), gold=P("D4"), wumpus=P("B3"), pits=frozenset({P("C1")}))
kb = KnowledgeBase(start=P("A1"))

for label in ["A1", "A2", "B2", "A3"]:
    pos = P(label)
    percept = percept_at(world, pos)
    kb = tell(kb, pos, percept, "nothing")
    print(f"visit {label}: breeze={percept.breeze} stench={percept.stench}")
    print("  entailed:", " ".join(entailed_literals(kb)) or "(nothing yet)")

print()
print("After the stenches at B2 and A3 the wumpus has exactly one place left:")
for label in ["B3", "B4", "C3", "D4"]:
    j = judge(kb, P(label))
    print(f"  judge {label}: pit={j.pit.value:8s} wumpus={j.wumpus.value}")
