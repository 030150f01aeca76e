import pytest

from treasurehunt.world import MapSpec, Position


def pos(label: str) -> Position:
    return Position.parse(label)


@pytest.fixture
def figure_map() -> MapSpec:
    """Pit at C1, wumpus at B3: the walkthrough map used across tests."""
    return MapSpec(start=pos("A1"), gold=pos("D4"), wumpus=pos("B3"), pits=frozenset({pos("C1")}))


@pytest.fixture
def bare_map() -> MapSpec:
    """No pits, wumpus tucked in the far corner."""
    return MapSpec(start=pos("A1"), gold=pos("C4"), wumpus=pos("D4"))
