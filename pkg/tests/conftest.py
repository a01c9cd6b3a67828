import pytest

from topobelief.model import SubsetModel
from topobelief.topology import Topology


@pytest.fixture
def sierpinski():
    """Two worlds, opens {{}, {0}, {0,1}}, p true exactly at world 0."""
    return SubsetModel(Topology.from_opens(2, [0b00, 0b01, 0b11]), {"p": 0b01})


@pytest.fixture
def wedge():
    """Three worlds, opens {{}, {0}, {1}, {0,1}, X}, p true at 0 and 2."""
    top = Topology.from_opens(3, [0b000, 0b001, 0b010, 0b011, 0b111])
    return SubsetModel(top, {"p": 0b101})


@pytest.fixture
def indiscrete2():
    return SubsetModel(Topology.indiscrete(2), {"p": 0b01})


@pytest.fixture
def discrete2():
    return SubsetModel(Topology.discrete(2), {"p": 0b10})
