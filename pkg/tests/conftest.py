import random

import pytest

from siltsurf.algebra import validate_gentle
from siltsurf.surface import surface_from_algebra

A1 = {"vertices": ["1"], "arrows": [], "relations": []}
A2 = {
    "vertices": ["1", "2"],
    "arrows": [{"id": "a", "source": "1", "target": "2"}],
    "relations": [],
}
A3_HEREDITARY = {
    "vertices": ["1", "2", "3"],
    "arrows": [
        {"id": "a", "source": "1", "target": "2"},
        {"id": "b", "source": "2", "target": "3"},
    ],
    "relations": [],
}
A3_RELATION = {
    "vertices": ["1", "2", "3"],
    "arrows": [
        {"id": "a", "source": "1", "target": "2"},
        {"id": "b", "source": "2", "target": "3"},
    ],
    "relations": [["a", "b"]],
}
KRONECKER = {
    "vertices": ["1", "2"],
    "arrows": [
        {"id": "a", "source": "1", "target": "2"},
        {"id": "b", "source": "1", "target": "2"},
    ],
    "relations": [],
}
DUAL_NUMBERS = {
    "vertices": ["1"],
    "arrows": [{"id": "a", "source": "1", "target": "1"}],
    "relations": [["a", "a"]],
}
TORUS_G1B1 = {
    "vertices": ["v0", "v1", "v2", "v3"],
    "arrows": [
        {"id": "a0", "source": "v0", "target": "v2"},
        {"id": "a1", "source": "v2", "target": "v1"},
        {"id": "a2", "source": "v2", "target": "v1"},
        {"id": "a3", "source": "v3", "target": "v2"},
        {"id": "a4", "source": "v1", "target": "v0"},
        {"id": "a5", "source": "v1", "target": "v0"},
    ],
    "relations": [["a0", "a1"], ["a1", "a4"], ["a2", "a5"], ["a3", "a2"], ["a4", "a0"]],
}
CASE2_ALGEBRA = {
    "vertices": ["v0", "v1", "v2", "v3"],
    "arrows": [
        {"id": "a0", "source": "v1", "target": "v0"},
        {"id": "a1", "source": "v3", "target": "v0"},
        {"id": "a2", "source": "v3", "target": "v1"},
        {"id": "a3", "source": "v1", "target": "v3"},
        {"id": "a4", "source": "v2", "target": "v2"},
        {"id": "a5", "source": "v0", "target": "v2"},
    ],
    "relations": [["a1", "a5"], ["a2", "a3"], ["a3", "a1"], ["a4", "a4"]],
}


def build(raw):
    alg = validate_gentle(raw)
    surf, dual = surface_from_algebra(alg)
    return alg, surf, dual


@pytest.fixture
def a2():
    return build(A2)


@pytest.fixture
def kronecker():
    return build(KRONECKER)


@pytest.fixture
def rng():
    return random.Random(20260808)


from siltsurf.surface import flip as flip_end  # noqa: E402  (test helper)
