"""The homological oracle: complexes, cones, and agreement with the surface.

Fuzzes graded curve pairs, compares the geometric Hom table with exact
linear algebra in the homotopy category, and realizes a smoothing as a
mapping cone.
"""

import random

from siltsurf.curves import CurveWord, grade
from siltsurf.fuzz import random_graded_curve, random_surface
from siltsurf.homs import hom_table
from siltsurf.oracle import (
    chain_map_basis,
    complex_of,
    homotopy_equivalent,
    mapping_cone,
    oracle_hom_table,
)

rng = random.Random(1)
agree = 0
for _ in range(25):
    alg, surf = random_surface(rng, 5)
    x = random_graded_curve(rng, surf, 6)
    y = random_graded_curve(rng, surf, 6)
    geo = dict(hom_table(surf, x, y).per_degree)
    orc = oracle_hom_table(complex_of(surf, alg, x), complex_of(surf, alg, y))
    assert geo == dict(orc), (geo, orc)
    agree += 1
print(f"geometric tables equal oracle tables on {agree}/25 random pairs")

from siltsurf.algebra import validate_gentle
from siltsurf.surface import surface_from_algebra

alg = validate_gentle({
    "vertices": ["1", "2"],
    "arrows": [{"id": "a", "source": "1", "target": "2"}],
    "relations": [],
})
surf, _ = surface_from_algebra(alg)
P1 = complex_of(surf, alg, grade(surf, CurveWord("arc", (("1", 0),), "c0", "c1"), 0, 0))
P2 = complex_of(surf, alg, grade(surf, CurveWord("arc", (("2", 0),), "c2", "c1"), 0, 0))
(a_map,), _ = chain_map_basis(P1, P2, 0)
cone = mapping_cone(P1, P2, a_map)
zeta = grade(surf, CurveWord("arc", (("1", 0), ("2", 1)), "c0", "c2"), 0, -1)
print("cone of P1 -> P2 is the smoothing arc:",
      homotopy_equivalent(cone, complex_of(surf, alg, zeta)))
