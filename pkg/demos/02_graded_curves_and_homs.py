"""Graded curves and Hom tables on the Kronecker annulus.

Grades the core band curve, computes winding numbers and the intersection
table, and reads morphism spaces straight off the surface.
"""

from fractions import Fraction

from siltsurf.algebra import validate_gentle
from siltsurf.curves import CurveWord, grade, power, shift, winding_number
from siltsurf.homs import hom_table, intersection_number
from siltsurf.surface import surface_from_algebra

alg = validate_gentle({
    "vertices": ["1", "2"],
    "arrows": [
        {"id": "a", "source": "1", "target": "2"},
        {"id": "b", "source": "1", "target": "2"},
    ],
    "relations": [],
})
surf, _ = surface_from_algebra(alg)

core = CurveWord("closed", (("1", 0), ("2", 1)))
print("core curve winding number:", winding_number(surf, core))

band = grade(surf, core, 0, 0, band=(Fraction(1), 1))
print("core grading:", band.f)

p1 = grade(surf, CurveWord("arc", (("1", 0),), "c0", "c1"), 0, 0)
print("Hom table P1 -> band:", dict(hom_table(surf, p1, band).per_degree))
print("Hom table band -> P1:", dict(hom_table(surf, band, p1).per_degree))
print("band endomorphisms:", dict(hom_table(surf, band, band).per_degree),
      "(identity plus the canonical self-extension)")

print("shift law:", dict(hom_table(surf, p1, shift(band, 1)).per_degree),
      "= previous table shifted")

g2, g3 = power(band, 2), power(band, 3)
print("intersection number of the squared and cubed core:",
      intersection_number(surf, g2.word, g3.word))
