"""Silting reduction as surface cutting.

Cuts the A2 disk along a projective arc, projects curves to the pieces,
walks a shift orbit of the reduction, and checks the headline equality:
orbit-category Hom dimensions are intersection numbers on the cut surface.
"""

from siltsurf.algebra import validate_gentle
from siltsurf.curves import canonical_key, grade
from siltsurf.homs import intersection_number
from siltsurf.reduction import (
    arc_word,
    cut,
    in_Z,
    orbit_hom,
    orbit_of,
    project_to_cut,
    smoothing_class,
)
from siltsurf.surface import surface_from_algebra

alg = validate_gentle({
    "vertices": ["1", "2"],
    "arrows": [{"id": "a", "source": "1", "target": "2"}],
    "relations": [],
})
surf, _ = surface_from_algebra(alg)

gamma = arc_word(surf, "1")
cs = cut(surf, gamma)
print(f"cutting the disk along arc 1: case {cs.case_tag}, "
      f"{len(cs.pieces)} pieces, banks {cs.left_point} / {cs.right_point}")
for i, piece in enumerate(cs.pieces):
    print(f"  piece {i}: {piece.counts()}")

p = grade(surf, gamma, 0, 0)
x = grade(surf, arc_word(surf, "2"), 0, 0)
print("the other projective lies in Z:", in_Z(surf, x, p))

cls = smoothing_class(surf, x.word, gamma)
print("its smoothing class has", len(cls), "members")

orb = orbit_of(surf, x, p)
mid = orb.offset
print("shift orbit around it (word, grading):")
for g in orb.table[mid - 2 : mid + 3]:
    print("   ", g.word.steps, g.f)

pi, image = project_to_cut(cs, x.word)
dim = orbit_hom(surf, alg, x, x, p)
ints = intersection_number(cs.pieces[pi], image, image)
print(f"orbit-category endomorphisms: {dim}; "
      f"intersections of the projected arc on the cut piece: {ints}")
assert dim == ints
for member in cls:
    proj = project_to_cut(cs, member)
    assert proj[0] == pi and canonical_key(proj[1]) == canonical_key(image)
print("all smoothing-class members project to the same arc")
