import random
from fractions import Fraction

import conftest as C
from siltsurf.curves import CurveWord, grade, power, shift
from siltsurf.fuzz import random_graded_curve, random_surface
from siltsurf.homs import (
    endpoint_intersections,
    hom_table,
    interior_intersections,
    intersection_number,
)
from siltsurf.oracle import complex_of, oracle_hom_table


def test_a2_projectives(a2):
    _, surf, _ = a2
    l1 = CurveWord("arc", (("1", 0),), "c0", "c1")
    l2 = CurveWord("arc", (("2", 0),), "c2", "c1")
    assert intersection_number(surf, l1, l2) == 1
    assert intersection_number(surf, l2, l1) == 0
    recs = endpoint_intersections(surf, l1, l2)
    assert len(recs) == 1 and recs[0][0] == 0
    g1, g2 = grade(surf, l1, 0, 0), grade(surf, l2, 0, 0)
    t = hom_table(surf, g1, g2)
    assert dict(t.per_degree) == {0: 1}


def test_self_rows(a2):
    _, surf, _ = a2
    l1 = CurveWord("arc", (("1", 0),), "c0", "c1")
    assert intersection_number(surf, l1, l1) == 1
    # simple loop: the basepoint pair contributes, so the total is 2
    _, surfx, _ = C.build(C.DUAL_NUMBERS)
    loop = CurveWord("arc", (("1", 0),), "c0", "c0")
    assert intersection_number(surfx, loop, loop) == 2
    gl = grade(surfx, loop, 0, 0)
    geo = hom_table(surfx, gl, gl)
    orc = oracle_hom_table(
        complex_of(surfx, C.validate_gentle(C.DUAL_NUMBERS), gl),
        complex_of(surfx, C.validate_gentle(C.DUAL_NUMBERS), gl),
    )
    assert dict(geo.per_degree) == dict(orc) == {0: 2}


def test_band_powers(kronecker):
    _, surf, _ = kronecker
    core = CurveWord("closed", (("1", 0), ("2", 1)))
    g = grade(surf, core, 0, 0)
    p2, p3 = power(g, 2), power(g, 3)
    assert intersection_number(surf, p2.word, p3.word) == 6
    assert intersection_number(surf, core, core) == 1


def test_disjoint_dissection_arcs():
    # the zigzag: with ab = 0 the outer arcs share nothing
    _, surf, _ = C.build(C.A3_RELATION)
    l1 = CurveWord("arc", (("1", 0),), "c0", "c1")
    l3 = CurveWord("arc", (("3", 0),), "c3", "c2")
    assert interior_intersections(surf, l1, l3) == 0
    assert intersection_number(surf, l1, l3) == 0
    assert intersection_number(surf, l3, l1) == 0
    assert endpoint_intersections(surf, l1, l3) == []


def test_kronecker_arcs_share_both_endpoints(kronecker):
    _, surf, _ = kronecker
    l1 = CurveWord("arc", (("1", 0),), "c0", "c1")
    l2 = CurveWord("arc", (("2", 0),), "c0", "c1")
    assert intersection_number(surf, l1, l2) == 2  # one map per arrow
    assert intersection_number(surf, l2, l1) == 0


def test_flip_diagonals_cross_once():
    _, surf, _ = C.build(C.A3_HEREDITARY)
    d1 = CurveWord("arc", (("1", 0), ("3", 1)), "c0", "c3")
    d2 = CurveWord("arc", (("2", 0),), "c2", "c1")
    assert interior_intersections(surf, d1, d2) == 1


def test_shift_equivariance(a2, rng):
    alg, surf, _ = a2
    for _ in range(20):
        x = random_graded_curve(rng, surf, 5)
        y = random_graded_curve(rng, surf, 5)
        base = hom_table(surf, x, y).per_degree
        shifted = hom_table(surf, x, shift(y, 1)).per_degree
        assert shifted == {d - 1: v for d, v in base.items()}


def test_hom_table_matches_oracle_fuzz():
    rng = random.Random(123)
    for _ in range(60):
        alg, surf = random_surface(rng, 5)
        x = random_graded_curve(rng, surf, 6)
        y = random_graded_curve(rng, surf, 6)
        geo = hom_table(surf, x, y)
        orc = oracle_hom_table(
            complex_of(surf, alg, x), complex_of(surf, alg, y)
        )
        assert dict(geo.per_degree) == dict(orc)


def test_band_self_tube(kronecker):
    alg, surf, _ = kronecker
    core = grade(surf, CurveWord("closed", (("1", 0), ("2", 1))), 0, 0, band=(Fraction(1), 1))
    t = hom_table(surf, core, core)
    # identity plus the canonical self-extension
    assert dict(t.per_degree) == {0: 1, 1: 1}
    other = grade(surf, CurveWord("closed", (("1", 0), ("2", 1))), 0, 0, band=(Fraction(2), 1))
    assert dict(hom_table(surf, core, other).per_degree) == {}


def test_antisymmetry_of_boundary_records(rng):
    for _ in range(30):
        alg, surf = random_surface(rng, 5)
        x = random_graded_curve(rng, surf, 6)
        y = random_graded_curve(rng, surf, 6)
        if x.word.kind != "arc" or y.word.kind != "arc":
            continue
        recs = endpoint_intersections(surf, x.word, y.word)
        slots = [(r[1], r[2], r[3]) for r in recs]
        assert len(slots) == len(set(slots))


def test_infinite_arc_paths():
    import math

    import pytest

    from siltsurf.curves import grade, wrap_end
    from siltsurf.errors import InfiniteArcError
    from siltsurf.silting import is_presilting

    _, surf, _ = C.build(C.DUAL_NUMBERS)
    w1 = CurveWord("arc", (("1", 0),), "c0", wrap_end("P0"))
    w2 = CurveWord("arc", (("1", 1),), "c0", wrap_end("P0"))
    assert intersection_number(surf, w1, w2) == math.inf
    finite = CurveWord("arc", (("1", 0),), "c0", "c0")
    with pytest.raises(InfiniteArcError):
        hom_table(surf, grade(surf, finite, 0, 0), grade(surf, w1, 0, 0))
    with pytest.raises(InfiniteArcError):
        is_presilting(surf, [grade(surf, w1, 0, 0)])
