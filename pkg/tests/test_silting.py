import random

import pytest

import conftest as C
from siltsurf.curves import CurveWord, grade, shift
from siltsurf.errors import NotSiltingError
from siltsurf.fuzz import random_silting_walk
from siltsurf.silting import (
    GradedDissection,
    check_admissible,
    initial_dissection,
    is_presilting,
    is_silting_dissection,
    is_tilting,
    silting_report,
)


def test_initial_dissection_silting_and_tilting(a2):
    _, surf, _ = a2
    gd = initial_dissection(surf)
    assert is_silting_dissection(gd)
    assert is_tilting(gd)


def test_admissibility_verdicts(a2):
    _, surf, _ = a2
    l1 = CurveWord("arc", (("1", 0),), "c0", "c1")
    l2 = CurveWord("arc", (("2", 0),), "c2", "c1")
    zeta = CurveWord("arc", (("1", 0), ("2", 1)), "c0", "c2")
    assert check_admissible(surf, [l1, l2])[0] == "admissible_dissection"
    assert check_admissible(surf, [l1])[0] == "admissible_collection"
    verdict, detail = check_admissible(surf, [l1, l2, zeta])
    assert verdict == "not_admissible" and "bullet" in detail
    # interior crossing witness
    _, surf3, _ = C.build(C.A3_HEREDITARY)
    d1 = CurveWord("arc", (("1", 0), ("3", 1)), "c0", "c3")
    d2 = CurveWord("arc", (("2", 0),), "c2", "c1")
    verdict, detail = check_admissible(surf3, [d1, d2])
    assert verdict == "not_admissible" and "cross" in detail


def test_shifted_arc_makes_degree_one_witness(a2):
    _, surf, _ = a2
    gd = initial_dissection(surf)
    arcs = list(gd.arcs)
    # shifting the anticlockwise follower raises the map degree to one
    arcs[1] = shift(arcs[1], -1)
    ok, witnesses = is_presilting(surf, arcs)
    assert not ok
    assert any(d == 1 for (_i, _j, d, _v) in witnesses)
    assert not is_silting_dissection(GradedDissection(surf, tuple(arcs)))


def test_single_simple_arc_presilting(a2):
    _, surf, _ = a2
    l1 = grade(surf, CurveWord("arc", (("1", 0),), "c0", "c1"), 0, 0)
    assert is_presilting(surf, [l1])[0]


def test_non_maximal_collection_not_silting(a2):
    _, surf, _ = a2
    gd = initial_dissection(surf)
    partial = GradedDissection(surf, gd.arcs[:1])
    assert not is_silting_dissection(partial)


def test_global_shift_preserves_silting():
    rng = random.Random(77)
    for _ in range(15):
        alg, surf, gd = random_silting_walk(rng, 5, 2)
        assert is_silting_dissection(gd)
        assert is_silting_dissection(gd.shifted(rng.randint(-2, 2)))


def test_tilting_requires_silting(a2):
    _, surf, _ = a2
    gd = initial_dissection(surf)
    partial = GradedDissection(surf, gd.arcs[:1])
    with pytest.raises(NotSiltingError):
        is_tilting(partial)


def test_tilting_implies_silting_fuzz():
    rng = random.Random(88)
    for _ in range(20):
        alg, surf, gd = random_silting_walk(rng, 5, 2)
        report = silting_report(gd)
        if report["tilting"]:
            assert report["silting"]


def test_case_three_mutation_output_not_tilting(a2):
    from siltsurf.mutation import mutate

    _, surf, _ = a2
    gd = initial_dissection(surf)
    new_gd, tri = mutate(gd, 1, "left")  # arc 2 is case III here
    assert tri.case_tag == "III"
    assert is_silting_dissection(new_gd)
    assert not is_tilting(new_gd)


def test_grading_search_window(a2):
    from siltsurf.reduction import arc_word
    from siltsurf.silting import search_gradings

    _, surf, _ = a2
    words = [arc_word(surf, "1"), arc_word(surf, "2")]
    hits = search_gradings(surf, words, window=1)
    assert (0, 0) in hits
    # arc 2 follows arc 1 anticlockwise: its value must not exceed arc 1's
    assert all(b <= 0 for (_a, b) in hits)
    assert (0, -1) in hits and (0, 1) not in hits
