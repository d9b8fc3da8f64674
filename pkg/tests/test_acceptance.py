"""Acceptance suite: one test per criterion, exact arithmetic, stated budgets.

Every criterion prints a single PASS/FAIL line (run with -s to see them).
The band power rule is asserted in its literal published form; the same-tube
part of that identity disagrees with the homological ground truth, and the
suite records the discrepancy rather than papering over it (see
notes/decisions.md in the repository root for the analysis).
"""

import random
import time
from fractions import Fraction

from siltsurf.curves import canonical_key, grade, power, shift
from siltsurf.errors import ContractibleError, PreconditionError
from siltsurf.fuzz import (
    random_graded_arc,
    random_graded_curve,
    random_silting_walk,
    random_surface,
    random_tilting_walk,
)
from siltsurf.homs import hom_table, intersection_number, interior_intersections
from siltsurf.mutation import (
    classify_case,
    mutate,
    tilting_preserved,
    triangle_from_sides,
    verify_triangle,
)
from siltsurf.oracle import band_complex, complex_of, oracle_hom_table
from siltsurf.reduction import (
    arc_word,
    cut,
    in_Z,
    is_quotient_zero,
    orbit_hom,
    orbit_of,
    project_to_cut,
)
from siltsurf.silting import is_silting_dissection, is_tilting
from siltsurf.verify import verify_exchange_triangle

SEED = 20260808


def report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else "")
    print(line)
    return line


def _share_orient(a, b):
    pts = {a.word.start: 0, a.word.end: 1}
    for wend, which in ((b.word.start, 0), (b.word.end, 1)):
        if wend in pts:
            return (a if pts[wend] == 1 else a.reversed(), b if which == 0 else b.reversed())
    return None


def test_grading_sum_law():
    rng = random.Random(SEED)
    t0 = time.monotonic()
    checked = failures = 0
    while checked < 1000:
        alg, surf = random_surface(rng, 6)
        a = random_graded_arc(rng, surf, 5)
        b = random_graded_arc(rng, surf, 5)
        pair = _share_orient(a, b)
        if pair is None:
            continue
        try:
            tri = triangle_from_sides(surf, *pair)
        except (PreconditionError, ContractibleError):
            continue
        if not verify_triangle(surf, tri):
            failures += 1
        checked += 1
    elapsed = time.monotonic() - t0
    ok = failures == 0
    report("grading-sum-law", ok, f"{checked} triangles, {failures} failures")
    assert ok and elapsed < 10.0


def test_hom_equals_intersections():
    rng = random.Random(SEED + 1)
    t0 = time.monotonic()
    checked = per_degree_bad = total_bad = 0
    from siltsurf.homs import _same_primitive, primitive_root

    while checked < 500:
        alg, surf = random_surface(rng, 6)
        x = random_graded_curve(rng, surf, 8)
        y = random_graded_curve(rng, surf, 8)
        same_prim = (
            x.word.kind == "closed"
            and y.word.kind == "closed"
            and _same_primitive(primitive_root(x.word)[0], primitive_root(y.word)[0])
        )
        geo = hom_table(surf, x, y)
        orc = oracle_hom_table(complex_of(surf, alg, x), complex_of(surf, alg, y))
        if dict(geo.per_degree) != dict(orc):
            per_degree_bad += 1
        if not same_prim:
            xb = x.band if x.word.kind == "closed" else None
            yb = y.band if y.word.kind == "closed" else None
            if geo.total != intersection_number(surf, x.word, y.word, xb, yb):
                total_bad += 1
        checked += 1
    elapsed = time.monotonic() - t0
    ok = per_degree_bad == 0 and total_bad == 0
    report(
        "hom-equals-intersections",
        ok,
        f"{checked} pairs, {per_degree_bad} degree mismatches, "
        f"{total_bad} total mismatches",
    )
    assert ok and elapsed < 60.0


def test_band_power_rule():
    """Literal table row mn*(2*Int+1) against the oracle totals, m, n <= 3.

    The geometric intersection number implements the row exactly.  The
    oracle total for powers of one primitive curve with a common parameter
    is 2*min(m,n) for a simple curve, which meets the row only at
    (1,2),(2,1),(2,2); the mismatch is reported per pair and the criterion
    is left failing in its published form.
    """
    rng = random.Random(SEED + 2)
    found = 0
    table_ok = True
    oracle_rows = []
    while found < 6:
        alg, surf = random_surface(rng, 5)
        from siltsurf.fuzz import random_gradable_closed
        from siltsurf.curves import is_primitive

        word = random_gradable_closed(rng, surf, 6)
        if word is None or not is_primitive(word):
            continue
        if interior_intersections(surf, word, word) != 0:
            continue  # the criterion asks for simple curves
        found += 1
        g = grade(surf, word, 0, 0)
        self_count = interior_intersections(surf, word, word)
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                formula = m * n * (2 * self_count + 1)
                geo = intersection_number(surf, power(g, m).word, power(g, n).word)
                if geo != formula:
                    table_ok = False
                Bm = band_complex(surf, alg, g, Fraction(1), m)
                Bn = band_complex(surf, alg, g, Fraction(1), n)
                oracle_total = sum(oracle_hom_table(Bm, Bn).values())
                oracle_rows.append((m, n, formula, oracle_total))
    report("band-power-rule/intersection-table", table_ok)
    assert table_ok
    corrected = all(total == 2 * min(m, n) for m, n, _f, total in oracle_rows)
    report("band-power-rule/oracle-min-law", corrected, "total = 2*min(m,n)")
    assert corrected
    literal = all(total == f for _m, _n, f, total in oracle_rows)
    bad = sorted({(m, n) for m, n, f, total in oracle_rows if total != f})
    report(
        "band-power-rule/oracle-literal",
        literal,
        f"published row fails at powers {bad}" if not literal else "",
    )
    assert literal, (
        "published same-tube row mn*(2#Int+1) disagrees with the homotopy "
        f"category at powers {bad}; ground truth is 2*min(m,n)*(2#Int+1)"
    )


def test_mutation_closure_and_shape():
    rng = random.Random(SEED + 3)
    t0 = time.monotonic()
    checked = bad = 0
    while checked < 300:
        alg, surf, gd = random_silting_walk(rng, 5, rng.randrange(3))
        idx = rng.randrange(len(gd.arcs))
        direction = rng.choice(("left", "right"))
        inverse = "right" if direction == "left" else "left"
        new_gd, tri = mutate(gd, idx, direction)
        ok = (
            is_silting_dissection(new_gd)
            and len(tri.middles) == {"I": 2, "II": 1, "III": 0}[tri.case_tag]
            and mutate(new_gd, idx, inverse)[0].canonical_key() == gd.canonical_key()
        )
        if not ok:
            bad += 1
        checked += 1
    elapsed = time.monotonic() - t0
    report("mutation-closure-and-shape", bad == 0, f"{checked} mutations")
    assert bad == 0 and elapsed < 120.0


def test_exchange_triangle_correctness():
    rng = random.Random(SEED + 4)
    checked = bad = 0
    cases = {"I": 0, "II": 0, "III": 0}
    while checked < 120:
        alg, surf, gd = random_silting_walk(rng, 4, rng.randrange(2))
        idx = rng.randrange(len(gd.arcs))
        new_gd, tri = mutate(gd, idx, "left")
        res = verify_exchange_triangle(surf, alg, gd, idx, new_gd, tri)
        cases[tri.case_tag] += 1
        if not (res["approximation"] and res["cone"]):
            bad += 1
        checked += 1
    ok = bad == 0 and cases["I"] > 0 and cases["II"] > 0
    report("exchange-triangle-correctness", ok, f"{checked} checks, cases {cases}")
    assert ok


def test_tilting_characterization():
    rng = random.Random(SEED + 5)
    checked = bad = case3 = case3_bad = 0
    while checked < 150:
        alg, surf, gd = random_tilting_walk(rng, 5, rng.randrange(3))
        if not is_tilting(gd):
            continue
        idx = rng.randrange(len(gd.arcs))
        direction = rng.choice(("left", "right"))
        tag, _ = classify_case(gd, idx, direction)
        pred = tilting_preserved(gd, idx, direction)
        new_gd, _tri = mutate(gd, idx, direction)
        actual = is_tilting(new_gd)
        if pred != actual:
            bad += 1
        if tag == "III":
            gc = gd.arcs[idx]
            shared = [
                (j, e)
                for q in {gc.word.start, gc.word.end}
                for (j, e) in gd.ends_at(q)
                if j != idx
            ]
            if shared:
                case3 += 1
                if actual:
                    case3_bad += 1
        checked += 1
    ok = bad == 0 and case3_bad == 0
    report(
        "tilting-characterization",
        ok,
        f"{checked} predictions, {case3} non-degenerate case-III (all non-tilting)",
    )
    assert ok


def test_cut_surface_bookkeeping():
    rng = random.Random(SEED + 6)
    checked = bad = 0
    cases = {1: 0, 2: 0, 3: 0}
    while checked < 150:
        alg, surf = random_surface(rng, 6)
        g0, b0 = surf.euler_invariants()
        counts0 = surf.counts()
        candidates = [
            a for a in surf.arcs if surf.circ_of((a, 0)) != surf.circ_of((a, 1))
        ]
        if not candidates:
            continue
        arc = rng.choice(candidates)
        cs = cut(surf, arc_word(surf, arc))
        cases[cs.case_tag] += 1
        pieces = cs.pieces
        total_circ = sum(p.counts()["circ"] for p in pieces)
        total_punct = sum(p.counts()["punctures"] for p in pieces)
        total_b = sum(p.euler_invariants()[1] for p in pieces)
        total_g = sum(p.euler_invariants()[0] for p in pieces)
        total_arcs = sum(len(p.arcs) for p in pieces)
        ok = total_circ == counts0["circ"] and total_punct == counts0["punctures"]
        if cs.case_tag == 1:
            ok &= len(pieces) == 1 and total_b == b0 - 1 and total_g == g0
        elif cs.case_tag == 2:
            ok &= len(pieces) == 1 and total_b == b0 + 1 and total_g == g0 - 1
        else:
            ok &= len(pieces) == 2 and total_b == b0 + 1 and total_g == g0
        # the minus-three count: dissections of the pieces total |M|+|P|+b+2g-3
        ok &= total_arcs == counts0["circ"] + counts0["punctures"] + b0 + 2 * g0 - 3
        if not ok:
            bad += 1
        checked += 1
    ok = bad == 0 and all(cases[c] > 0 for c in (1, 2, 3))
    report("cut-surface-bookkeeping", ok, f"{checked} cuts, cases {cases}")
    assert ok


def _orbit_pattern_ok(surf, orb, x, p):
    words = [canonical_key(g.word) for g in orb.table]
    splices = [i for i in range(1, len(words)) if words[i] != words[i - 1]]
    distinct = len(set(words))
    if distinct == 1:
        return not splices or all(
            orb.table[i].f == tuple(v - 1 for v in orb.table[i - 1].f)
            for i in range(1, len(orb.table))
        )
    if distinct == 2:
        return len(splices) == 1
    if distinct == 3:
        # middle ray finite: its length is the m-gap; check against Z-shifts
        if len(splices) != 2:
            return False
        mid = orb.table[splices[0] : splices[1]]
        m = len(mid)
        zshifts = sum(
            1 for s in range(-12, 13) if in_Z(surf, shift(mid[0], s), p)
        )
        return zshifts == m
    return False


def test_reduction_theorem():
    rng = random.Random(SEED + 7)
    checked = hom_bad = pattern_bad = proj_bad = 0
    while checked < 200:
        alg, surf = random_surface(rng, 4)
        candidates = [
            a for a in surf.arcs if surf.circ_of((a, 0)) != surf.circ_of((a, 1))
        ]
        if not candidates:
            continue
        garc = rng.choice(candidates)
        p = grade(surf, arc_word(surf, garc), 0, rng.randint(-1, 1))
        cs = cut(surf, arc_word(surf, garc))
        xs = []
        for _ in range(12):
            cand = random_graded_arc(rng, surf, 5)
            if is_quotient_zero(surf, cand, p):
                continue
            if in_Z(surf, cand, p):
                xs.append(cand)
            if len(xs) == 2:
                break
        if len(xs) < 2:
            continue
        x, y = xs
        orbx = orbit_of(surf, x, p)
        if not _orbit_pattern_ok(surf, orbx, x, p):
            pattern_bad += 1
        px = project_to_cut(cs, x.word)
        py = project_to_cut(cs, y.word)
        if px is None or py is None:
            proj_bad += 1
            checked += 1
            continue
        # same orbit <=> same projected arc (both directions, via y's orbit)
        same_orbit = canonical_key(y.word) in orbx.class_members
        same_proj = px[0] == py[0] and canonical_key(px[1]) == canonical_key(py[1])
        if same_orbit != same_proj:
            proj_bad += 1
        dim = orbit_hom(surf, alg, x, y, p)
        expected = (
            intersection_number(cs.pieces[px[0]], px[1], py[1])
            if px[0] == py[0]
            else 0
        )
        if dim != expected:
            hom_bad += 1
        checked += 1
    ok = hom_bad == 0 and pattern_bad == 0 and proj_bad == 0
    report(
        "reduction-theorem",
        ok,
        f"{checked} pairs, hom {hom_bad}, patterns {pattern_bad}, proj {proj_bad}",
    )
    assert ok


def _determinism_log(seed):
    lines = []
    rng = random.Random(seed)
    for _ in range(40):
        alg, surf = random_surface(rng, 5)
        x = random_graded_curve(rng, surf, 6)
        y = random_graded_curve(rng, surf, 6)
        t = hom_table(surf, x, y)
        lines.append(f"{sorted(t.per_degree.items())}|{t.total}")
    for _ in range(20):
        alg, surf, gd = random_silting_walk(rng, 4, 2)
        lines.append(str(gd.canonical_key()))
    return "\n".join(lines)


def test_determinism():
    first = _determinism_log(SEED)
    second = _determinism_log(SEED)
    ok = first == second
    report("determinism", ok, f"{len(first)} bytes compared")
    assert ok
