"""Oriented intersections and graded Hom tables, computed on the surface.

Interior crossings of two reduced words come in two shapes: maximal parallel
stretches whose two ends diverge to opposite sides, and single-face chord
pairs with interleaved rim positions.  Boundary intersections are germ pairs
at a shared marked point ordered anticlockwise.  Each record carries the
degree of the morphism it induces; totals match the oriented intersection
number of the defining table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveWord, GradedCurve, ensure_perfect, is_wrap
from .errors import PreconditionError
from .surface import DissectedSurface, flip
from .walk import cmp_through, compare_germs, germ_ray, ray_backward, ray_of_word


@dataclass(frozen=True)
class IntersectionRecord:
    locus: tuple  # ("boundary", circ) | ("interior", face) | ("run", dual arc)
    source: int  # 0: map x -> y, 1: map y -> x
    degree: int
    witness: tuple = ()


@dataclass
class HomTable:
    per_degree: dict
    total: object  # int or math.inf

    def dim(self, d: int) -> int:
        return self.per_degree.get(d, 0)

    def positive_part(self) -> dict:
        return {d: v for d, v in self.per_degree.items() if d > 0 and v}

    def as_sorted(self) -> list:
        return sorted(self.per_degree.items())


def _budget(x: CurveWord, y: CurveWord) -> int:
    return 4 * (len(x.steps) + len(y.steps)) + 16


# -- boundary records ----------------------------------------------------------


def _arc_ends(word: CurveWord):
    out = []
    if word.kind != "arc":
        return out
    if not is_wrap(word.start):
        out.append((0, word.start))
    if not is_wrap(word.end):
        out.append((1, word.end))
    return out


def endpoint_intersections(surf: DissectedSurface, x: CurveWord, y: CurveWord, same=False):
    """Directed boundary records: one per germ pair with y following x.

    Returns list of (direction, x_end, y_end, circ) with direction 0 when the
    record contributes to Int(x, y) (a map x -> y) and 1 for the reverse.
    For ``same=True`` (one curve against itself) each unordered end pair is
    inspected once.
    """
    recs = []
    for ex, wx in _arc_ends(x):
        for ey, wy in _arc_ends(y):
            if wx != wy:
                continue
            if same and ex >= ey:
                continue
            c = compare_germs(surf, wx, germ_ray(x, ex), germ_ray(y, ey))
            if c < 0:
                recs.append((0, ex, ey, wx))
            elif c > 0:
                recs.append((1, ex, ey, wx))
    return recs


# -- interior crossings ----------------------------------------------------------


def _chords(surf: DissectedSurface, word: CurveWord):
    """Face chords of a word: ((face, posA, posB)); pos = (-1,) corner or (slot, idx)."""
    steps = word.steps
    out = []
    if word.kind == "arc":
        if not is_wrap(word.start):
            w = surf.circ_of(steps[0])
            out.append((w, (-1, None), (surf.slot_of(steps[0]), 0)))
        for i in range(len(steps) - 1):
            w = surf.circ_of(steps[i + 1])
            out.append(
                (
                    w,
                    (surf.slot_of(flip(steps[i])), i),
                    (surf.slot_of(steps[i + 1]), i + 1),
                )
            )
        if not is_wrap(word.end):
            w = surf.circ_of(flip(steps[-1]))
            out.append((w, (surf.slot_of(flip(steps[-1])), len(steps) - 1), (-1, None)))
    else:
        n = len(steps)
        for i in range(n):
            j = (i + 1) % n
            w = surf.circ_of(steps[j])
            out.append((w, (surf.slot_of(flip(steps[i])), i), (surf.slot_of(steps[j]), j)))
    return out


def _chord_pairs(surf, x: CurveWord, y: CurveWord, same=False):
    """Interleaved chord pairs: ((face, middle_pair)) with owner + index data."""
    cx = _chords(surf, x)
    cy = _chords(surf, y)
    found = []
    for a_i, (wa, a1, a2) in enumerate(cx):
        for b_i, (wb, b1, b2) in enumerate(cy):
            if same and b_i <= a_i:
                continue
            if wa != wb:
                continue
            slots_a = {a1[0], a2[0]}
            slots_b = {b1[0], b2[0]}
            if -1 in slots_a and -1 in slots_b:
                continue  # shared circ corner
            if (slots_a & slots_b) - {-1}:
                continue  # shared dual arc: handled by stretch matching
            lo_a, hi_a = sorted(slots_a)
            inside = [p for p in (b1, b2) if lo_a < p[0] < hi_a]
            if len(inside) != 1:
                continue
            # interleaved: record the two middle positions with owners
            pts = sorted(
                [(a1, 0), (a2, 0), (b1, 1), (b2, 1)], key=lambda t: t[0][0]
            )
            mid = pts[1], pts[2]
            found.append((wa, mid))
    return found


def _aligned(uu: CurveWord, vv: CurveWord, i: int, j: int) -> bool:
    return uu.steps[i % len(uu.steps)] == vv.steps[j % len(vv.steps)]


def _run_starts(uu: CurveWord, vv: CurveWord, same_dir_self=False):
    """Starting index pairs of maximal aligned runs, with their lengths."""
    nu, nv = len(uu.steps), len(vv.steps)
    cap = nu * nv + 1
    runs = []
    for i in range(nu):
        for j in range(nv):
            if not _aligned(uu, vv, i, j):
                continue
            if same_dir_self and (i - j) % nu == 0 and uu.kind == "closed":
                continue
            if same_dir_self and i == j and uu.kind == "arc":
                continue
            prev_ok = True
            if uu.kind == "arc" and i == 0:
                prev_ok = False
            if vv.kind == "arc" and j == 0:
                prev_ok = False
            if prev_ok and not _aligned(uu, vv, i - 1, j - 1):
                prev_ok = False
            if prev_ok:
                continue  # not a run start
            length = 1
            while length < cap:
                i2, j2 = i + length, j + length
                if uu.kind == "arc" and i2 >= nu:
                    break
                if vv.kind == "arc" and j2 >= nv:
                    break
                if same_dir_self and uu.kind == "closed" and (i2 - j2) % nu == 0:
                    break
                if _aligned(uu, vv, i2, j2):
                    length += 1
                else:
                    break
            if length >= cap:
                continue  # fully periodic: parallel closed strands
            runs.append((i, j, length))
    return runs


def _run_records(surf, x: CurveWord, y: CurveWord, same=False):
    """Crossing records from maximal parallel stretches.

    Returns list of (dir_flag, x_index, y_index_in_y, reversed_flag, cmp)
    where the aligned pair gives the degree data.
    """
    budget = _budget(x, y)
    out = []
    seen = set()
    for rev in (False, True):
        vv = y.reversed() if rev else y
        same_dir_self = same and not rev
        for (i, j, length) in _run_starts(x, vv, same_dir_self=same_dir_self):
            iL, jL = i + length - 1, j + length - 1
            x_last = x.steps[iL % len(x.steps)]
            fwd = cmp_through(
                surf,
                x_last,
                ray_of_word(x, iL, budget),
                ray_of_word(vv, jL, budget),
                depth=budget,
            )
            x_first = x.steps[i % len(x.steps)]
            back = cmp_through(
                surf,
                flip(x_first),
                ray_backward(x, i % len(x.steps), budget),
                ray_backward(vv, j % len(vv.steps), budget),
                depth=budget,
            )
            if fwd == 0 or back == 0 or fwd != back:
                continue
            # canonical key to avoid double counting self pairs
            if same:
                a_rng = tuple(sorted(k % len(x.steps) for k in range(i, i + length)))
                if rev:
                    b_rng = tuple(
                        sorted(
                            (len(y.steps) - 1 - (k % len(y.steps)))
                            for k in range(j, j + length)
                        )
                    )
                else:
                    b_rng = tuple(sorted(k % len(y.steps) for k in range(j, j + length)))
                key = frozenset((a_rng, b_rng))
                if key in seen:
                    continue
                seen.add(key)
            # map vv index back into y
            jj = jL % len(vv.steps)
            y_idx = (len(y.steps) - 1 - jj) if rev else jj
            out.append((i % len(x.steps), iL % len(x.steps), y_idx, rev, fwd))
    return out


def interior_intersections(surf: DissectedSurface, x: CurveWord, y: CurveWord) -> int:
    """Minimal transverse interior crossing count of the two homotopy classes."""
    same = x is y or (x == y)
    runs = _run_records(surf, x, y if not same else x, same=same)
    chords = _chord_pairs(surf, x, y if not same else x, same=same)
    return len(runs) + len(chords)


# -- intersection number table -----------------------------------------------------


def primitive_root(word: CurveWord):
    """(primitive word, power) for a closed word."""
    if word.kind != "closed":
        return word, 1
    n = len(word.steps)
    for p in range(1, n + 1):
        if n % p == 0 and word.steps == (word.steps[:p] * (n // p)):
            return CurveWord("closed", word.steps[:p]), n // p
    return word, 1


def _same_primitive(x: CurveWord, y: CurveWord):
    """Alignment data when both closed words are powers of one primitive curve.

    Returns (px, mx, py, my, rot, reversed) or None; ``rot`` maps py's index 0
    onto px index ``rot`` (after optional reversal of py).
    """
    if x.kind != "closed" or y.kind != "closed":
        return None
    px, mx = primitive_root(x)
    py, my = primitive_root(y)
    if len(px.steps) != len(py.steps):
        return None
    n = len(px.steps)
    for rev in (False, True):
        cand = py.reversed() if rev else py
        for r in range(n):
            if cand.rotated(r).steps == px.steps:
                return px, mx, py, my, r, rev
    return None


def intersection_number(
    surf: DissectedSurface,
    x: CurveWord,
    y: CurveWord,
    x_band: tuple = None,
    y_band: tuple = None,
):
    """The oriented intersection number |Int(x, y)| by the five-case table.

    Band multiplicities enter through ``x_band``/``y_band`` = (lambda, n);
    powers encoded as repeated words are folded into the multiplicity.
    """
    if x.kind == "arc" and y.kind == "arc":
        for e1 in (x.start, x.end):
            for e2 in (y.start, y.end):
                if is_wrap(e1) and is_wrap(e2) and e1 == e2:
                    return math.inf
    mx = (x_band[1] if x_band else 1)
    my = (y_band[1] if y_band else 1)
    if x.kind == "closed":
        px, k = primitive_root(x)
        x, mx = px, mx * k
    if y.kind == "closed":
        py, k = primitive_root(y)
        y, my = py, my * k
    same = _same_primitive(x, y)
    if same is not None:
        px = same[0]
        self_count = interior_intersections(surf, px, px)
        return mx * my * (2 * self_count + 1)
    if x == y or x.reversed() == y:
        # one arc against itself
        self_count = interior_intersections(surf, x, x) + len(
            endpoint_intersections(surf, x, x, same=True)
        )
        loop = x.kind == "arc" and x.start == x.end
        return 2 * self_count + (0 if loop else 1)
    inter = interior_intersections(surf, x, y)
    boundary = sum(
        1 for (d, *_rest) in endpoint_intersections(surf, x, y) if d == 0
    )
    return mx * my * (inter + boundary)


# -- graded Hom tables ------------------------------------------------------------


def _normalize_band(gc: GradedCurve):
    """Fold power words into band multiplicity: (primitive graded curve, lam, n)."""
    word = gc.word
    if word.kind != "closed":
        return gc, None, 1
    lam, n = gc.band if gc.band else (Fraction(1), 1)
    p, k = primitive_root(word)
    if k > 1:
        period = len(p.steps)
        if gc.f[:period] * k != gc.f:
            raise PreconditionError("grading of a power word is not periodic")
        gc = GradedCurve(p, gc.f[:period], None)
        n = n * k
    else:
        gc = GradedCurve(word, gc.f, None)
    return gc, Fraction(lam), n


def _word_equal_with_offset(x: GradedCurve, y: GradedCurve):
    """For equal arcs (up to reversal): the degree offset f_y - f_x, else None."""
    if x.word.kind != "arc" or y.word.kind != "arc":
        return None
    if x.word.steps == y.word.steps and x.word.start == y.word.start:
        return y.f[0] - x.f[0]
    r = y.reversed()
    if x.word.steps == r.word.steps and x.word.start == r.word.start:
        return r.f[0] - x.f[0]
    return None


def hom_records(surf: DissectedSurface, x: GradedCurve, y: GradedCurve, same: bool):
    """Degree-tagged intersection records between two graded curves."""
    recs = []
    wx, wy = x.word, y.word
    for d, ex, ey, w in endpoint_intersections(surf, wx, wy, same=same):
        fx = x.f[0] if ex == 0 else x.f[-1]
        fy = y.f[0] if ey == 0 else y.f[-1]
        if d == 0:
            recs.append(IntersectionRecord(("boundary", w), 0, fy - fx, (ex, ey)))
        else:
            recs.append(IntersectionRecord(("boundary", w), 1, fx - fy, (ex, ey)))
    for face, (m2, m3) in _chord_pairs(surf, wx, wy, same=same):
        (slot2, idx2), owner2 = m2
        (slot3, idx3), owner3 = m3
        f2 = (x.f if owner2 == 0 else y.f)[idx2]
        f3 = (x.f if owner3 == 0 else y.f)[idx3]
        d = f3 - f2
        if owner2 == 0:
            recs.append(IntersectionRecord(("interior", face), 0, d, (idx2, idx3)))
            recs.append(IntersectionRecord(("interior", face), 1, 1 - d, (idx3, idx2)))
        else:
            recs.append(IntersectionRecord(("interior", face), 1, d, (idx2, idx3)))
            recs.append(IntersectionRecord(("interior", face), 0, 1 - d, (idx3, idx2)))
    for (i0, iL, y_idx, rev, sign) in _run_records(surf, wx, wy, same=same):
        d0 = y.f[y_idx] - x.f[iL]
        if sign > 0:
            recs.append(IntersectionRecord(("run", wx.steps[iL][0]), 1, -d0, (iL, y_idx)))
            recs.append(IntersectionRecord(("run", wx.steps[iL][0]), 0, 1 + d0, (iL, y_idx)))
        else:
            recs.append(IntersectionRecord(("run", wx.steps[iL][0]), 0, d0, (iL, y_idx)))
            recs.append(IntersectionRecord(("run", wx.steps[iL][0]), 1, 1 - d0, (iL, y_idx)))
    return recs


def hom_table(surf: DissectedSurface, x: GradedCurve, y: GradedCurve) -> HomTable:
    """Graded Hom dimensions read off the surface: map degrees per intersection.

    For powers of one primitive closed curve the record basis breaks down; the
    table there follows the tube structure (identity and parameter maps scale
    with min of the multiplicities) with interior self-crossing records scaled
    by the product.
    """
    ensure_perfect(x)
    ensure_perfect(y)
    identical = x is y or (
        x.word == y.word and x.f == y.f and (x.band or None) == (y.band or None)
    )
    px, lx, nx = _normalize_band(x)
    py, ly, ny = _normalize_band(y)
    per = {}

    def bump(d, c=1):
        per[d] = per.get(d, 0) + c

    if px.word.kind == "closed" and py.word.kind == "closed":
        same = _same_primitive(px.word, py.word)
        if same is not None:
            _, _, _, _, rot, rev = same
            yy = py.reversed() if rev else py
            yy = GradedCurve(yy.word.rotated(rot), yy.f[rot:] + yy.f[:rot], None)
            d0 = yy.f[0] - px.f[0]
            lam_match = (ly == lx) if not rev else (ly != 0 and Fraction(1, 1) / ly == lx)
            if lam_match:
                bump(d0, min(nx, ny))
                bump(d0 + 1, min(nx, ny))
            selfrecs = hom_records(surf, px, px, same=True)
            for r in selfrecs:
                if r.locus[0] != "boundary":
                    bump(r.degree + d0, nx * ny)
            total = sum(per.values())
            return HomTable(per, total)

    if identical:
        bump(0)
        for r in hom_records(surf, px, px, same=True):
            scale = nx * ny if r.locus[0] != "boundary" else 1
            bump(r.degree, scale)
        return HomTable(per, sum(per.values()))

    off = _word_equal_with_offset(px, py)
    if off is not None:
        bump(off)
    for r in hom_records(surf, px, py, same=False):
        if r.source == 0:
            scale = nx * ny if r.locus[0] != "boundary" else 1
            bump(r.degree, scale)
    per = {d: v for d, v in per.items() if v}
    return HomTable(per, sum(per.values()))
