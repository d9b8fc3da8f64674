"""Silting reduction: cutting the surface along a pre-silting arc.

Cutting runs along an arc of the dissection (rebase any admissible dissection
into base position first; see surface.algebra_from_surface).  The two banks
of the cut contract to new marked points whose fans splice the old ones; the
surviving arcs form admissible dissections of the pieces, so every piece is
again a DissectedSurface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveWord, GradedCurve, canonical_key, reduce_word, shift
from .errors import ContractibleError, PreconditionError
from .homs import endpoint_intersections, hom_table, interior_intersections
from .surface import DissectedSurface
from .walk import compare_germs, germ_ray


def arc_word(surf: DissectedSurface, arc: str) -> CurveWord:
    return CurveWord(
        "arc", ((arc, 0),), surf.circ_of((arc, 0)), surf.circ_of((arc, 1))
    )


def as_dissection_arc(surf: DissectedSurface, word: CurveWord) -> str:
    """The dissection arc a reduced word coincides with, or raise."""
    word = reduce_word(surf, word)
    if word.kind != "arc" or len(word.steps) != 1:
        raise PreconditionError(
            "cutting needs an arc of the dissection; rebase the surface first"
        )
    return word.steps[0][0]


@dataclass
class CutSurface:
    original: DissectedSurface
    arc: str
    pieces: list  # DissectedSurface per connected component
    case_tag: int  # 1, 2, or 3
    point_map: dict  # old circ/new-bank names -> (piece index, circ id)
    left_point: str
    right_point: str

    def piece_of_point(self, circ: str) -> int:
        return self.point_map[circ][0]


def cut(surf: DissectedSurface, gamma: CurveWord) -> CutSurface:
    """Cut along an arc of the dissection and contract the two banks.

    The left bank (looking along the arc from its 0-end) contracts to ``pq``,
    the right bank to ``p'q'``; fans splice anticlockwise through the banks.
    """
    arc = as_dissection_arc(surf, gamma)
    p = surf.circ_of((arc, 0))
    q = surf.circ_of((arc, 1))
    if p == q:
        raise PreconditionError("cutting along a loop is out of scope")
    sp = surf.slot_of((arc, 0))
    sq = surf.slot_of((arc, 1))
    fan_p = surf.fan(p)
    fan_q = surf.fan(q)
    a_pre, a_post = fan_p[:sp], fan_p[sp + 1 :]
    b_pre, b_post = fan_q[:sq], fan_q[sq + 1 :]
    left_point, right_point = "pq", "p'q'"
    fans = {w: f for w, f in surf.fans.items() if w not in (p, q)}
    fans[left_point] = tuple(b_pre) + tuple(a_post)
    fans[right_point] = tuple(a_pre) + tuple(b_post)
    arcs = tuple(x for x in surf.arcs if x != arc)
    fan_arrows = _splice_fan_arrows(surf, arc, p, q, sp, sq, left_point, right_point)

    comps = _components(arcs, fans, fan_arrows)
    pieces = []
    point_map = {}
    for pi, (cfans, carcs, carrows) in enumerate(comps):
        piece = DissectedSurface(tuple(sorted(carcs)), cfans, carrows)
        piece.euler_invariants()  # arc-count formula must hold per piece
        for w in cfans:
            point_map[w] = (pi, w)
        pieces.append(piece)

    g0, b0 = surf.euler_invariants()
    if len(pieces) == 2:
        case_tag = 3
    else:
        g1, b1 = pieces[0].euler_invariants()
        case_tag = 1 if b1 == b0 - 1 else 2
    return CutSurface(surf, arc, pieces, case_tag, point_map, left_point, right_point)


def _splice_fan_arrows(surf, arc, p, q, sp, sq, left_point, right_point):
    """Arrow names for the spliced fans; names at untouched points survive."""
    out = {}
    for (w, t), name in surf.fan_arrows.items():
        if w not in (p, q):
            out[(w, t)] = name
    fan_p, fan_q = surf.fan(p), surf.fan(q)

    def carry(new_w, pieces_slots):
        # pieces_slots: list of (old circ, old slot) in new fan order
        for new_t in range(1, len(pieces_slots)):
            w_prev, t_prev = pieces_slots[new_t - 1]
            w_cur, t_cur = pieces_slots[new_t]
            if w_prev == w_cur and t_cur == t_prev + 1:
                name = surf.fan_arrows.get((w_cur, t_cur))
                if name is not None:
                    out[(new_w, new_t)] = name

    left = [(q, t) for t in range(sq)] + [(p, t) for t in range(sp + 1, len(fan_p))]
    right = [(p, t) for t in range(sp)] + [(q, t) for t in range(sq + 1, len(fan_q))]
    carry(left_point, left)
    carry(right_point, right)
    # junction pairs crossing the bank get fresh names
    for new_w, pieces_slots in ((left_point, left), (right_point, right)):
        for new_t in range(1, len(pieces_slots)):
            if (new_w, new_t) not in out:
                out[(new_w, new_t)] = f"{new_w}:{new_t}"
    return out


def _components(arcs, fans, fan_arrows):
    """Split fans/arcs into connected pieces via circ-bullet incidence."""
    probe = DissectedSurface(tuple(sorted(arcs)), fans, dict(fan_arrows))
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for w in fans:
        parent.setdefault(("c", w), ("c", w))
        for corner in range(len(fans[w]) + 1):
            union(("c", w), ("b", probe.bullet_at((w, corner))))
    groups = {}
    for w in fans:
        groups.setdefault(find(("c", w)), []).append(w)
    comps = []
    for ws in groups.values():
        cfans = {w: fans[w] for w in ws}
        carcs = [a for a in arcs if probe.circ_of((a, 0)) in cfans]
        carrows = {
            (w, t): n for (w, t), n in fan_arrows.items() if w in cfans
        }
        comps.append((cfans, tuple(carcs), carrows))
    comps.sort(key=lambda c: sorted(c[0]))
    return comps


# -- identifying arcs in the cut surface -----------------------------------------


def _shared_end_pairs(surf, alpha: CurveWord, garc: str):
    """(alpha end, gamma end) pairs meeting at a circ point."""
    gw = arc_word(surf, garc)
    pairs = []
    for a_end, a_pt in ((0, alpha.start), (1, alpha.end)):
        for g_end, g_pt in ((0, gw.start), (1, gw.end)):
            if a_pt == g_pt:
                pairs.append((a_end, g_end))
    return pairs


def smooth_with_gamma(surf, alpha: CurveWord, a_end: int, garc: str, g_end: int) -> CurveWord:
    gw = arc_word(surf, garc)
    a_in = alpha if a_end == 1 else alpha.reversed()
    g_out = gw if g_end == 0 else gw.reversed()
    joined = CurveWord("arc", a_in.steps + g_out.steps, a_in.start, g_out.end)
    return reduce_word(surf, joined)


def smoothing_class(surf: DissectedSurface, alpha: CurveWord, gamma: CurveWord):
    """All arcs gamma-smoothing equivalent to alpha (size 1, 2 or 4)."""
    garc = as_dissection_arc(surf, gamma)
    alpha = reduce_word(surf, alpha)
    if interior_intersections(surf, alpha, arc_word(surf, garc)):
        raise PreconditionError("alpha crosses gamma in the interior")
    seen = {canonical_key(alpha): alpha}
    frontier = [alpha]
    while frontier:
        cur = frontier.pop()
        for a_end, g_end in _shared_end_pairs(surf, cur, garc):
            try:
                new = smooth_with_gamma(surf, cur, a_end, garc, g_end)
            except ContractibleError:
                continue
            k = canonical_key(new)
            if k not in seen:
                seen[k] = new
                frontier.append(new)
    out = sorted(seen.values(), key=canonical_key)
    if len(out) not in (1, 2, 4):
        raise PreconditionError(f"smoothing class of unexpected size {len(out)}")
    return out


def in_Z(surf: DissectedSurface, x: GradedCurve, p: GradedCurve) -> bool:
    """No positive maps x -> p[i] and none p[i] -> x for i < 0."""
    t1 = hom_table(surf, x, p)
    t2 = hom_table(surf, p, x)
    return not t1.positive_part() and not t2.positive_part()


def is_quotient_zero(surf, x: GradedCurve, p: GradedCurve) -> bool:
    """x is a shifted copy of the cut arc (dies in the quotient)."""
    return canonical_key(x.word) == canonical_key(p.word)


# -- orbits under the induced shift ------------------------------------------------


@dataclass
class OrbitDescriptor:
    base: GradedCurve
    table: list  # graded arcs at shift powers -K..K, index K is the base
    offset: int  # index of base in table
    class_members: list  # canonical words appearing

    def at(self, i: int):
        return self.table[self.offset + i]

    def splices(self):
        """Orbit positions where the underlying arc changes."""
        words = [canonical_key(g.word) for g in self.table]
        return [i for i in range(1, len(words)) if words[i] != words[i - 1]]

    def gap(self):
        """Length of the finite middle ray (the grading gap m), if any.

        Zero splices: a pure shift orbit; one: two rays spliced directly
        (gap zero); two: the middle ray's length is |m|.
        """
        s = self.splices()
        if len(s) <= 1:
            return 0
        if len(s) == 2:
            return s[1] - s[0]
        raise PreconditionError("orbit with more than two splice points")


def _deg0_records(surf, x: GradedCurve, p: GradedCurve, reverse=False):
    """(x_end, p_end) pairs carrying a degree-0 map (x->p, or p->x reversed)."""
    out = []
    for d, ex, ey, _w in endpoint_intersections(surf, x.word, p.word):
        fx = x.f[0] if ex == 0 else x.f[-1]
        fy = p.f[0] if ey == 0 else p.f[-1]
        if not reverse and d == 0 and fy - fx == 0:
            out.append((ex, ey))
        if reverse and d == 1 and fx - fy == 0:
            out.append((ex, ey))
    return out


def _cone_with_gamma(surf, x: GradedCurve, p: GradedCurve, records, forward=True):
    """Geometric cone of the approximation x -> p^r (or cocone for backward)."""
    gw = p.word
    by_end = dict(records)
    delta = 1 if forward else -1
    pieces = []
    if 0 in by_end:
        g_end = by_end[0]
        g_in = p if g_end == 1 else p.reversed()
        pieces.append((g_in.word, g_in.f))
    pieces.append((x.word, tuple(v - delta for v in x.f)))
    if 1 in by_end:
        g_end = by_end[1]
        g_out = p if g_end == 0 else p.reversed()
        pieces.append((g_out.word, g_out.f))
    from .mutation import graded_concat

    return graded_concat(surf, pieces)


def orbit_step(surf, x: GradedCurve, p: GradedCurve, forward=True) -> GradedCurve:
    """One application of the induced shift of the reduction."""
    if forward:
        r = hom_table(surf, x, p).dim(0)
        if r == 0:
            return shift(x, 1)
        records = _deg0_records(surf, x, p)
    else:
        r = hom_table(surf, p, x).dim(0)
        if r == 0:
            return shift(x, -1)
        records = _deg0_records(surf, x, p, reverse=True)
    if len(records) != r:
        raise PreconditionError("degree-0 record bookkeeping out of sync")
    return _cone_with_gamma(surf, x, p, records, forward=forward)


def orbit_of(surf, x: GradedCurve, p: GradedCurve, radius: int = None) -> OrbitDescriptor:
    """The full shift orbit of x in the reduction, walked both ways."""
    if not in_Z(surf, x, p):
        raise PreconditionError("x is not an object of Z")
    if is_quotient_zero(surf, x, p):
        raise PreconditionError("x lies in the cut subcategory; zero in the quotient")
    if radius is None:
        spread = max(x.f) - min(x.f) + max(p.f) - min(p.f)
        radius = 6 + spread
    fwd = [x]
    cur = x
    for _ in range(radius):
        cur = orbit_step(surf, cur, p, forward=True)
        fwd.append(cur)
    back = []
    cur = x
    for _ in range(radius):
        cur = orbit_step(surf, cur, p, forward=False)
        back.append(cur)
    table = list(reversed(back)) + fwd
    members = sorted({canonical_key(g.word) for g in table})
    return OrbitDescriptor(x, table, radius, members)


# -- projection and quotient homs ----------------------------------------------------


def project_to_cut(cs: CutSurface, word: CurveWord):
    """Image of a curve in the cut surface: (piece index, word), or None.

    Curves crossing the cut arc in the interior die; ends at the old
    endpoints move to the bank point on the side their germ leaves from.

    Closed curves: the quotient parameterizes bands by the winding number of
    the lift (the source curve), which is the caller's data; the winding of
    the image with respect to the piece's own dissection is a different
    quantity whenever the source crossed the cut arc's dual, and plays no
    role in the reduction.
    """
    surf = cs.original
    arc = cs.arc
    word = reduce_word(surf, word)
    gw = arc_word(surf, arc)
    if interior_intersections(surf, word, gw):
        return None
    if word.kind == "arc" and canonical_key(word) == canonical_key(gw):
        return None  # the cut arc itself disappears
    steps = tuple(e for e in word.steps if e[0] != arc)
    p, q = gw.start, gw.end

    def remap_end(which):
        pt = word.start if which == 0 else word.end
        if pt not in (p, q):
            return pt
        ray = germ_ray(word, which)
        g_end = 0 if pt == p else 1
        g_ray = germ_ray(gw, g_end)
        c = compare_germs(surf, pt, ray, g_ray)
        if c == 0:
            raise PreconditionError("germ coincides with the cut arc")
        # left of gamma = anticlockwise-after at its start, before at its end
        if pt == p:
            return cs.left_point if c > 0 else cs.right_point
        return cs.right_point if c > 0 else cs.left_point

    if word.kind == "arc":
        new_start, new_end = remap_end(0), remap_end(1)
    if not steps:
        raise ContractibleError("curve dies into the contracted bank")
    anchor = steps[0]
    piece_idx = None
    for pi, piece in enumerate(cs.pieces):
        if anchor[0] in piece.arcs:
            piece_idx = pi
    piece = cs.pieces[piece_idx]
    if word.kind == "closed":
        return piece_idx, reduce_word(piece, CurveWord("closed", steps))
    return piece_idx, reduce_word(piece, CurveWord("arc", steps, new_start, new_end))


def quotient_hom_dim(surf, alg, x: GradedCurve, y: GradedCurve, p: GradedCurve, field=None):
    """dim Hom in the factor category Z_P: chain maps modulo add(P)-factoring."""
    from .oracle import chain_map_basis, complex_of, compose_chain_maps, DEFAULT_FIELD

    field = field or DEFAULT_FIELD
    C = complex_of(surf, alg, x, field)
    D = complex_of(surf, alg, y, field)
    P = complex_of(surf, alg, p, field)
    maps, nulls = chain_map_basis(C, D, 0)
    if not maps:
        return 0
    to_p, _ = chain_map_basis(C, P, 0)
    from_p, _ = chain_map_basis(P, D, 0)
    products = [
        compose_chain_maps(C, f, g, field) for f in to_p for g in from_p
    ]
    basis = _hom_space_basis_index(C, D)
    def vec(m):
        out = {}
        for (i, j), comp in m.items():
            for path, coeff in comp.items():
                out[basis[(i, j, path)]] = coeff
        return out
    null_vecs = [vec(m) for m in nulls]
    prod_vecs = [vec(m) for m in products]
    from .oracle import _rank_and_nullspace

    r_null, _ = _rank_and_nullspace([v for v in null_vecs if v], 0, field)
    r_all, _ = _rank_and_nullspace([v for v in null_vecs + prod_vecs if v], 0, field)
    factoring = r_all - r_null
    # maps span the chain-map kernel including null-homotopic ones
    hom_dim = len(maps) - r_null
    return hom_dim - factoring


def _hom_space_basis_index(C, D):
    from .oracle import _hom_basis

    basis = _hom_basis(C.alg, C, D, 0)
    return {b: i for i, b in enumerate(basis)}


def orbit_hom(surf, alg, x: GradedCurve, y: GradedCurve, p: GradedCurve, field=None) -> int:
    """dim Hom in the orbit category of the reduction: sum over the shift orbit."""
    if not in_Z(surf, x, p) or not in_Z(surf, y, p):
        raise PreconditionError("both objects must lie in Z")
    orbit = orbit_of(surf, y, p)
    total = 0
    for g in orbit.table:
        total += quotient_hom_dim(surf, alg, x, g, p, field)
    # the window must be wide enough that both tails contribute nothing
    if quotient_hom_dim(surf, alg, x, orbit.table[0], p, field) or quotient_hom_dim(
        surf, alg, x, orbit.table[-1], p, field
    ):
        raise PreconditionError("orbit window too small")
    return total
