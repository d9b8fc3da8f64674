"""Distinguished triangles on the surface, flips, and silting mutation."""

from __future__ import annotations

from dataclasses import dataclass

from .curves import (
    CurveWord,
    GradedCurve,
    canonical_key,
    grade,
    reduce_word,
    shift,
    sides,
)
from .errors import ContractibleError, NotSiltingError, PreconditionError
from .silting import GradedDissection, is_silting_dissection
from .surface import DissectedSurface, flip
from .walk import compare_germs, germ_ray


# -- graded concatenation -----------------------------------------------------


def graded_concat(surf: DissectedSurface, pieces) -> GradedCurve:
    """Concatenate graded arc segments through shared endpoints and reduce.

    ``pieces`` is a list of (CurveWord, f) already oriented head-to-tail; the
    f-values are kept verbatim, cancelling pairs are removed jointly, and the
    result is checked against the grading recurrence.
    """
    steps = []
    f = []
    for word, fv in pieces:
        steps.extend(word.steps)
        f.extend(fv)
    start = pieces[0][0].start
    end = pieces[-1][0].end
    changed = True
    while changed:
        changed = False
        for i in range(len(steps) - 1):
            if steps[i + 1] == flip(steps[i]):
                if abs(f[i + 1] - f[i]) != 1:
                    raise PreconditionError("cancelling pair with non-adjacent degrees")
                del steps[i : i + 2]
                del f[i : i + 2]
                changed = True
                break
    if not steps:
        raise ContractibleError("concatenation is contractible")
    word = CurveWord("arc", tuple(steps), start, end)
    out = GradedCurve(word, tuple(f))
    for k, s in enumerate(sides(surf, word)):
        if out.f[k + 1] - out.f[k] != s:
            raise PreconditionError("concatenated grading breaks the recurrence")
    return out


def oriented_piece(gc: GradedCurve, into_end: int):
    """(word, f) of the arc oriented so that ``into_end`` is its target."""
    g = gc if into_end == 1 else gc.reversed()
    return g.word, g.f


# -- distinguished triangles ----------------------------------------------------


@dataclass(frozen=True)
class SurfaceTriangle:
    """Sides (alpha, beta, gamma) with gamma the smoothing of the others at q1.

    alpha runs q3 -> q1, beta runs q1 -> q2, gamma runs q3 -> q2 (as oriented
    words); beta follows alpha anticlockwise at q1.
    """

    alpha: GradedCurve
    beta: GradedCurve
    gamma: GradedCurve

    def corners(self):
        return (
            self.alpha.word.end,  # q1
            self.beta.word.end,  # q2
            self.alpha.word.start,  # q3
        )


def _smooth_oriented_word(surf, alpha_word: CurveWord, beta_word: CurveWord) -> CurveWord:
    """Word of the smoothing of alpha (into q1) and beta (out of q1)."""
    joined = CurveWord(
        "arc",
        alpha_word.steps + beta_word.steps,
        alpha_word.start,
        beta_word.end,
    )
    return reduce_word(surf, joined)


def triangle_from_sides(
    surf: DissectedSurface, alpha: GradedCurve, beta: GradedCurve
) -> SurfaceTriangle:
    """The distinguished triangle on two arcs with alpha.end == beta.start.

    Normalizes the pair so that beta follows alpha anticlockwise at the
    shared point; gamma gets an arbitrary grading (the sum law does not
    depend on it).
    """
    if alpha.word.end != beta.word.start:
        raise PreconditionError("sides are not oriented head-to-tail")
    q1 = alpha.word.end
    c = compare_germs(surf, q1, germ_ray(alpha.word, 1), germ_ray(beta.word, 0))
    if c == 0:
        raise PreconditionError("sides share a full germ")
    if c > 0:
        # swap roles so beta follows alpha anticlockwise; reorient head-to-tail
        alpha, beta = beta.reversed(), alpha.reversed()
    word = _smooth_oriented_word(surf, alpha.word, beta.word)
    gamma = grade(surf, word, 0, 0)
    return SurfaceTriangle(alpha, beta, gamma)


def verify_triangle(surf: DissectedSurface, t: SurfaceTriangle) -> bool:
    """Grading-sum law: the six end values add to exactly one.

    Holds for arbitrary regradings of the three sides of a distinguished
    triangle; a sign error anywhere in the conventions flips it to -1.
    """
    word = _smooth_oriented_word(surf, t.alpha.word, t.beta.word)
    if canonical_key(word) != canonical_key(t.gamma.word):
        raise PreconditionError("gamma is not the smoothing of alpha and beta")
    gamma = t.gamma
    if gamma.word.steps != word.steps:
        gamma = gamma.reversed()
        if gamma.word.steps != word.steps:
            raise PreconditionError("gamma orientation cannot be aligned")
    total = (
        t.alpha.end_value(0)  # s^alpha_{q3}
        - t.alpha.end_value(1)  # s^alpha_{q1}
        + t.beta.end_value(0)  # s^beta_{q1}
        - t.beta.end_value(1)  # s^beta_{q2}
        + gamma.end_value(1)  # s^gamma_{q2}
        - gamma.end_value(0)  # s^gamma_{q3}
    )
    return total == 1


# -- mutation ----------------------------------------------------------------------


@dataclass
class ExchangeTriangle:
    source: GradedCurve
    middles: tuple  # 0, 1 or 2 graded arcs (in the new dissection)
    target: GradedCurve
    case_tag: str  # "I" | "II" | "III"
    witnesses: tuple = ()


def _end_data(gd: GradedDissection, idx: int):
    gc = gd.arcs[idx]
    return [(0, gc.word.start), (1, gc.word.end)]


def _scan_neighbor(gd: GradedDissection, idx: int, which_end: int, direction: str):
    """First arc-end following gamma's end in the fan scan, with grading match.

    direction 'left' scans anticlockwise, 'right' clockwise.  Returns
    (arc index, end, matches) or None when no arc follows at all.
    """
    surf = gd.surface
    gc = gd.arcs[idx]
    q = gc.word.start if which_end == 0 else gc.word.end
    my_ray = germ_ray(gc.word, which_end)
    candidates = []
    for j, j_end in gd.ends_at(q):
        if j == idx:
            continue
        ray = germ_ray(gd.arcs[j].word, j_end)
        c = compare_germs(surf, q, my_ray, ray)
        if direction == "left" and c < 0:
            candidates.append((j, j_end, ray))
        elif direction == "right" and c > 0:
            candidates.append((j, j_end, ray))
    if not candidates:
        return None
    import functools

    def order(a, b):
        if (a[0], a[1]) == (b[0], b[1]):
            return 0
        return compare_germs(surf, q, a[2], b[2])

    candidates.sort(key=functools.cmp_to_key(order))
    j, j_end, _ = candidates[0] if direction == "left" else candidates[-1]
    gamma_val = gc.end_value(which_end)
    neigh_val = gd.arcs[j].end_value(j_end)
    return (j, j_end, neigh_val == gamma_val)


def classify_case(gd: GradedDissection, idx: int, direction: str = "left"):
    """('I'|'II'|'III', neighbors) where neighbors lists per-end matches."""
    if direction not in ("left", "right"):
        raise PreconditionError("direction is 'left' or 'right'")
    matches = []
    for which_end, _q in _end_data(gd, idx):
        found = _scan_neighbor(gd, idx, which_end, direction)
        if found is not None and found[2]:
            matches.append((which_end, found[0], found[1]))
    tag = {2: "I", 1: "II", 0: "III"}[len(matches)]
    return tag, tuple(matches)


def _smoothed_replacement(gd, idx, matches, direction):
    """The arc replacing gamma, with its grading, for cases I and II."""
    gc = gd.arcs[idx]
    delta = 1 if direction == "left" else -1
    mid = (gc.word, tuple(v - delta for v in gc.f))
    by_end = {m[0]: m for m in matches}
    pieces = []
    if 0 in by_end:
        _, j, j_end = by_end[0]
        nb = gd.arcs[j]
        pieces.append(oriented_piece(nb, j_end))
    pieces.append(mid)
    if 1 in by_end:
        _, j, j_end = by_end[1]
        nb = gd.arcs[j]
        w, fv = oriented_piece(nb, j_end)
        pieces.append((w.reversed(), tuple(reversed(fv))))
    return graded_concat(gd.surface, pieces)


def mutate(gd: GradedDissection, idx: int, direction: str = "left"):
    """Left or right silting mutation at one graded arc.

    Returns (new dissection, exchange triangle).  The input must be silting.
    """
    if not is_silting_dissection(gd):
        raise NotSiltingError("mutation needs a silting dissection")
    gc = gd.arcs[idx]
    tag, matches = classify_case(gd, idx, direction)
    delta = 1 if direction == "left" else -1
    if tag == "III":
        new_arc = shift(gc, delta)
    else:
        new_arc = _smoothed_replacement(gd, idx, matches, direction)
    arcs = list(gd.arcs)
    arcs[idx] = new_arc
    new_gd = GradedDissection(gd.surface, tuple(arcs))
    middles = tuple(gd.arcs[m[1]] for m in matches)
    if direction == "left":
        tri = ExchangeTriangle(gc, middles, new_arc, tag, tuple(matches))
    else:
        tri = ExchangeTriangle(new_arc, middles, gc, tag, tuple(matches))
    return new_gd, tri


def mutate_left(gd: GradedDissection, idx: int):
    return mutate(gd, idx, "left")


def mutate_right(gd: GradedDissection, idx: int):
    return mutate(gd, idx, "right")


def tilting_preserved(gd: GradedDissection, idx: int, direction: str = "left") -> bool:
    """Predict tilting-ness of the mutation without performing it.

    Case I preserves tilting; case II does iff no other arc meets the
    unmatched end of gamma; case III never does, except for the degenerate
    isolated arc whose shift stays vacuously tilting.
    """
    from .silting import is_tilting

    if not is_tilting(gd):
        raise NotSiltingError("tilting_preserved needs a tilting dissection")
    tag, matches = classify_case(gd, idx, direction)
    gc = gd.arcs[idx]
    ends = {0: gc.word.start, 1: gc.word.end}
    if tag == "I":
        return True
    if tag == "II":
        matched_end = matches[0][0]
        q2 = ends[1 - matched_end]
        others = [(j, e) for (j, e) in gd.ends_at(q2) if j != idx]
        return not others
    others = [
        (j, e)
        for q in set(ends.values())
        for (j, e) in gd.ends_at(q)
        if j != idx
    ]
    return not others


def mutation_graph(gd: GradedDissection, depth: int, directions=("left", "right")):
    """BFS over mutations; nodes keyed by canonical graded-dissection form."""
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    start_key = gd.canonical_key()
    nodes = {start_key: gd}
    edges = []
    frontier = [start_key]
    for _ in range(depth):
        nxt = []
        for key in frontier:
            g = nodes[key]
            for idx in range(len(g.arcs)):
                for direction in directions:
                    new_gd, tri = mutate(g, idx, direction)
                    nk = new_gd.canonical_key()
                    if nk not in nodes:
                        nodes[nk] = new_gd
                        nxt.append(nk)
                    edges.append((key, nk, idx, direction, tri.case_tag))
        frontier = nxt
    return nodes, edges


# -- flips as homotopy push-outs ------------------------------------------------


def flip_quadrilateral(gd: GradedDissection, idx: int):
    """Case-I data: the four sides, both double smoothings, and gamma_plus.

    The two orders of smoothing the diagonal crossings must give the same
    arc; gradings on alpha_i follow the cone convention (source part
    shifted), the same convention the exchange triangles use.
    """
    tag, matches = classify_case(gd, idx, "left")
    if tag != "I":
        raise PreconditionError("flip needs a case-I configuration")
    gc = gd.arcs[idx]
    by_end = {m[0]: m for m in matches}
    (_, j1, e1), (_, j2, e2) = by_end[0], by_end[1]
    g1, g2 = gd.arcs[j1], gd.arcs[j2]
    w1_in, f1_in = oriented_piece(g1, e1)  # gamma_1 oriented into q'= gamma.start
    w2_in, f2_in = oriented_piece(g2, e2)  # gamma_2 oriented into gamma.end
    w2_out, f2_out = w2_in.reversed(), tuple(reversed(f2_in))
    gdown = tuple(v - 1 for v in gc.f)
    # alpha_1 = cone(a_1: gamma -> gamma_1): q'_1 -> q_2
    a1 = graded_concat(gd.surface, [(w1_in, f1_in), (gc.word, gdown)])
    # alpha_2 = cone(a_2: gamma -> gamma_2): q_1 -> q'_2
    a2 = graded_concat(gd.surface, [(gc.word, gdown), (w2_out, f2_out)])
    # gamma_plus two ways (word level): smooth(alpha_1, gamma_2 at q_2) and
    # smooth(gamma_1, alpha_2 at q_1)
    gp_a = _smooth_oriented_word(gd.surface, a1.word, w2_out)
    gp_b = _smooth_oriented_word(gd.surface, w1_in, a2.word)
    gp_direct = _smoothed_replacement(gd, idx, matches, "left")
    return {
        "gamma": gc,
        "gamma_1": g1,
        "gamma_2": g2,
        "alpha_1": a1,
        "alpha_2": a2,
        "smoothing_a": gp_a,
        "smoothing_b": gp_b,
        "gamma_plus": gp_direct,
    }
