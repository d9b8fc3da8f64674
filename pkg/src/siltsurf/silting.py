"""Silting and tilting recognition for graded dissections."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import build_arrangement
from .curves import graded_canonical_key
from .errors import NotSiltingError, PreconditionError
from .homs import hom_table
from .surface import DissectedSurface


def check_admissible(surf: DissectedSurface, words) -> tuple:
    """('admissible_dissection' | 'admissible_collection' | 'not_admissible', detail).

    A collection is admissible when the arcs meet only at endpoints and every
    component of the cut surface contains a bullet point; it is a dissection
    when moreover the count formula is met.
    """
    words = list(words)
    try:
        arr = build_arrangement(surf, words)
    except PreconditionError as ex:
        return ("not_admissible", str(ex))
    empty = [c for c in arr.cells if not arr.cell_bullets[c]]
    if empty:
        return ("not_admissible", f"{len(empty)} enclosed region(s) without a bullet point")
    g, b = surf.euler_invariants()
    expected = len(surf.fans) + len(surf.punctures()) + b + 2 * g - 2
    if len(words) == expected:
        return ("admissible_dissection", None)
    return ("admissible_collection", f"{len(words)} of {expected} arcs")


@dataclass
class GradedDissection:
    """Candidate silting object: a set of graded arcs on one surface."""

    surface: DissectedSurface
    arcs: tuple  # tuple[GradedCurve, ...]
    _flags: dict = field(default_factory=dict, compare=False, repr=False)

    def canonical_key(self) -> tuple:
        return tuple(sorted(graded_canonical_key(a) for a in self.arcs))

    def shifted(self, n: int) -> "GradedDissection":
        from .curves import shift

        return GradedDissection(self.surface, tuple(shift(a, n) for a in self.arcs))

    def ends_at(self, q: str):
        """All (arc index, end 0/1) with an endpoint at circ point q."""
        out = []
        for i, gc in enumerate(self.arcs):
            if gc.word.start == q:
                out.append((i, 0))
            if gc.word.end == q:
                out.append((i, 1))
        return out


def is_presilting(surf: DissectedSurface, arcs) -> tuple:
    """(bool, witnesses): no positive-degree maps between any ordered pair."""
    arcs = list(arcs)
    witnesses = []
    for i, x in enumerate(arcs):
        for j, y in enumerate(arcs):
            table = hom_table(surf, x, y) if i != j else hom_table(surf, x, x)
            for d, v in sorted(table.positive_part().items()):
                witnesses.append((i, j, d, v))
    return (not witnesses, witnesses)


def is_silting_dissection(gd: GradedDissection) -> bool:
    """Admissible dissection whose object has no positive self-extensions."""
    if "silting" in gd._flags:
        return gd._flags["silting"]
    verdict, _ = check_admissible(gd.surface, [a.word for a in gd.arcs])
    ok = verdict == "admissible_dissection"
    if ok:
        ok = is_presilting(gd.surface, gd.arcs)[0]
    gd._flags["silting"] = ok
    return ok


def silting_report(gd: GradedDissection) -> dict:
    verdict, detail = check_admissible(gd.surface, [a.word for a in gd.arcs])
    pre, witnesses = is_presilting(gd.surface, gd.arcs)
    silting = verdict == "admissible_dissection" and pre
    tilting = silting and _gradings_compatible(gd)
    return {
        "admissible": verdict,
        "admissible_detail": detail,
        "presilting": pre,
        "presilting_witnesses": witnesses,
        "silting": silting,
        "tilting": tilting,
    }


def _gradings_compatible(gd: GradedDissection) -> bool:
    by_point = {}
    for i, gc in enumerate(gd.arcs):
        by_point.setdefault(gc.word.start, []).append(gc.end_value(0))
        by_point.setdefault(gc.word.end, []).append(gc.end_value(1))
    return all(len(set(vals)) == 1 for vals in by_point.values())


def is_tilting(gd: GradedDissection) -> bool:
    """Silting with gradings matching at every shared endpoint."""
    if not is_silting_dissection(gd):
        raise NotSiltingError("is_tilting needs a silting dissection")
    return _gradings_compatible(gd)


def initial_dissection(surf: DissectedSurface) -> GradedDissection:
    """(Delta_A, 0): the base dissection graded zero -- the projective generator."""
    from .curves import CurveWord, grade

    arcs = []
    for a in surf.arcs:
        word = CurveWord(
            "arc", ((a, 0),), surf.circ_of((a, 0)), surf.circ_of((a, 1))
        )
        arcs.append(grade(surf, word, 0, 0))
    return GradedDissection(surf, tuple(arcs))


def search_gradings(surf: DissectedSurface, words, window: int = 2):
    """Exhaustive bounded search: which gradings make the arc set silting.

    Anchors of every arc range over [-window, window] with the first arc
    pinned to zero (silting is invariant under the global shift).  Returns
    the list of silting anchor tuples; no closed-form characterisation is
    attempted.
    """
    import itertools

    from .curves import grade

    words = list(words)
    if not words:
        return []
    verdict, _ = check_admissible(surf, words)
    if verdict != "admissible_dissection":
        return []
    hits = []
    ranges = [range(-window, window + 1)] * (len(words) - 1)
    for rest in itertools.product(*ranges):
        anchors = (0,) + rest
        arcs = [grade(surf, w, 0, v) for w, v in zip(words, anchors)]
        if is_presilting(surf, arcs)[0]:
            hits.append(anchors)
    return hits
