"""Strand walking: angular order of curve germs and positions along dual arcs.

Two reduced curves in minimal position are compared by walking them in
parallel until they diverge; the divergence face decides who is nearer which
corner.  All ordering questions (fan position of a curve end, order of
crossing points along a dual arc, interior intersection counting) reduce to
the two comparators here.

Conventions: the rim of the dual polygon at ``w`` is traversed anticlockwise
as [circ corner, side_0, .., side_k]; a passage with increasing slot has the
circ point on its left.  ``cmp_through(E, r1, r2)`` orders two strands that
both cross the dual arc of ``E`` entering side ``E``, along the direction
from the corner where side ``E`` starts to where it ends; -1 means the first
ray crosses nearer the start.
"""

from __future__ import annotations

from .curves import CurveWord
from .errors import PreconditionError
from .surface import DissectedSurface, flip

STOP = ("stop",)


def ray_of_word(word: CurveWord, after: int, budget: int) -> tuple:
    """Entered ends after crossing index ``after`` (exclusive), travel order.

    Arcs end with a STOP marker; closed words unroll cyclically up to
    ``budget`` entries.
    """
    steps = word.steps
    if word.kind == "arc":
        return steps[after + 1 :] + (STOP,)
    n = len(steps)
    out = []
    i = after
    while len(out) < budget:
        i += 1
        out.append(steps[i % n])
    return tuple(out)


def ray_backward(word: CurveWord, at: int, budget: int) -> tuple:
    """Ray of the reversed word after the reversed copy of crossing ``at``."""
    rev = word.reversed()
    if word.kind == "arc":
        rev_at = len(word.steps) - 1 - at
    else:
        rev_at = len(word.steps) - 1 - at
    return ray_of_word(rev, rev_at, budget)


def germ_ray(word: CurveWord, which_end: int, budget: int = 0) -> tuple:
    """Entered ends read from an arc endpoint (0 = start, 1 = end)."""
    if word.kind != "arc":
        raise PreconditionError("germs are read at arc endpoints")
    w = word if which_end == 0 else word.reversed()
    return w.steps + (STOP,)


def cmp_through(surf: DissectedSurface, E, r1, r2, depth: int = 256) -> int:
    """Order along side ``E`` of two strands entering it, -1 = nearer start."""
    while True:
        if depth <= 0:
            return 0
        depth -= 1
        face = surf.circ_of(flip(E))
        t_slot = surf.slot_of(flip(E))
        x1 = r1[0] if r1 else STOP
        x2 = r2[0] if r2 else STOP
        k1 = _exit_rank(surf, face, t_slot, x1)
        k2 = _exit_rank(surf, face, t_slot, x2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        if x1 == STOP:
            return 0
        if x1 != x2:
            # same slot but different ends cannot happen: slots are unique
            raise PreconditionError("inconsistent rays")
        E, r1, r2 = x1, r1[1:], r2[1:]


def _exit_rank(surf, face, t_slot, x):
    if x == STOP:
        return (1, 0)
    if surf.circ_of(x) != face:
        raise PreconditionError(f"ray leaves face {face}: {x}")
    m = surf.slot_of(x)
    if m == t_slot:
        raise PreconditionError("straight-back exit in a reduced word")
    if m > t_slot:
        return (0, m)
    return (2, m)


def compare_germs(surf: DissectedSurface, w: str, r1, r2) -> int:
    """Anticlockwise order of two curve germs based at circ point ``w``.

    -1 when the first germ comes earlier (the second follows it
    anticlockwise); 0 for identical germs.
    """
    x1, x2 = r1[0], r2[0]
    if x1 == STOP or x2 == STOP:
        raise PreconditionError("empty germ")
    for x in (x1, x2):
        if surf.circ_of(x) != w:
            raise PreconditionError("germ does not start at the given point")
    s1, s2 = surf.slot_of(x1), surf.slot_of(x2)
    if s1 != s2:
        return -1 if s1 < s2 else 1
    return cmp_through(surf, x1, r1[1:], r2[1:])


def fan_position_of_germ(surf: DissectedSurface, w: str, ray) -> tuple:
    """Sortable key locating a germ inside the fan at ``w``.

    The germ of the dissection arc occupying slot ``s`` gets key (s, 0); a
    germ entering the same first side sorts by the comparator against it.
    """
    first = ray[0]
    s = surf.slot_of(first)
    own = surf.fan(w)[s]
    own_ray = (own, STOP)
    c = cmp_through(surf, first, ray[1:], own_ray[1:])
    return (s, c)
