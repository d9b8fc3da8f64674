"""Curve words on a dissected surface: reduction, gradings, smoothing.

A curve is stored as the sequence of dual-arc crossings it makes, each
crossing recorded as the arc end (side instance) it enters.  Between two
consecutive crossings the curve runs through the dual polygon of one marked
point; whether that point sits left or right of the travel direction follows
from the fan slots, and drives the grading recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ContractibleError,
    InfiniteArcError,
    NotGradableError,
    PreconditionError,
    WordError,
)
from .surface import ArcEnd, DissectedSurface, flip


def wrap_end(puncture: str) -> tuple:
    """End marker for an infinite arc wrapping ``puncture``."""
    return ("wrap", puncture)


def is_wrap(endpoint) -> bool:
    return isinstance(endpoint, tuple) and len(endpoint) == 2 and endpoint[0] == "wrap"


@dataclass(frozen=True)
class CurveWord:
    """Reduced or raw crossing word.  ``kind`` is ``"arc"`` or ``"closed"``."""

    kind: str
    steps: tuple  # tuple[ArcEnd, ...] entered side instances, travel order
    start: object = None  # circ id, or wrap marker (arcs only)
    end: object = None

    def crossings(self) -> tuple:
        """Dual arc ids in travel order (dual arcs are labelled by their arc)."""
        return tuple(e[0] for e in self.steps)

    def reversed(self) -> "CurveWord":
        return CurveWord(
            self.kind,
            tuple(flip(e) for e in reversed(self.steps)),
            self.end,
            self.start,
        )

    def rotated(self, k: int) -> "CurveWord":
        if self.kind != "closed":
            raise PreconditionError("only closed words rotate")
        n = len(self.steps)
        k %= n
        return CurveWord("closed", self.steps[k:] + self.steps[:k])


def validate_word(surf: DissectedSurface, word: CurveWord) -> None:
    steps = word.steps
    for e in steps:
        if e[0] not in surf.arcs or e[1] not in (0, 1):
            raise WordError(f"unknown arc end {e}")
    if word.kind == "arc":
        if not steps:
            raise ContractibleError("arc word with no crossings is contractible")
        if not is_wrap(word.start) and surf.circ_of(steps[0]) != word.start:
            raise WordError("first crossing does not start at the declared endpoint")
        if not is_wrap(word.end) and surf.circ_of(flip(steps[-1])) != word.end:
            raise WordError("last crossing does not reach the declared endpoint")
        pairs = zip(steps, steps[1:])
    elif word.kind == "closed":
        if not steps:
            raise ContractibleError("empty closed word")
        pairs = zip(steps, steps[1:] + steps[:1])
    else:
        raise WordError(f"unknown curve kind {word.kind!r}")
    for prev, cur in pairs:
        if surf.circ_of(cur) != surf.circ_of(flip(prev)):
            raise WordError(f"crossings {prev} -> {cur} do not share a dual polygon")


def reduce_word(surf: DissectedSurface, word: CurveWord) -> CurveWord:
    """Cancel straight-back double crossings until the word is reduced.

    A pair cancels exactly when the second crossing re-enters the side it just
    left; windings around punctures or marked corners enter the other side
    instance and survive.  Idempotent; raises ContractibleError when nothing
    is left.
    """
    validate_word(surf, word)
    steps = list(word.steps)
    if word.kind == "arc":
        changed = True
        while changed:
            changed = False
            for i in range(len(steps) - 1):
                if steps[i + 1] == flip(steps[i]):
                    del steps[i : i + 2]
                    changed = True
                    break
        if not steps:
            raise ContractibleError("word reduces to a contractible curve")
        return CurveWord("arc", tuple(steps), word.start, word.end)

    changed = True
    while changed and steps:
        changed = False
        n = len(steps)
        for i in range(n):
            j = (i + 1) % n
            if n >= 2 and steps[j] == flip(steps[i]):
                for k in sorted((i, j), reverse=True):
                    del steps[k]
                changed = True
                break
    if not steps:
        raise ContractibleError("closed word reduces to a contractible curve")
    return CurveWord("closed", tuple(steps))


def is_reduced(surf: DissectedSurface, word: CurveWord) -> bool:
    try:
        return reduce_word(surf, word).steps == word.steps
    except ContractibleError:
        return False


def passage_slots(surf: DissectedSurface, prev: ArcEnd, cur: ArcEnd):
    """(face, from-slot, to-slot) of the passage between two crossings."""
    e = flip(prev)
    w, i = surf.end_pos(e)
    w2, j = surf.end_pos(cur)
    if w != w2:
        raise WordError("passage endpoints in different dual polygons")
    return w, i, j


def sides(surf: DissectedSurface, word: CurveWord) -> tuple:
    """+1 where the circ point of the traversed polygon is left of travel."""
    steps = word.steps
    pairs = (
        zip(steps, steps[1:])
        if word.kind == "arc"
        else zip(steps, steps[1:] + steps[:1])
    )
    out = []
    for prev, cur in pairs:
        _, i, j = passage_slots(surf, prev, cur)
        if i == j:
            raise WordError("word is not reduced (straight-back crossing)")
        out.append(1 if j > i else -1)
    return tuple(out)


def winding_number(surf: DissectedSurface, word: CurveWord) -> int:
    if word.kind != "closed":
        raise PreconditionError("winding number is defined for closed words")
    return sum(sides(surf, word))


def is_primitive(word: CurveWord) -> bool:
    if word.kind != "closed":
        raise PreconditionError("primitivity is about closed words")
    n = len(word.steps)
    for k in range(1, n):
        if n % k == 0 and word.steps == word.rotated(k).steps:
            return False
    return True


# -- graded curves ----------------------------------------------------------


@dataclass(frozen=True)
class GradedCurve:
    word: CurveWord
    f: tuple  # int per crossing, travel order
    band: tuple = None  # (lambda: Fraction, n: int) for band objects

    def anchor(self) -> tuple[int, int]:
        return 0, self.f[0]

    def reversed(self) -> "GradedCurve":
        return GradedCurve(self.word.reversed(), tuple(reversed(self.f)), self.band)

    def end_value(self, which: int) -> int:
        """Grading at the crossing nearest the chosen endpoint (0=start, 1=end)."""
        if self.word.kind != "arc":
            raise PreconditionError("end values are for arcs")
        return self.f[0] if which == 0 else self.f[-1]


def grade(
    surf: DissectedSurface,
    word: CurveWord,
    anchor_index: int = 0,
    anchor_value: int = 0,
    band: tuple = None,
) -> GradedCurve:
    """The unique grading with f(anchor) = value; closed words need winding 0."""
    if not (0 <= anchor_index < len(word.steps)):
        raise PreconditionError("anchor index out of range")
    s = sides(surf, word)
    if word.kind == "closed":
        if sum(s) != 0:
            raise NotGradableError("closed curve has nonzero winding number")
        if band is not None:
            lam, n = band
            if Fraction(lam) == 0:
                raise PreconditionError("band parameter lambda must be nonzero")
            if n < 1:
                raise PreconditionError("band multiplicity must be >= 1")
    f = [0] * len(word.steps)
    f[anchor_index] = anchor_value
    for i in range(anchor_index + 1, len(word.steps)):
        f[i] = f[i - 1] + s[i - 1]
    for i in range(anchor_index - 1, -1, -1):
        f[i] = f[i + 1] - s[i]
    return GradedCurve(word, tuple(f), band)


def shift(gc: GradedCurve, n: int) -> GradedCurve:
    """Shift [n]: every grading value drops by n."""
    return GradedCurve(gc.word, tuple(v - n for v in gc.f), gc.band)


def power(gc: GradedCurve, n: int) -> GradedCurve:
    """n-th power of a primitive gradable closed curve, grading repeated."""
    if gc.word.kind != "closed":
        raise PreconditionError("powers are for closed curves")
    if n < 1:
        raise PreconditionError("power must be >= 1")
    if not is_primitive(gc.word):
        raise PreconditionError("power of a non-primitive closed curve")
    word = CurveWord("closed", gc.word.steps * n)
    return GradedCurve(word, gc.f * n, gc.band)


def ensure_perfect(gc_or_word) -> None:
    word = gc_or_word.word if isinstance(gc_or_word, GradedCurve) else gc_or_word
    if word.kind == "arc" and (is_wrap(word.start) or is_wrap(word.end)):
        raise InfiniteArcError("infinite arc wraps a puncture; not a perfect object")


# -- smoothing ----------------------------------------------------------------


def oriented_into(word: CurveWord, which_end: int) -> CurveWord:
    """Orient an arc so that the chosen end (0=start, 1=end) is its target."""
    if word.kind != "arc":
        raise PreconditionError("smoothing needs arcs")
    return word if which_end == 1 else word.reversed()


def smooth_words(
    surf: DissectedSurface, a: CurveWord, a_end: int, b: CurveWord, b_end: int
) -> CurveWord:
    """Smooth two arcs at a shared circ point: concatenate and reduce.

    ``a_end``/``b_end`` select which end of each arc sits at the smoothing
    point (loops have two).  The result runs from a's other end to b's other
    end; raises ContractibleError when the arcs cancel entirely.
    """
    a_in = oriented_into(a, a_end)
    b_out = oriented_into(b, b_end).reversed()
    if a_in.end != b_out.start or is_wrap(a_in.end):
        raise PreconditionError("arcs do not meet at a common circ point")
    joined = CurveWord("arc", a_in.steps + b_out.steps, a_in.start, b_out.end)
    return reduce_word(surf, joined)


def smooth_at(surf: DissectedSurface, a: GradedCurve, q: str, b: GradedCurve) -> CurveWord:
    """Smoothing at a circ point q with ends resolved automatically.

    Ambiguous configurations (loops at q on both curves) take the first
    matching end pair in (end-of-a, end-of-b) order.
    """
    for a_end in (1, 0):
        for b_end in (0, 1):
            a_pt = a.word.end if a_end == 1 else a.word.start
            b_pt = b.word.start if b_end == 0 else b.word.end
            if a_pt == q and b_pt == q:
                return smooth_words(surf, a.word, a_end, b.word, b_end)
    raise PreconditionError(f"curves do not share the circ point {q!r}")


# -- canonical forms -----------------------------------------------------------


def canonical_key(word: CurveWord) -> tuple:
    if word.kind == "arc":
        cands = [word, word.reversed()]
    else:
        cands = [word.rotated(k) for k in range(len(word.steps))]
        rev = word.reversed()
        cands += [rev.rotated(k) for k in range(len(word.steps))]
    return min((w.kind, w.steps, w.start, w.end) for w in cands)


def graded_canonical_key(gc: GradedCurve) -> tuple:
    word = gc.word
    if word.kind == "arc":
        cands = [gc, gc.reversed()]
    else:
        cands = []
        for base in (gc, gc.reversed()):
            n = len(base.word.steps)
            for k in range(n):
                cands.append(
                    GradedCurve(
                        base.word.rotated(k),
                        base.f[k:] + base.f[:k],
                        base.band,
                    )
                )
    return min(
        (c.word.kind, c.word.steps, c.word.start, c.word.end, c.f, c.band or ())
        for c in cands
    )


# -- homotopy string dictionary -----------------------------------------------


def word_to_string(word_or_gc, surf: DissectedSurface):
    """Translate a reduced curve word into its homotopy string/band word."""
    from .algebra import StringWord

    word = word_or_gc.word if isinstance(word_or_gc, GradedCurve) else word_or_gc
    ensure_perfect(word)
    word = reduce_word(surf, word)
    steps = word.steps
    pairs = (
        list(zip(steps, steps[1:]))
        if word.kind == "arc"
        else list(zip(steps, steps[1:] + steps[:1]))
    )
    letters = []
    for prev, cur in pairs:
        w, i, j = passage_slots(surf, prev, cur)
        lo, hi = min(i, j), max(i, j)
        path = tuple(surf.fan_arrows[(w, t)] for t in range(lo + 1, hi + 1))
        letters.append((path, j > i))
    if word.kind == "arc":
        return StringWord(
            tuple(letters), (steps[0][0], steps[-1][0]), closed=False
        )
    return StringWord(tuple(letters), (steps[0][0], steps[0][0]), closed=True)


def string_to_word(sword, surf: DissectedSurface) -> CurveWord:
    """Translate a homotopy string/band back into a curve word."""
    # index: arrow name -> (circ, slot) of the fan pair realizing it
    arrow_pos = {name: (w, t) for (w, t), name in surf.fan_arrows.items()}

    if not sword.letters:
        if sword.closed:
            raise WordError("closed word needs at least one letter")
        v = sword.endpoints[0]
        word = CurveWord(
            "arc",
            ((v, 0),),
            surf.circ_of((v, 0)),
            surf.circ_of((v, 1)),
        )
        return reduce_word(surf, word)

    # resolve each letter to (face, low slot, high slot)
    spans = []
    for path, direct in sword.letters:
        if not path:
            raise WordError("empty letter")
        w, t0 = arrow_pos.get(path[0], (None, None))
        if w is None:
            raise WordError(f"arrow {path[0]!r} not realized on this surface")
        for k, name in enumerate(path):
            if surf.fan_arrows.get((w, t0 + k)) != name:
                raise WordError(f"letter {path} is not a fan path")
        spans.append((w, t0 - 1, t0 + len(path) - 1, direct))

    entries = []
    for idx, (w, lo, hi, direct) in enumerate(spans):
        fan = surf.fan(w)
        near = fan[lo] if direct else fan[hi]  # crossing before this passage
        far = fan[hi] if direct else fan[lo]  # crossing after this passage
        if idx == 0:
            entries.append(flip(near))
        else:
            if entries[-1] != flip(near):
                raise WordError("letters do not chain into a walk")
        entries.append(far)
    if sword.closed:
        if entries[0] != entries[-1]:
            raise WordError("band word does not close up")
        word = CurveWord("closed", tuple(entries[:-1]))
    else:
        word = CurveWord(
            "arc",
            tuple(entries),
            surf.circ_of(entries[0]),
            surf.circ_of(flip(entries[-1])),
        )
    red = reduce_word(surf, word)
    if red.steps != word.steps:
        raise WordError("string word is not reduced")
    return red
