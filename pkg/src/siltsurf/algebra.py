"""Gentle algebras: validation, path arithmetic helpers, homotopy-string words.

A gentle algebra is stored as a quiver plus the set of quadratic monomial
relations.  Arrows compose left to right: ``ab`` is the path running from
``source(a)`` through ``target(a) == source(b)`` to ``target(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlgebraError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class GentleAlgebra:
    """Validated gentle presentation (quiver, quadratic monomial relations)."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[str, str]]  # (a, b) means the path ab is zero
    _arrow_map: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_arrow_map", {a.name: a for a in self.arrows})

    def arrow(self, name: str) -> Arrow:
        return self._arrow_map[name]

    def arrows_out(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_in(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations

    def composable(self, a: str, b: str) -> bool:
        return self.arrow(a).target == self.arrow(b).source

    # -- nonzero paths ----------------------------------------------------

    def nonzero_paths(self) -> list[tuple[str, ...]]:
        """All paths avoiding relations, including the length-0 path per vertex.

        Length-0 paths are encoded as ``('e', v)``; longer paths are tuples of
        arrow names.  Finiteness is guaranteed by validation (no cycle free of
        relations).
        """
        paths = [("e", v) for v in self.vertices]
        frontier = [(a.name,) for a in self.arrows]
        while frontier:
            paths.extend(frontier)
            nxt = []
            for p in frontier:
                last = p[-1]
                for b in self.arrows_out(self.arrow(last).target):
                    if not self.is_relation(last, b.name):
                        nxt.append(p + (b.name,))
            frontier = nxt
            if len(paths) > 100000:
                raise AlgebraError(["path enumeration exploded; algebra not finite dimensional?"])
        return paths

    def path_source(self, p: tuple[str, ...]) -> str:
        if p[0] == "e":
            return p[1]
        return self.arrow(p[0]).source

    def path_target(self, p: tuple[str, ...]) -> str:
        if p[0] == "e":
            return p[1]
        return self.arrow(p[-1]).target

    def compose_paths(self, p: tuple[str, ...], q: tuple[str, ...]):
        """Concatenation pq, or None when it hits a relation or is not composable."""
        if self.path_target(p) != self.path_source(q):
            return None
        if p[0] == "e":
            return q
        if q[0] == "e":
            return p
        if self.is_relation(p[-1], q[0]):
            return None
        r = p + q
        # longer products can also die: every adjacent pair must avoid relations
        for i in range(len(r) - 1):
            if self.is_relation(r[i], r[i + 1]):
                return None
        return r

    def canonical_form(self) -> tuple:
        """Isomorphism-invariant-ish canonical tuple under identity labelling."""
        return (
            tuple(sorted(self.vertices)),
            tuple(sorted((a.name, a.source, a.target) for a in self.arrows)),
            tuple(sorted(self.relations)),
        )


def validate_gentle(raw: dict) -> GentleAlgebra:
    """Validate a raw quiver description and return the algebra.

    ``raw`` has keys ``vertices`` (list of ids), ``arrows`` (list of
    ``{"id", "source", "target"}``) and ``relations`` (list of ``[a, b]``).
    Raises :class:`AlgebraError` carrying every violated condition.
    """
    violations = []
    vertices = [str(v) for v in raw.get("vertices", [])]
    if len(set(vertices)) != len(vertices):
        violations.append("duplicate vertex ids")
    arrows = []
    seen = set()
    for spec in raw.get("arrows", []):
        name, src, tgt = str(spec["id"]), str(spec["source"]), str(spec["target"])
        if name in seen:
            violations.append(f"duplicate arrow id {name!r}")
        seen.add(name)
        if src not in vertices or tgt not in vertices:
            violations.append(f"arrow {name!r} references unknown vertex")
        arrows.append(Arrow(name, src, tgt))
    arrow_by_name = {a.name: a for a in arrows}

    relations = set()
    for pair in raw.get("relations", []):
        a, b = str(pair[0]), str(pair[1])
        if a not in arrow_by_name or b not in arrow_by_name:
            violations.append(f"relation ({a},{b}) references unknown arrow")
            continue
        if arrow_by_name[a].target != arrow_by_name[b].source:
            violations.append(f"relation ({a},{b}) is not a composable pair")
            continue
        relations.add((a, b))

    if violations:
        raise AlgebraError(violations)

    # degree bounds
    for v in vertices:
        outs = [a for a in arrows if a.source == v]
        ins = [a for a in arrows if a.target == v]
        if len(outs) > 2:
            violations.append(f"vertex {v!r}: out-degree > 2")
        if len(ins) > 2:
            violations.append(f"vertex {v!r}: in-degree > 2")

    # gentleness pairing conditions
    for a in arrows:
        rel_next = [b for b in arrows if a.target == b.source and (a.name, b.name) in relations]
        free_next = [b for b in arrows if a.target == b.source and (a.name, b.name) not in relations]
        if len(rel_next) > 1:
            violations.append(f"arrow {a.name!r}: two relations share it as left factor")
        if len(free_next) > 1:
            violations.append(f"arrow {a.name!r}: two non-relation continuations")
        rel_prev = [b for b in arrows if b.target == a.source and (b.name, a.name) in relations]
        free_prev = [b for b in arrows if b.target == a.source and (b.name, a.name) not in relations]
        if len(rel_prev) > 1:
            violations.append(f"arrow {a.name!r}: two relations share it as right factor")
        if len(free_prev) > 1:
            violations.append(f"arrow {a.name!r}: two non-relation predecessors")

    if violations:
        raise AlgebraError(violations)

    alg = GentleAlgebra(tuple(vertices), tuple(arrows), frozenset(relations))

    # finite dimensionality: no cycle avoiding relations
    if _has_relation_free_cycle(alg):
        raise AlgebraError(["quiver has a cycle avoiding all relations (infinite dimensional)"])
    return alg


def _has_relation_free_cycle(alg: GentleAlgebra) -> bool:
    # walk the 'permitted' successor map on arrows; a cycle means kQ/I is infinite dim
    succ = {}
    for a in alg.arrows:
        for b in alg.arrows:
            if a.target == b.source and not alg.is_relation(a.name, b.name):
                succ[a.name] = b.name
    for start in succ:
        seen = {start}
        cur = start
        while cur in succ:
            cur = succ[cur]
            if cur == start:
                return True
            if cur in seen:
                break
            seen.add(cur)
    return False


# -- homotopy string words -------------------------------------------------


@dataclass(frozen=True)
class StringWord:
    """Homotopy string/band word: alternating walk of direct or inverse paths.

    ``letters`` is a tuple of ``(path, direct)`` pairs where ``path`` is a
    nonzero path of the algebra (tuple of arrow names) and ``direct`` tells
    whether it is traversed forwards.  ``endpoints`` are the vertices at the
    two ends of the walk (equal and ignored for closed words).
    """

    letters: tuple
    endpoints: tuple[str, str]
    closed: bool = False

    def reversed(self) -> "StringWord":
        return StringWord(
            tuple((p, not d) for (p, d) in reversed(self.letters)),
            (self.endpoints[1], self.endpoints[0]),
            self.closed,
        )


def string_of_curve(curve, surface) -> StringWord:
    """Homotopy string/band word of a reduced curve word. See surface.curves."""
    from .curves import word_to_string  # local import to avoid a cycle

    return word_to_string(curve, surface)


def curve_of_string(word: StringWord, surface):
    """Reduced curve word of a homotopy string/band. Inverse of string_of_curve."""
    from .curves import string_to_word

    return string_to_word(word, surface)

