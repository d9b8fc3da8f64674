"""Dissected marked surfaces as ribbon graphs.

The surface of a gentle algebra is stored combinatorially: one marked point
``w`` per maximal relation-free path (thread) of the quiver, carrying the
linearly ordered fan of arc ends that realize that thread, anticlockwise
between the two adjacent boundary segments.  Arcs are the vertices of the
quiver.  Everything else -- dual dissection, bullet points, punctures,
boundary components, genus -- is traced from the fans.

Rim model of the dual polygon around ``w`` with fan ``(e_0, .., e_k)``::

    circ corner, sigma_pre, c_0, side(e_0), c_1, side(e_1), .., side(e_k),
    c_{k+1}, sigma_post

``c_i`` are bullet corner spots, identified across dual arcs into bullet
points; spots with a sigma neighbour belong to boundary bullet points, cyclic
orbits are punctures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Arrow, GentleAlgebra
from .errors import CorruptSurfaceError, PreconditionError

ArcEnd = tuple[str, int]


def flip(end: ArcEnd) -> ArcEnd:
    return (end[0], 1 - end[1])


@dataclass(frozen=True)
class DissectedSurface:
    """Marked ribbon surface with its admissible dissection.

    ``fan_arrows`` names the quiver arrow realized between consecutive fan
    slots: key ``(w, t)`` for ``1 <= t < len(fan(w))``.  Synthetic names are
    filled in when none are supplied (cut surfaces, hand-built examples).
    """

    arcs: tuple[str, ...]
    fans: dict  # circ id -> tuple[ArcEnd, ...], anticlockwise
    fan_arrows: dict = None  # (circ id, slot t) -> arrow name
    _end_pos: dict = field(default=None, compare=False, repr=False)
    _derived: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        pos = {}
        for w, fan in self.fans.items():
            for slot, end in enumerate(fan):
                if end in pos:
                    raise CorruptSurfaceError(f"arc end {end} appears twice in fans")
                pos[end] = (w, slot)
        for a in self.arcs:
            for k in (0, 1):
                if (a, k) not in pos:
                    raise CorruptSurfaceError(f"arc end {(a, k)} missing from fans")
        if self.fan_arrows is None:
            names = {}
            for w, fan in self.fans.items():
                for t in range(1, len(fan)):
                    names[(w, t)] = f"{w}:{t}"
            object.__setattr__(self, "fan_arrows", names)
        object.__setattr__(self, "_end_pos", pos)
        object.__setattr__(self, "_derived", {})
        self._trace()

    # -- raw access --------------------------------------------------------

    def circ_points(self) -> list[str]:
        return sorted(self.fans)

    def fan(self, w: str) -> tuple[ArcEnd, ...]:
        return self.fans[w]

    def end_pos(self, end: ArcEnd) -> tuple[str, int]:
        return self._end_pos[end]

    def circ_of(self, end: ArcEnd) -> str:
        return self._end_pos[end][0]

    def slot_of(self, end: ArcEnd) -> int:
        return self._end_pos[end][1]

    def is_loop(self, arc: str) -> bool:
        return self.circ_of((arc, 0)) == self.circ_of((arc, 1))

    # -- corner-spot tracing ------------------------------------------------

    def _spot_forward(self, spot):
        """Cross the side following the spot; None when that side is a sigma."""
        w, i = spot
        fan = self.fans[w]
        if i >= len(fan):
            return None
        other = flip(fan[i])
        w2, j = self._end_pos[other]
        return (w2, j + 1)

    def _spot_backward(self, spot):
        w, i = spot
        if i == 0:
            return None
        other = flip(self.fans[w][i - 1])
        w2, j = self._end_pos[other]
        return (w2, j)

    def _trace(self):
        spots = [(w, i) for w in self.fans for i in range(len(self.fans[w]) + 1)]
        spot_bullet = {}
        bullets = []  # list of (kind, ordered spot tuple)
        seen = set()
        for s in spots:
            if s in seen:
                continue
            # walk backward to find a start, detecting cycles
            orbit = [s]
            cur = s
            cyclic = False
            while True:
                prev = self._spot_backward(cur)
                if prev is None:
                    break
                if prev == s:
                    cyclic = True
                    orbit.pop()  # closed: s will reappear as first element
                    break
                orbit.insert(0, prev)
                cur = prev
            if not cyclic:
                cur = orbit[-1]
                while True:
                    nxt = self._spot_forward(cur)
                    if nxt is None:
                        break
                    orbit.append(nxt)
                    cur = nxt
            else:
                orbit = [s]
                cur = s
                while True:
                    nxt = self._spot_forward(cur)
                    if nxt == s:
                        break
                    orbit.append(nxt)
                    cur = nxt
            kind = "puncture" if cyclic else "boundary"
            bullets.append((kind, tuple(orbit)))
            seen.update(orbit)

        bullets.sort(key=lambda kb: (kb[0], kb[1]))
        spot_to_id = {}
        bullet_ids = []
        punctures = []
        border = []
        for kind, orbit in bullets:
            bid = ("P" if kind == "puncture" else "B") + str(
                len(punctures) if kind == "puncture" else len(border)
            )
            (punctures if kind == "puncture" else border).append(bid)
            bullet_ids.append((bid, kind, orbit))
            for s in orbit:
                spot_to_id[s] = bid

        # boundary components: cycles of (circ, bullet, circ, ...)
        comp_of = {}
        components = []
        for w in sorted(self.fans):
            if w in comp_of:
                continue
            comp = []
            cur = w
            while cur not in comp_of:
                comp_of[cur] = len(components)
                # leave cur through sigma_pre: spot (cur, 0), walk forward to sigma_post
                spot = (cur, 0)
                while True:
                    nxt = self._spot_forward(spot)
                    if nxt is None:
                        break
                    spot = nxt
                comp.append((cur, spot_to_id[(cur, 0)]))
                cur = spot[0]
            components.append(tuple(comp))

        d = self._derived
        d["spot_bullet"] = spot_to_id
        d["bullets"] = {bid: (kind, orbit) for bid, kind, orbit in bullet_ids}
        d["punctures"] = tuple(punctures)
        d["boundary_bullets"] = tuple(border)
        d["boundary_components"] = tuple(components)

    # -- derived invariants --------------------------------------------------

    def bullet_at(self, spot) -> str:
        return self._derived["spot_bullet"][spot]

    def bullet_points(self) -> dict:
        return self._derived["bullets"]

    def punctures(self) -> tuple:
        return self._derived["punctures"]

    def boundary_bullets(self) -> tuple:
        return self._derived["boundary_bullets"]

    def boundary_components(self) -> tuple:
        return self._derived["boundary_components"]

    def counts(self) -> dict:
        return {
            "circ": len(self.fans),
            "bullet": len(self.boundary_bullets()),
            "punctures": len(self.punctures()),
            "arcs": len(self.arcs),
            "boundary": len(self.boundary_components()),
        }

    def euler_invariants(self) -> tuple[int, int]:
        """Recompute (genus, boundary count); raises when inconsistent."""
        c = self.counts()
        chi = c["bullet"] + c["punctures"] - c["arcs"]
        b = c["boundary"]
        two_g = 2 - b - chi
        if two_g < 0 or two_g % 2:
            raise CorruptSurfaceError(f"inconsistent Euler data: chi={chi}, b={b}")
        g = two_g // 2
        if c["arcs"] != c["circ"] + c["punctures"] + b + 2 * g - 2:
            raise CorruptSurfaceError("arc count violates dissection formula")
        return g, b

    # -- dual structure -------------------------------------------------------

    def dual_endpoints(self, arc: str) -> tuple[str, str]:
        """Bullet points joined by the dual arc crossing ``arc``."""
        w, j = self._end_pos[(arc, 0)]
        return (self.bullet_at((w, j)), self.bullet_at((w, j + 1)))

    def face_of_bullet(self, bullet: str) -> tuple:
        """Arcs bounding the dissection polygon that contains the bullet."""
        kind, orbit = self._derived["bullets"][bullet]
        sides = []
        for (w, i) in orbit:
            fan = self.fans[w]
            if i < len(fan):
                sides.append(fan[i][0])
        return tuple(sides)

    def corner_start(self, end: ArcEnd):
        w, j = self._end_pos[end]
        return (w, j)

    def corner_end(self, end: ArcEnd):
        w, j = self._end_pos[end]
        return (w, j + 1)


@dataclass(frozen=True)
class DualDissection:
    """The unique dual bullet-dissection: one dual arc per arc of the dissection."""

    surface: DissectedSurface
    pairing: dict  # arc id -> dual arc id (identical labels by construction)

    def dual_arcs(self) -> list[str]:
        return sorted(self.pairing.values())

    def endpoints(self, dual_arc: str) -> tuple[str, str]:
        return self.surface.dual_endpoints(dual_arc)


def dual_dissection(surface: DissectedSurface) -> DualDissection:
    return DualDissection(surface, {a: a for a in surface.arcs})


# -- construction from a gentle algebra -------------------------------------


def _end_records(alg: GentleAlgebra, v: str):
    """The two arc ends of vertex ``v``: (incoming arrow?, outgoing arrow?).

    An incoming arrow sits at the same end as an outgoing one exactly when
    their composition is NOT a relation (they continue the same fan).
    """
    ins = sorted(alg.arrows_in(v), key=lambda a: a.name)
    outs = sorted(alg.arrows_out(v), key=lambda a: a.name)
    used_out = set()
    recs = []
    for a in ins:
        mate = None
        for b in outs:
            if b.name not in used_out and not alg.is_relation(a.name, b.name):
                mate = b
                used_out.add(b.name)
                break
        recs.append((a.name, mate.name if mate else None))
    for b in outs:
        if b.name not in used_out:
            recs.append((None, b.name))
    while len(recs) < 2:
        recs.append((None, None))
    if len(recs) > 2:
        raise PreconditionError(f"vertex {v!r} needs more than two arc ends; not gentle")
    recs.sort(key=lambda r: (r[0] or "", r[1] or ""))
    return recs


def surface_from_algebra(alg: GentleAlgebra):
    """Build (surface, dual dissection) for a connected gentle algebra."""
    _assert_connected(alg)
    end_info = {}  # (vertex, 0/1) -> (in_arrow, out_arrow)
    in_at = {}  # arrow name -> end where it arrives
    out_at = {}  # arrow name -> end where it departs
    for v in alg.vertices:
        for k, (i, o) in enumerate(_end_records(alg, v)):
            end_info[(v, k)] = (i, o)
            if i is not None:
                in_at[i] = (v, k)
            if o is not None:
                out_at[o] = (v, k)

    threads = []
    placed = set()
    for v in sorted(alg.vertices):
        for k in (0, 1):
            end = (v, k)
            if end in placed:
                continue
            if end_info[end][0] is not None:
                continue  # not a thread start
            fan = [end]
            cur = end
            while end_info[cur][1] is not None:
                cur = in_at[end_info[cur][1]]
                fan.append(cur)
            threads.append(tuple(fan))
            placed.update(fan)
    if placed != set(end_info):
        raise PreconditionError("cyclic relation-free thread; algebra not finite dimensional")

    threads.sort()
    fans = {f"c{i}": fan for i, fan in enumerate(threads)}
    fan_arrows = {}
    for w, fan in fans.items():
        for t in range(1, len(fan)):
            fan_arrows[(w, t)] = end_info[fan[t - 1]][1]
    surf = DissectedSurface(tuple(sorted(alg.vertices)), fans, fan_arrows)
    return surf, dual_dissection(surf)


def _assert_connected(alg: GentleAlgebra) -> None:
    if not alg.vertices:
        raise PreconditionError("empty quiver")
    adj = {v: set() for v in alg.vertices}
    for a in alg.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {alg.vertices[0]}
    stack = [alg.vertices[0]]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if seen != set(alg.vertices):
        raise PreconditionError("quiver is not connected; build one surface per component")


def algebra_from_surface(surf: DissectedSurface) -> GentleAlgebra:
    """Read the gentle algebra back off the fans.

    Arrows keep the names recorded in ``fan_arrows``, so for a surface built
    by :func:`surface_from_algebra` this inverts the construction on the nose.
    """
    arrows = []
    arrive = {}
    depart = {}
    for w in sorted(surf.fans):
        fan = surf.fans[w]
        for i in range(1, len(fan)):
            name = surf.fan_arrows[(w, i)]
            src, tgt = fan[i - 1][0], fan[i][0]
            arrows.append(Arrow(name, src, tgt))
            arrive[name] = fan[i]
            depart[name] = fan[i - 1]
    relations = set()
    for a in arrows:
        for b in arrows:
            if a.target == b.source and arrive[a.name] != depart[b.name]:
                relations.add((a.name, b.name))
    return GentleAlgebra(tuple(sorted(surf.arcs)), tuple(arrows), frozenset(relations))


def check_admissible(surf: DissectedSurface, words):
    """Admissibility verdict for a collection of arc words; see silting module."""
    from .silting import check_admissible as _impl

    return _impl(surf, words)


def surface_of_dissection(surf: DissectedSurface, words) -> DissectedSurface:
    """Re-base: the dissected surface whose arcs are the given dissection.

    The input arcs (reduced words over the current base, pairwise meeting
    only at endpoints, full count) become the arcs of a fresh surface; the
    fan at each marked point is their germ order.  Arcs are renamed d0, d1,
    ... in input order.  Curve words over the old base do not transport; cut
    or express curves over the new base directly.
    """
    from .silting import check_admissible
    from .walk import compare_germs, germ_ray

    verdict, detail = check_admissible(surf, words)
    if verdict != "admissible_dissection":
        raise PreconditionError(f"not an admissible dissection: {verdict} {detail}")
    import functools

    ends_at = {}
    for i, w in enumerate(words):
        ends_at.setdefault(w.start, []).append((i, 0))
        ends_at.setdefault(w.end, []).append((i, 1))
    fans = {}
    for point, items in ends_at.items():
        def cmp(a, b):
            if a == b:
                return 0
            return compare_germs(
                surf, point, germ_ray(words[a[0]], a[1]), germ_ray(words[b[0]], b[1])
            )

        ordered = sorted(items, key=functools.cmp_to_key(cmp))
        fans[point] = tuple((f"d{i}", which) for i, which in ordered)
    return DissectedSurface(tuple(f"d{i}" for i in range(len(words))), fans)
