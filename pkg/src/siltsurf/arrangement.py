"""Cell decomposition of the surface cut along a collection of arcs.

Every dual polygon is a disk; the arcs of the collection cross it in
non-crossing chords.  Chord endpoints are ordered along each dual arc by the
strand comparator, the per-polygon subdivisions are traced, and cells are
glued across dual arcs with a union-find.  Admissibility reads off which
cells see no bullet point.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .curves import CurveWord, canonical_key, is_wrap
from .errors import PreconditionError
from .homs import interior_intersections
from .surface import DissectedSurface, flip
from .walk import cmp_through, compare_germs, germ_ray, ray_backward, ray_of_word


@dataclass
class Arrangement:
    surface: DissectedSurface
    curves: list
    cells: list  # canonical cell ids
    cell_bullets: dict  # cell id -> frozenset of bullet ids
    n_cells: int


def _event_far_ray(word: CurveWord, idx: int, E, budget: int):
    """Ray on the far side of side instance ``E`` for crossing ``idx``."""
    if word.steps[idx] == E:
        return ray_of_word(word, idx, budget)
    if word.steps[idx] == flip(E):
        return ray_backward(word, idx, budget)
    raise PreconditionError("event does not cross this dual arc")


def order_events_along(surf, words, arc, events):
    """Events sorted along side (arc, 0), start corner to end corner."""
    E = (arc, 0)
    budget = 32 + 8 * sum(len(w.steps) for w in words)

    def cmp(ev1, ev2):
        if ev1 == ev2:
            return 0
        (c1, i1), (c2, i2) = ev1, ev2
        r1 = _event_far_ray(words[c1], i1, E, budget)
        r2 = _event_far_ray(words[c2], i2, E, budget)
        c = cmp_through(surf, E, r1, r2, depth=budget)
        if c:
            return c
        r1b = _event_far_ray(words[c1], i1, flip(E), budget)
        r2b = _event_far_ray(words[c2], i2, flip(E), budget)
        c = cmp_through(surf, flip(E), r1b, r2b, depth=budget)
        if c == 0:
            raise PreconditionError("two identical parallel strands")
        return -c

    return sorted(events, key=functools.cmp_to_key(cmp))


def build_arrangement(surf: DissectedSurface, words: list) -> Arrangement:
    """Cells of S cut along the arcs; raises with a witness on crossings."""
    words = list(words)
    seen_keys = {}
    for i, w in enumerate(words):
        if w.kind != "arc":
            raise PreconditionError("arrangements are built from arcs")
        if is_wrap(w.start) or is_wrap(w.end):
            raise PreconditionError("infinite arcs cannot join a collection")
        k = canonical_key(w)
        if k in seen_keys:
            raise PreconditionError(f"arcs {seen_keys[k]} and {i} coincide")
        seen_keys[k] = i
    for i in range(len(words)):
        for j in range(i, len(words)):
            n = interior_intersections(surf, words[i], words[j])
            if n:
                raise PreconditionError(f"arcs {i} and {j} cross in the interior")

    # order crossing events along each dual arc
    events_on = {}
    for ci, w in enumerate(words):
        for idx, e in enumerate(w.steps):
            events_on.setdefault(e[0], []).append((ci, idx))
    order_on = {a: order_events_along(surf, words, a, evs) for a, evs in events_on.items()}
    rank0 = {
        a: {ev: r for r, ev in enumerate(order)} for a, order in order_on.items()
    }

    def rank_on_instance(E, ev):
        a, k = E
        r = rank0[a][ev]
        return r if k == 0 else len(rank0[a]) - 1 - r

    # germ ranks at marked points
    germs_at = {}
    for ci, w in enumerate(words):
        germs_at.setdefault(w.start, []).append((ci, 0))
        germs_at.setdefault(w.end, []).append((ci, 1))
    germ_rank = {}
    for w0, items in germs_at.items():
        def gcmp(x, y):
            if x == y:
                return 0
            c = compare_germs(
                surf, w0, germ_ray(words[x[0]], x[1]), germ_ray(words[y[0]], y[1])
            )
            if c == 0:
                raise PreconditionError("identical germs in collection")
            return c

        for r, it in enumerate(sorted(items, key=functools.cmp_to_key(gcmp))):
            germ_rank[(w0, it)] = r

    # chord endpoints per face; key = rim-ccw sortable position
    def anchor_key(face, E, ev):
        return (1, surf.slot_of(E), rank_on_instance(E, ev))

    def corner_key(face, ci_end):
        # the rim sweeps clockwise around the marked point, so the cluster of
        # germ endpoints appears in reverse anticlockwise order
        return (0, -germ_rank[(face, ci_end)], 0)

    face_endpoints = {w: [] for w in surf.fans}  # (key, chord id, side 0/1)
    chord_count = 0

    def add_chord(face, keyA, keyB):
        nonlocal chord_count
        cid = chord_count
        chord_count += 1
        face_endpoints[face].append((keyA, cid))
        face_endpoints[face].append((keyB, cid))

    anchor_registry = {}  # (face, key) kept implicitly via keys

    for ci, w in enumerate(words):
        steps = w.steps
        add_chord(
            w.start,
            corner_key(w.start, (ci, 0)),
            anchor_key(w.start, steps[0], (ci, 0)),
        )
        for i in range(len(steps) - 1):
            face = surf.circ_of(steps[i + 1])
            add_chord(
                face,
                anchor_key(face, flip(steps[i]), (ci, i)),
                anchor_key(face, steps[i + 1], (ci, i + 1)),
            )
        lastE = flip(steps[-1])
        add_chord(
            w.end,
            anchor_key(w.end, lastE, (ci, len(steps) - 1)),
            corner_key(w.end, (ci, 1)),
        )

    # trace per-face cells
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    face_nodes = {}
    cell_of_gap = {}
    for face in surf.fans:
        nodes = sorted(face_endpoints[face])
        face_nodes[face] = nodes
        K = len(nodes)
        if K == 0:
            cell = ("cell", face, 0)
            parent.setdefault(cell, cell)
            cell_of_gap[(face, 0)] = cell
            continue
        partner = {}
        by_cid = {}
        for i, (_k, cid) in enumerate(nodes):
            if cid in by_cid:
                partner[i] = by_cid[cid]
                partner[by_cid[cid]] = i
            else:
                by_cid[cid] = i
        visited = set()
        for start in range(K):
            if start in visited:
                continue
            cell = ("cell", face, start)
            parent.setdefault(cell, cell)
            cur = start  # gap index: from node cur to cur+1
            while cur not in visited:
                visited.add(cur)
                cell_of_gap[(face, cur)] = cell
                cur = partner[(cur + 1) % K]

    def node_index(face, key):
        nodes = face_nodes[face]
        for i, (k, _cid) in enumerate(nodes):
            if k == key:
                return i
        raise PreconditionError("rim node not found")

    def gap_of_key(face, key):
        nodes = face_nodes[face]
        K = len(nodes)
        if K == 0:
            return (face, 0)
        for i, (k, _cid) in enumerate(nodes):
            if k > key:
                return (face, (i - 1) % K)
        return (face, K - 1)

    # glue cells across dual arcs
    for arc in surf.arcs:
        E0, E1 = (arc, 0), (arc, 1)
        f0, f1 = surf.circ_of(E0), surf.circ_of(E1)
        evs = order_on.get(arc, [])
        r = len(evs)
        for piece in range(r + 1):
            gaps = []
            for E, face, p in ((E0, f0, piece), (E1, f1, r - piece)):
                slot = surf.slot_of(E)
                if r == 0:
                    gaps.append(gap_of_key(face, (1, slot, -1)))
                elif p < r:
                    ev = evs[p] if E == E0 else order_on[arc][::-1][p]
                    # event at instance-rank p along E
                    target = (1, slot, p)
                    gaps.append((face, (node_index(face, target) - 1) % len(face_nodes[face])))
                else:
                    target = (1, slot, r - 1)
                    gaps.append((face, node_index(face, target)))
            union(cell_of_gap[gaps[0]], cell_of_gap[gaps[1]])

    # bullet decorations
    cell_bullets = {}
    for face in surf.fans:
        for corner in range(len(surf.fan(face)) + 1):
            bullet = surf.bullet_at((face, corner))
            gap = gap_of_key(face, (1, corner, -1))
            root = find(cell_of_gap[gap])
            cell_bullets.setdefault(root, set()).add(bullet)

    roots = sorted({find(c) for c in cell_of_gap.values()})
    bullets = {c: frozenset(cell_bullets.get(c, ())) for c in roots}
    return Arrangement(surf, words, roots, bullets, len(roots))
