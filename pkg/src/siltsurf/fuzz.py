"""Seed-deterministic generators: gentle algebras, curves, gradings.

Gentle presentations are sampled directly in ribbon form (arrows attached to
arc ends), which makes every sample gentle by construction; relations are the
compositions through opposite ends.
"""

from __future__ import annotations

import random

from .algebra import GentleAlgebra, validate_gentle
from .curves import CurveWord, grade, reduce_word
from .errors import ContractibleError
from .surface import DissectedSurface, flip, surface_from_algebra


def random_gentle(rng: random.Random, max_vertices: int = 6) -> GentleAlgebra:
    while True:
        n = rng.randint(1, max_vertices)
        vertices = [f"v{i}" for i in range(n)]
        # two ends per vertex, each with one in slot and one out slot
        out_free = {(v, k): True for v in vertices for k in (0, 1)}
        in_free = {(v, k): True for v in vertices for k in (0, 1)}
        arrows = []
        arrive = {}
        depart = {}
        m = rng.randint(0, 2 * n)
        for i in range(m):
            outs = [e for e, free in out_free.items() if free]
            ins = [e for e, free in in_free.items() if free]
            if not outs or not ins:
                break
            src_end = rng.choice(outs)
            tgt_end = rng.choice(ins)
            name = f"a{i}"
            arrows.append({"id": name, "source": src_end[0], "target": tgt_end[0]})
            out_free[src_end] = False
            in_free[tgt_end] = False
            depart[name] = src_end
            arrive[name] = tgt_end
        relations = []
        for a in arrows:
            for b in arrows:
                if a["target"] == b["source"] and arrive[a["id"]] != depart[b["id"]]:
                    relations.append([a["id"], b["id"]])
        raw = {"vertices": vertices, "arrows": arrows, "relations": relations}
        try:
            alg = validate_gentle(raw)
        except Exception:
            continue
        if not _connected(alg):
            continue
        return alg


def _connected(alg: GentleAlgebra) -> bool:
    if not alg.vertices:
        return False
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
    return len(seen) == len(alg.vertices)


def random_surface(rng: random.Random, max_vertices: int = 6):
    alg = random_gentle(rng, max_vertices)
    surf, dual = surface_from_algebra(alg)
    return alg, surf


def random_arc(rng: random.Random, surf: DissectedSurface, max_len: int = 8) -> CurveWord:
    """Uniform-ish random reduced arc word via a backtrack-free walk."""
    while True:
        w = rng.choice(surf.circ_points())
        fan = surf.fan(w)
        if not fan:
            continue
        steps = [rng.choice(fan)]
        length = rng.randint(1, max_len)
        while len(steps) < length:
            w2 = surf.circ_of(flip(steps[-1]))
            options = [e for e in surf.fan(w2) if e != flip(steps[-1])]
            if not options:
                break
            steps.append(rng.choice(options))
        word = CurveWord(
            "arc",
            tuple(steps),
            surf.circ_of(steps[0]),
            surf.circ_of(flip(steps[-1])),
        )
        return reduce_word(surf, word)


def random_closed(
    rng: random.Random, surf: DissectedSurface, max_len: int = 8, attempts: int = 200
):
    """Random reduced closed word, or None when the surface has none."""
    for _ in range(attempts):
        w = rng.choice(surf.circ_points())
        fan = surf.fan(w)
        if not fan:
            continue
        steps = [rng.choice(fan)]
        length = rng.randint(2, max(2, max_len))
        ok = True
        while len(steps) < length:
            w2 = surf.circ_of(flip(steps[-1]))
            options = [e for e in surf.fan(w2) if e != flip(steps[-1])]
            if not options:
                ok = False
                break
            steps.append(rng.choice(options))
        if not ok:
            continue
        if surf.circ_of(steps[0]) != surf.circ_of(flip(steps[-1])):
            continue
        if steps[0] == flip(steps[-1]) and len(steps) > 1:
            continue
        try:
            word = reduce_word(surf, CurveWord("closed", tuple(steps)))
        except ContractibleError:
            continue
        return word
    return None


def random_gradable_closed(
    rng: random.Random, surf: DissectedSurface, max_len: int = 8, attempts: int = 400
):
    from .curves import winding_number

    for _ in range(attempts):
        word = random_closed(rng, surf, max_len, attempts=1)
        if word is None:
            continue
        if winding_number(surf, word) == 0:
            return word
    return None


def random_graded_arc(rng: random.Random, surf: DissectedSurface, max_len: int = 8):
    word = random_arc(rng, surf, max_len)
    idx = rng.randrange(len(word.steps))
    return grade(surf, word, idx, rng.randint(-2, 2))


def random_graded_curve(rng: random.Random, surf: DissectedSurface, max_len: int = 8):
    """Arc or (when available) gradable closed curve with a random grading."""
    if rng.random() < 0.3:
        word = random_gradable_closed(rng, surf, max_len)
        if word is not None:
            idx = rng.randrange(len(word.steps))
            lam = rng.choice((1, 2, 3))
            return grade(surf, word, idx, rng.randint(-2, 2), band=(lam, rng.randint(1, 2)))
    return random_graded_arc(rng, surf, max_len)


def random_silting_walk(rng: random.Random, max_vertices: int = 6, steps: int = 3):
    """Random silting dissection: a mutation walk from the initial one."""
    from .mutation import mutate
    from .silting import initial_dissection

    alg, surf = random_surface(rng, max_vertices)
    gd = initial_dissection(surf)
    for _ in range(steps):
        idx = rng.randrange(len(gd.arcs))
        direction = rng.choice(("left", "right"))
        gd, _tri = mutate(gd, idx, direction)
    return alg, surf, gd


def random_tilting_walk(rng: random.Random, max_vertices: int = 6, steps: int = 3):
    """Random tilting dissection: mutate only where tilting survives."""
    from .mutation import mutate, tilting_preserved
    from .silting import initial_dissection

    alg, surf = random_surface(rng, max_vertices)
    gd = initial_dissection(surf)
    for _ in range(steps):
        options = []
        for idx in range(len(gd.arcs)):
            for direction in ("left", "right"):
                if tilting_preserved(gd, idx, direction):
                    options.append((idx, direction))
        if not options:
            break
        idx, direction = rng.choice(options)
        gd, _tri = mutate(gd, idx, direction)
    return alg, surf, gd
