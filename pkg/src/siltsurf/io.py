"""silt-surf/1 JSON documents: algebras, surfaces, curves, dissections.

All dumps sort keys and use canonical orderings so identical inputs serialize
byte-identically.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import GentleAlgebra, validate_gentle
from .curves import CurveWord, GradedCurve, grade, is_wrap, reduce_word, sides, wrap_end
from .errors import SchemaError
from .silting import GradedDissection
from .surface import DissectedSurface, flip

SCHEMA = "silt-surf/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _check_fields(doc: dict, allowed: set, context: str):
    unknown = set(doc) - allowed
    if unknown:
        raise SchemaError(f"{context}: unknown fields {sorted(unknown)}")


def _check_schema(doc: dict, kind: str, context: str):
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"{context}: schema must be {SCHEMA}")
    if "kind" in doc and doc["kind"] != kind and kind not in ("arc", "closed"):
        raise SchemaError(f"{context}: expected kind {kind}")


# -- algebra -----------------------------------------------------------------


def algebra_doc(alg: GentleAlgebra) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "algebra",
        "vertices": sorted(alg.vertices),
        "arrows": [
            {"id": a.name, "source": a.source, "target": a.target}
            for a in sorted(alg.arrows, key=lambda a: a.name)
        ],
        "relations": sorted([a, b] for a, b in alg.relations),
    }


def parse_algebra(doc: dict) -> GentleAlgebra:
    _check_schema(doc, "algebra", "algebra file")
    _check_fields(
        doc, {"schema", "kind", "vertices", "arrows", "relations"}, "algebra file"
    )
    for key in ("vertices", "arrows"):
        if key not in doc:
            raise SchemaError(f"algebra file: missing field {key!r}")
    return validate_gentle(
        {
            "vertices": doc["vertices"],
            "arrows": doc["arrows"],
            "relations": doc.get("relations", []),
        }
    )


# -- surface ------------------------------------------------------------------


def surface_doc(surf: DissectedSurface) -> dict:
    fans = {
        w: [[a, k] for (a, k) in surf.fan(w)] for w in surf.circ_points()
    }
    boundary = [
        [[w, b] for (w, b) in comp] for comp in surf.boundary_components()
    ]
    faces = {}
    for w in surf.circ_points():
        rim = []
        fan = surf.fan(w)
        for i, end in enumerate(fan):
            rim.append({"corner": surf.bullet_at((w, i))})
            rim.append({"dual": end[0], "side": end[1]})
        rim.append({"corner": surf.bullet_at((w, len(fan)))})
        faces[w] = rim
    return {
        "schema": SCHEMA,
        "kind": "surface",
        "arcs": sorted(surf.arcs),
        "fans": fans,
        "fanArrows": {f"{w}:{t}": n for (w, t), n in sorted(surf.fan_arrows.items())},
        "boundary": boundary,
        "punctures": sorted(surf.punctures()),
        "dualFaces": faces,
        "facePolygons": {
            b: list(surf.face_of_bullet(b)) for b in sorted(surf.bullet_points())
        },
        "pairing": {a: a for a in sorted(surf.arcs)},
        "genus": surf.euler_invariants()[0],
        "boundaryCount": surf.euler_invariants()[1],
    }


# -- curves --------------------------------------------------------------------


def curve_doc(gc_or_word, surf: DissectedSurface) -> dict:
    if isinstance(gc_or_word, GradedCurve):
        word = gc_or_word.word
        anchor = {"index": 0, "value": gc_or_word.f[0]}
        band = None
        if gc_or_word.band:
            lam, n = gc_or_word.band
            band = {"lambda": str(Fraction(lam)), "n": n}
    else:
        word, anchor, band = gc_or_word, None, None
    doc = {
        "schema": SCHEMA,
        "kind": word.kind,
        "crossings": [e[0] for e in word.steps],
        "sides": ["L" if s > 0 else "R" for s in sides(surf, word)],
    }
    if word.kind == "arc":
        doc["ends"] = [
            _end_doc(surf, word.start, word.steps[0]),
            _end_doc(surf, word.end, flip(word.steps[-1])),
        ]
    if anchor is not None:
        doc["anchor"] = anchor
    if band is not None:
        doc["band"] = band
    return doc


def _end_doc(surf, endpoint, adjacent_end):
    if is_wrap(endpoint):
        return {"wrap": endpoint[1]}
    return {"vertex": endpoint, "slot": surf.slot_of(adjacent_end)}


def parse_curve(doc: dict, surf: DissectedSurface):
    """Reconstruct a curve (graded when an anchor is present) from a document.

    The crossing/side data determines the trajectory; in the rare ambiguous
    loop configurations every consistent reading is tried and a unique one is
    required.
    """
    _check_schema(doc, doc.get("kind", "arc"), "curve file")
    _check_fields(
        doc,
        {"schema", "kind", "crossings", "sides", "ends", "anchor", "band"},
        "curve file",
    )
    kind = doc.get("kind")
    if kind not in ("arc", "closed"):
        raise SchemaError("curve file: kind must be 'arc' or 'closed'")
    crossings = doc.get("crossings", [])
    if not crossings:
        raise SchemaError("curve file: empty crossing list")
    side_syms = doc.get("sides", [])
    expected_sides = len(crossings) - 1 if kind == "arc" else len(crossings)
    if len(side_syms) != expected_sides:
        raise SchemaError("curve file: sides length mismatch")
    svals = [1 if s == "L" else -1 for s in side_syms]

    candidates = []
    if kind == "arc":
        ends = doc.get("ends")
        if not ends or len(ends) != 2:
            raise SchemaError("curve file: arcs need two ends")
        if "wrap" in ends[0] or "wrap" in ends[1]:
            start = wrap_end(ends[0]["wrap"]) if "wrap" in ends[0] else ends[0]["vertex"]
            end = wrap_end(ends[1]["wrap"]) if "wrap" in ends[1] else ends[1]["vertex"]
            word = CurveWord("arc", _steps_blind(surf, crossings, ends), start, end)
            return word  # infinite arcs are carried only to be rejected
        first_opts = [
            (crossings[0], k)
            for k in (0, 1)
            if surf.circ_of((crossings[0], k)) == ends[0]["vertex"]
            and surf.slot_of((crossings[0], k)) == ends[0]["slot"]
        ]
    else:
        first_opts = [(crossings[0], k) for k in (0, 1)]

    for first in first_opts:
        for steps in _parse_walk(surf, crossings, svals, first, kind):
            word = (
                CurveWord("arc", steps, surf.circ_of(steps[0]), surf.circ_of(flip(steps[-1])))
                if kind == "arc"
                else CurveWord("closed", steps)
            )
            try:
                red = reduce_word(surf, word)
            except Exception:
                continue
            if red.steps != word.steps:
                continue
            candidates.append(word)
    uniq = {tuple(w.steps): w for w in candidates}
    if not uniq:
        raise SchemaError("curve file: crossing data matches no reduced curve")
    if len(uniq) > 1:
        raise SchemaError("curve file: ambiguous crossing data")
    word = next(iter(uniq.values()))
    anchor = doc.get("anchor")
    if anchor is None:
        return word
    band = None
    if doc.get("band"):
        band = (Fraction(doc["band"]["lambda"]), int(doc["band"]["n"]))
    return grade(surf, word, int(anchor["index"]), int(anchor["value"]), band=band)


def _steps_blind(surf, crossings, ends):
    steps = []
    for a in crossings:
        steps.append((a, 0))
    return tuple(steps)


def _parse_walk(surf, crossings, svals, first, kind):
    """All entered-end walks matching the crossings and side letters."""
    out = []

    def extend(steps):
        i = len(steps)
        if i == len(crossings):
            if kind == "closed":
                face = surf.circ_of(flip(steps[-1]))
                if surf.circ_of(steps[0]) != face:
                    return
                w, a, b = (
                    face,
                    surf.slot_of(flip(steps[-1])),
                    surf.slot_of(steps[0]),
                )
                s = svals[-1]
                if a == b or (1 if b > a else -1) != s:
                    return
            out.append(tuple(steps))
            return
        face = surf.circ_of(flip(steps[-1]))
        for k in (0, 1):
            cand = (crossings[i], k)
            if surf.circ_of(cand) != face:
                continue
            a, b = surf.slot_of(flip(steps[-1])), surf.slot_of(cand)
            if a == b:
                continue
            if (1 if b > a else -1) != svals[i - 1]:
                continue
            extend(steps + [cand])

    extend([first])
    return out


# -- dissections ---------------------------------------------------------------


def dissection_doc(gd: GradedDissection) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "dissection",
        "arcs": [
            {k: v for k, v in curve_doc(a, gd.surface).items() if k != "schema"}
            for a in gd.arcs
        ],
    }


def parse_dissection(doc: dict, surf: DissectedSurface) -> GradedDissection:
    _check_schema(doc, "dissection", "dissection file")
    _check_fields(doc, {"schema", "kind", "arcs"}, "dissection file")
    arcs = []
    for sub in doc.get("arcs", []):
        sub = dict(sub)
        sub.setdefault("schema", SCHEMA)
        gc = parse_curve(sub, surf)
        if not isinstance(gc, GradedCurve):
            raise SchemaError("dissection file: arcs need anchors")
        arcs.append(gc)
    return GradedDissection(surf, tuple(arcs))
