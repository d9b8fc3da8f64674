"""Command-line surface for every operation, plus the serve mode.

Exit codes: 1 parse error, 2 validation failure, 3 mathematical precondition
violation.  All randomness sits behind --seed; output for fixed inputs and
seed is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io as sio
from .errors import AlgebraError, PreconditionError, SchemaError, SiltSurfError
from .oracle import FieldFp, FieldQ
from .surface import surface_from_algebra


def field_from_env():
    spec = os.environ.get("SILTSURF_FIELD", "Q")
    if spec == "Q":
        return FieldQ()
    if spec.startswith("Fp:"):
        return FieldFp(int(spec.split(":", 1)[1]))
    raise SchemaError(f"SILTSURF_FIELD must be 'Q' or 'Fp:<p>', got {spec!r}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        raise SchemaError(f"{path}: {ex}")


def _load_algebra(path: str):
    alg = sio.parse_algebra(_load_json(path))
    surf, dual = surface_from_algebra(alg)
    return alg, surf, dual


def _emit(doc, out):
    text = sio.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    alg = sio.parse_algebra(_load_json(args.algebra))
    print(
        f"valid gentle algebra: {len(alg.vertices)} vertices, "
        f"{len(alg.arrows)} arrows, {len(alg.relations)} relations"
    )
    return 0


def cmd_surface(args):
    _alg, surf, _ = _load_algebra(args.algebra)
    _emit(sio.surface_doc(surf), args.output)
    return 0


def cmd_dual(args):
    _alg, surf, dual = _load_algebra(args.algebra)
    doc = {
        "schema": sio.SCHEMA,
        "kind": "dual",
        "pairing": {a: a for a in sorted(surf.arcs)},
        "dualArcs": [
            {"id": a, "endpoints": list(surf.dual_endpoints(a))}
            for a in sorted(surf.arcs)
        ],
    }
    _emit(doc, args.output)
    return 0


def _load_graded(path, surf):
    from .curves import GradedCurve, grade

    gc = sio.parse_curve(_load_json(path), surf)
    if not isinstance(gc, GradedCurve):
        gc = grade(surf, gc, 0, 0)
    return gc


def cmd_hom(args):
    from .homs import hom_records, hom_table

    _alg, surf, _ = _load_algebra(args.algebra)
    x = _load_graded(args.x, surf)
    y = _load_graded(args.y, surf)
    table = hom_table(surf, x, y)
    for d, v in table.as_sorted():
        print(f"{d}\t{v}")
    print(f"total\t{table.total}")
    if args.witness:
        for rec in hom_records(surf, x, y, same=x == y):
            print(f"# {rec.locus}\tdir={rec.source}\tdeg={rec.degree}\t{rec.witness}")
    return 0


def cmd_intersect(args):
    from .homs import intersection_number

    _alg, surf, _ = _load_algebra(args.algebra)
    from .curves import GradedCurve

    x = sio.parse_curve(_load_json(args.x), surf)
    y = sio.parse_curve(_load_json(args.y), surf)
    xb = x.band if isinstance(x, GradedCurve) else None
    yb = y.band if isinstance(y, GradedCurve) else None
    xw = x.word if isinstance(x, GradedCurve) else x
    yw = y.word if isinstance(y, GradedCurve) else y
    print(intersection_number(surf, xw, yw, xb, yb))
    return 0


def cmd_silting_check(args):
    from .silting import search_gradings, silting_report

    _alg, surf, _ = _load_algebra(args.algebra)
    gd = sio.parse_dissection(_load_json(args.dissection), surf)
    report = silting_report(gd)
    if args.grading_window is not None:
        hits = search_gradings(surf, [a.word for a in gd.arcs], args.grading_window)
        report["gradingSearch"] = {
            "window": args.grading_window,
            "siltingAnchorTuples": [list(h) for h in hits],
        }
    print(json.dumps(report, sort_keys=True, default=str))
    return 0 if report["silting"] else 2


def _resolve_arc_index(gd, token: str) -> int:
    # base arc ids take priority; plain integers address by position
    for i, gc in enumerate(gd.arcs):
        if len(gc.word.steps) == 1 and gc.word.steps[0][0] == token:
            return i
    try:
        idx = int(token)
    except ValueError:
        raise SchemaError(f"no arc matches {token!r}")
    if not 0 <= idx < len(gd.arcs):
        raise SchemaError(f"arc index {idx} out of range")
    return idx


def cmd_mutate(args):
    from .mutation import mutate

    alg, surf, _ = _load_algebra(args.algebra)
    gd = sio.parse_dissection(_load_json(args.dissection), surf)
    idx = _resolve_arc_index(gd, args.arc)
    new_gd, tri = mutate(gd, idx, args.dir)
    _emit(sio.dissection_doc(new_gd), args.output)
    report = {
        "case": tri.case_tag,
        "middles": len(tri.middles),
        "replaced": idx,
        "direction": args.dir,
    }
    if args.verify:
        from .verify import verify_exchange_triangle

        checks = verify_exchange_triangle(surf, alg, gd, idx, new_gd, tri, field_from_env())
        report["oracle"] = checks
    print(json.dumps(report, sort_keys=True), file=sys.stderr)
    return 0


def cmd_graph(args):
    from .mutation import mutation_graph
    from .silting import initial_dissection

    _alg, surf, _ = _load_algebra(args.algebra)
    if args.dissection:
        gd = sio.parse_dissection(_load_json(args.dissection), surf)
    else:
        gd = initial_dissection(surf)
    nodes, edges = mutation_graph(gd, args.depth)
    names = {k: f"n{i}" for i, k in enumerate(sorted(nodes))}
    lines = ["digraph mutations {"]
    for k in sorted(nodes):
        lines.append(f'  {names[k]} [label="{names[k]}"];')
    for src, dst, idx, direction, case in sorted(edges):
        lines.append(
            f'  {names[src]} -> {names[dst]} [label="{idx}:{direction[0]}{case}"];'
        )
    lines.append("}")
    print("\n".join(lines))
    return 0


def cmd_rebase(args):
    from .surface import algebra_from_surface, surface_of_dissection

    _alg, surf, _ = _load_algebra(args.algebra)
    gd = sio.parse_dissection(_load_json(args.dissection), surf)
    new_surf = surface_of_dissection(surf, [a.word for a in gd.arcs])
    _emit(sio.algebra_doc(algebra_from_surface(new_surf)), args.output)
    return 0


def cmd_cut(args):
    from .reduction import arc_word, cut

    _alg, surf, _ = _load_algebra(args.algebra)
    cs = cut(surf, arc_word(surf, args.arc))
    doc = {
        "schema": sio.SCHEMA,
        "kind": "cut",
        "case": cs.case_tag,
        "arc": cs.arc,
        "leftPoint": cs.left_point,
        "rightPoint": cs.right_point,
        "pointMap": {k: list(v) for k, v in sorted(cs.point_map.items())},
        "pieces": [sio.surface_doc(p) for p in cs.pieces],
    }
    _emit(doc, args.output)
    return 0


def _gamma_graded(surf, arc, anchor):
    from .curves import grade
    from .reduction import arc_word

    return grade(surf, arc_word(surf, arc), 0, anchor)


def cmd_orbit(args):
    from .reduction import orbit_of

    _alg, surf, _ = _load_algebra(args.algebra)
    x = _load_graded(args.curve, surf)
    p = _gamma_graded(surf, args.gamma, args.gamma_anchor)
    orb = orbit_of(surf, x, p)
    doc = {
        "schema": sio.SCHEMA,
        "kind": "orbit",
        "members": [list(map(str, m)) for m in orb.class_members],
        "table": [
            {k: v for k, v in sio.curve_doc(g, surf).items() if k != "schema"}
            for g in orb.table
        ],
        "offset": orb.offset,
    }
    _emit(doc, args.output)
    return 0


def cmd_orbit_hom(args):
    from .reduction import orbit_hom, orbit_of, quotient_hom_dim

    alg, surf, _ = _load_algebra(args.algebra)
    x = _load_graded(args.x, surf)
    y = _load_graded(args.y, surf)
    p = _gamma_graded(surf, args.gamma, args.gamma_anchor)
    field = field_from_env()
    print(orbit_hom(surf, alg, x, y, p, field))
    if args.witness:
        orbit = orbit_of(surf, y, p)
        for i, g in enumerate(orbit.table):
            d = quotient_hom_dim(surf, alg, x, g, p, field)
            if d:
                print(
                    f"# shift {i - orbit.offset}\tdim {d}\t"
                    f"{list(g.word.crossings())}\t{list(g.f)}",
                )
    return 0


def cmd_oracle_hom(args):
    from .oracle import complex_of, oracle_hom_table

    alg, surf, _ = _load_algebra(args.algebra)
    x = _load_graded(args.x, surf)
    y = _load_graded(args.y, surf)
    field = field_from_env()
    C = complex_of(surf, alg, x, field)
    D = complex_of(surf, alg, y, field)
    for d, v in sorted(oracle_hom_table(C, D).items()):
        print(f"{d}\t{v}")
    return 0


def cmd_fuzz(args):
    import random

    from .fuzz import random_gentle, random_graded_curve, random_surface

    rng = random.Random(args.seed)
    out = []
    for _ in range(args.count):
        if args.what == "algebras":
            out.append(sio.algebra_doc(random_gentle(rng, args.size)))
        elif args.what == "curves":
            alg, surf = random_surface(rng, args.size)
            gc = random_graded_curve(rng, surf, 8)
            out.append(
                {
                    "algebra": sio.algebra_doc(alg),
                    "curve": sio.curve_doc(gc, surf),
                }
            )
        else:
            from .fuzz import random_silting_walk

            alg, surf, gd = random_silting_walk(rng, args.size, 3)
            out.append(
                {
                    "algebra": sio.algebra_doc(alg),
                    "dissection": sio.dissection_doc(gd),
                }
            )
    _emit({"schema": sio.SCHEMA, "kind": "fuzz", "items": out}, args.output)
    return 0


def cmd_serve(args):
    from .server import run_server

    run_server(args.port)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="siltsurf")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *specs):
        sp = sub.add_parser(name)
        for spec in specs:
            sp.add_argument(*spec[0], **spec[1])
        sp.set_defaults(fn=fn)
        return sp

    A = (["algebra"], {})
    O = (["-o", "--output"], {"default": None})
    add("validate", cmd_validate, A)
    add("surface", cmd_surface, A, O)
    add("dual", cmd_dual, A, O)
    add(
        "hom",
        cmd_hom,
        A,
        (["x"], {}),
        (["y"], {}),
        (["--witness"], {"action": "store_true"}),
    )
    add("intersect", cmd_intersect, A, (["x"], {}), (["y"], {}))
    add(
        "silting-check",
        cmd_silting_check,
        A,
        (["dissection"], {}),
        (["--grading-window"], {"type": int, "default": None}),
    )
    add(
        "mutate",
        cmd_mutate,
        A,
        (["dissection"], {}),
        (["--arc"], {"required": True}),
        (["--dir"], {"choices": ["left", "right"], "default": "left"}),
        (["--verify"], {"action": "store_true"}),
        O,
    )
    add(
        "graph",
        cmd_graph,
        A,
        (["dissection"], {"nargs": "?", "default": None}),
        (["--depth"], {"type": int, "default": 1}),
    )
    add("cut", cmd_cut, A, (["--arc"], {"required": True}), O)
    add("rebase", cmd_rebase, A, (["dissection"], {}), O)
    add(
        "orbit",
        cmd_orbit,
        A,
        (["curve"], {}),
        (["--gamma"], {"required": True}),
        (["--gamma-anchor"], {"type": int, "default": 0}),
        O,
    )
    add(
        "orbit-hom",
        cmd_orbit_hom,
        A,
        (["x"], {}),
        (["y"], {}),
        (["--gamma"], {"required": True}),
        (["--gamma-anchor"], {"type": int, "default": 0}),
        (["--witness"], {"action": "store_true"}),
    )
    add("oracle-hom", cmd_oracle_hom, A, (["x"], {}), (["y"], {}))
    add(
        "fuzz",
        cmd_fuzz,
        (["--seed"], {"type": int, "default": 0}),
        (["--count"], {"type": int, "default": 5}),
        (["--size"], {"type": int, "default": 5}),
        (["--what"], {"choices": ["algebras", "curves", "dissections"], "default": "algebras"}),
        O,
    )
    add("serve", cmd_serve, (["--port"], {"type": int, "default": 8675}))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return 1
    except AlgebraError as ex:
        print("validation failed:", file=sys.stderr)
        for v in ex.violations:
            print(f"  - {v}", file=sys.stderr)
        return 2
    except PreconditionError as ex:
        print(f"precondition violated: {ex}", file=sys.stderr)
        return 3
    except SiltSurfError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
