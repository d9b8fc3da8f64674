import json
import random

import pytest

import conftest as C
from siltsurf import io as sio
from siltsurf.cli import main
from siltsurf.curves import GradedCurve, canonical_key, graded_canonical_key
from siltsurf.errors import SchemaError
from siltsurf.fuzz import random_graded_curve, random_silting_walk, random_surface
from siltsurf.silting import initial_dissection


def test_surface_dump_deterministic(a2):
    _, surf, _ = a2
    assert sio.dumps(sio.surface_doc(surf)) == sio.dumps(sio.surface_doc(surf))


def test_algebra_round_trip():
    alg = C.validate_gentle(C.A3_RELATION)
    doc = sio.algebra_doc(alg)
    back = sio.parse_algebra(json.loads(sio.dumps(doc)))
    assert back.canonical_form() == alg.canonical_form()


def test_unknown_fields_rejected(a2):
    with pytest.raises(SchemaError):
        sio.parse_algebra(dict(C.A2, extra=1))


def test_curve_round_trip_fuzz():
    rng = random.Random(61)
    done = 0
    while done < 60:
        alg, surf = random_surface(rng, 5)
        gc = random_graded_curve(rng, surf, 6)
        doc = sio.curve_doc(gc, surf)
        try:
            back = sio.parse_curve(json.loads(sio.dumps(doc)), surf)
        except SchemaError as ex:
            assert "ambiguous" in str(ex)
            continue
        assert isinstance(back, GradedCurve)
        assert graded_canonical_key(back) == graded_canonical_key(gc)
        done += 1


def test_dissection_round_trip():
    rng = random.Random(62)
    alg, surf, gd = random_silting_walk(rng, 4, 2)
    doc = sio.dissection_doc(gd)
    back = sio.parse_dissection(json.loads(sio.dumps(doc)), surf)
    assert back.canonical_key() == gd.canonical_key()


def test_wrap_ends_parse_and_reject(a2):
    from siltsurf.curves import ensure_perfect
    from siltsurf.errors import InfiniteArcError

    _, surfx, _ = C.build(C.DUAL_NUMBERS)
    doc = {
        "schema": sio.SCHEMA,
        "kind": "arc",
        "crossings": ["1"],
        "sides": [],
        "ends": [{"vertex": "c0", "slot": 0}, {"wrap": "P0"}],
    }
    word = sio.parse_curve(doc, surfx)
    with pytest.raises(InfiniteArcError):
        ensure_perfect(word)


def cli(tmp_path, *argv):
    return main([str(a) for a in argv])


def test_cli_validate_and_errors(tmp_path, capsys):
    good = tmp_path / "a2.json"
    good.write_text(json.dumps(C.A2))
    assert cli(tmp_path, "validate", good) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["1", "1"], "arrows": []}))
    assert cli(tmp_path, "validate", bad) == 2
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{nope")
    assert cli(tmp_path, "surface", garbage) == 1
    capsys.readouterr()


def test_cli_hom_and_mutate(tmp_path, capsys):
    good = tmp_path / "a2.json"
    good.write_text(json.dumps(C.A2))
    _, surf, _ = C.build(C.A2)
    gd = initial_dissection(surf)
    dis = tmp_path / "d.json"
    dis.write_text(sio.dumps(sio.dissection_doc(gd)))
    x = tmp_path / "x.curve"
    x.write_text(sio.dumps(sio.curve_doc(gd.arcs[0], surf)))
    y = tmp_path / "y.curve"
    y.write_text(sio.dumps(sio.curve_doc(gd.arcs[1], surf)))
    assert cli(tmp_path, "hom", good, x, y) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "0\t1"
    assert cli(tmp_path, "silting-check", good, dis) == 0
    capsys.readouterr()
    new = tmp_path / "out.json"
    assert cli(tmp_path, "mutate", good, dis, "--arc", 0, "--dir", "left", "-o", new) == 0
    capsys.readouterr()
    assert cli(tmp_path, "mutate", good, dis, "--arc", "2", "--dir", "left", "--verify", "-o", new) == 0
    capsys.readouterr()
    assert cli(tmp_path, "silting-check", good, new) == 0
    capsys.readouterr()
    # cutting a loop arc violates a mathematical precondition: exit 3
    dual = tmp_path / "dual.json"
    dual.write_text(json.dumps(C.DUAL_NUMBERS))
    assert cli(tmp_path, "cut", dual, "--arc", "1") == 3
    capsys.readouterr()


def test_cli_fuzz_deterministic(tmp_path, capsys):
    assert cli(tmp_path, "fuzz", "--seed", 9, "--count", 3) == 0
    first = capsys.readouterr().out
    assert cli(tmp_path, "fuzz", "--seed", 9, "--count", 3) == 0
    second = capsys.readouterr().out
    assert first == second
