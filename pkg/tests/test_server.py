import json
import threading
import urllib.request

import pytest

import conftest as C
from siltsurf import io as sio
from siltsurf.server import SESSIONS, make_server


@pytest.fixture
def server():
    SESSIONS.clear()
    srv = make_server(0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()


def call(base, path, body=None):
    if body is None:
        req = urllib.request.Request(base + path)
    else:
        req = urllib.request.Request(
            base + path, data=json.dumps(body).encode(), method="POST"
        )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as ex:
        return ex.code, json.loads(ex.read())


def test_load_state_mutate_undo(server):
    status, state = call(server, "/load", {"algebra": C.A2})
    assert status == 200
    assert state["panels"][0]["flags"] == {"silting": True, "tilting": True}
    original = sio.dumps(state)

    status, after = call(server, "/mutate", {"arc": 0, "direction": "left"})
    assert status == 200
    assert after["exchange"]["case"] == "II"
    assert after["panels"][0]["flags"]["silting"]

    status, undone = call(server, "/undo", {})
    assert status == 200
    undone.pop("depth")
    reloaded = json.loads(original)
    reloaded.pop("depth")
    assert sio.dumps(undone) == sio.dumps(reloaded)


def test_state_and_hom_match_direct_calls(server):
    call(server, "/load", {"algebra": C.A2})
    status, hom = call(server, "/hom?src=0&dst=1")
    assert status == 200
    assert hom["perDegree"] == {"0": 1} and hom["total"] == 1
    status, surface = call(server, "/surface")
    _, surf, _ = C.build(C.A2)
    assert sio.dumps(surface) == sio.dumps(sio.surface_doc(surf))


def test_cut_endpoint_and_precondition(server):
    call(server, "/load", {"algebra": C.A2})
    status, state = call(server, "/cut", {"arc": "1"})
    assert status == 200
    assert state["cut"]["case"] == 3 and len(state["panels"]) == 2

    call(server, "/load", {"algebra": C.DUAL_NUMBERS})
    status, err = call(server, "/cut", {"arc": "1"})
    assert status == 400
    assert "loop" in err["error"]


def test_malformed_body_is_400(server):
    req = urllib.request.Request(
        server + "/load", data=b"{not json", method="POST"
    )
    try:
        with urllib.request.urlopen(req) as resp:
            status = resp.status
    except urllib.error.HTTPError as ex:
        status = ex.code
    assert status == 400


def test_serve_equals_cli_replay(server):
    # a scripted walk through the API reproduces the library-level replay
    from siltsurf.mutation import mutate
    from siltsurf.silting import initial_dissection
    from siltsurf.server import Panel, Session, state_doc

    call(server, "/load", {"algebra": C.A3_HEREDITARY})
    script = [(0, "left"), (1, "right"), (0, "right")]
    for arc, direction in script:
        status, state = call(server, "/mutate", {"arc": arc, "direction": direction})
        assert status == 200

    alg, surf, _ = C.build(C.A3_HEREDITARY)
    gd = initial_dissection(surf)
    for arc, direction in script:
        gd, _ = mutate(gd, arc, direction)
    sess = Session()
    sess.push([Panel(alg, surf, gd)])
    expected = state_doc(sess)
    got_panels = state["panels"]
    assert sio.dumps({"p": got_panels[0]["dissection"]}) == sio.dumps(
        {"p": expected["panels"][0]["dissection"]}
    )
