"""Serve mode: a JSON session service for the interactive explorer.

One session per client token (query parameter ``session``); each session is a
stack of states, every state a list of panels (surface + silting dissection).
Cutting can split a panel in two; pieces restart from their projective
dissection so the silting invariant always holds.  All endpoints exchange
silt-surf/1 JSON.
"""

from __future__ import annotations

import json
import mimetypes
import pathlib
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import io as sio
from .errors import SiltSurfError
from .mutation import classify_case, mutate, tilting_preserved
from .reduction import arc_word, cut
from .silting import initial_dissection, silting_report
from .surface import surface_from_algebra

UI_DIR = pathlib.Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"


class Session:
    def __init__(self):
        self.stack = []  # list of states; a state is a list of panels

    def state(self):
        if not self.stack:
            raise SiltSurfError("no algebra loaded")
        return self.stack[-1]

    def push(self, panels):
        self.stack.append(panels)

    def undo(self):
        if len(self.stack) <= 1:
            raise SiltSurfError("nothing to undo")
        self.stack.pop()


class Panel:
    def __init__(self, alg, surf, gd, origin="load"):
        self.alg = alg
        self.surf = surf
        self.gd = gd
        self.origin = origin

    def doc(self):
        report = silting_report(self.gd)
        cases = []
        for idx in range(len(self.gd.arcs)):
            entry = {"arc": idx}
            for direction in ("left", "right"):
                tag, matches = classify_case(self.gd, idx, direction)
                entry[direction] = tag
                entry[f"{direction}Neighbors"] = sorted(j for (_e, j, _je) in matches)
                if report["tilting"]:
                    entry[f"{direction}TiltingPreserved"] = tilting_preserved(
                        self.gd, idx, direction
                    )
            cases.append(entry)
        return {
            "surface": sio.surface_doc(self.surf),
            "dissection": sio.dissection_doc(self.gd),
            "badges": [[gc.end_value(0), gc.end_value(1)] for gc in self.gd.arcs],
            "flags": {"silting": report["silting"], "tilting": report["tilting"]},
            "cases": cases,
            "origin": self.origin,
        }


SESSIONS = {}


def _session(token: str) -> Session:
    return SESSIONS.setdefault(token, Session())


def state_doc(sess: Session) -> dict:
    return {
        "schema": sio.SCHEMA,
        "kind": "state",
        "panels": [p.doc() for p in sess.state()],
        "depth": len(sess.stack),
    }


def apply_load(sess: Session, body: dict) -> dict:
    alg = sio.parse_algebra(body["algebra"])
    surf, _ = surface_from_algebra(alg)
    sess.stack = []
    sess.push([Panel(alg, surf, initial_dissection(surf))])
    return state_doc(sess)


def apply_mutate(sess: Session, body: dict) -> dict:
    panels = list(sess.state())
    pi = int(body.get("panel", 0))
    idx = int(body["arc"])
    direction = body.get("direction", "left")
    panel = panels[pi]
    new_gd, tri = mutate(panel.gd, idx, direction)
    panels[pi] = Panel(panel.alg, panel.surf, new_gd, origin=f"mutate:{tri.case_tag}")
    sess.push(panels)
    doc = state_doc(sess)
    doc["exchange"] = {
        "case": tri.case_tag,
        "middles": len(tri.middles),
        "arc": idx,
        "direction": direction,
    }
    return doc


def apply_cut(sess: Session, body: dict) -> dict:
    panels = list(sess.state())
    pi = int(body.get("panel", 0))
    panel = panels[pi]
    arc = str(body["arc"])
    cs = cut(panel.surf, arc_word(panel.surf, arc))
    new_panels = []
    from .surface import algebra_from_surface

    for piece in cs.pieces:
        alg = algebra_from_surface(piece)
        new_panels.append(Panel(alg, piece, initial_dissection(piece), origin=f"cut:{cs.case_tag}"))
    panels[pi : pi + 1] = new_panels
    sess.push(panels)
    doc = state_doc(sess)
    doc["cut"] = {
        "case": cs.case_tag,
        "arc": cs.arc,
        "pieces": len(cs.pieces),
        "leftPoint": cs.left_point,
        "rightPoint": cs.right_point,
    }
    return doc


def apply_orbit(sess: Session, body: dict) -> dict:
    from .curves import GradedCurve, grade
    from .reduction import orbit_of

    panels = sess.state()
    pi = int(body.get("panel", 0))
    panel = panels[pi]
    gc = sio.parse_curve(body["curve"], panel.surf)
    if not isinstance(gc, GradedCurve):
        gc = grade(panel.surf, gc, 0, 0)
    p = grade(
        panel.surf,
        arc_word(panel.surf, str(body["gamma"])),
        0,
        int(body.get("gammaAnchor", 0)),
    )
    orb = orbit_of(panel.surf, gc, p)
    return {
        "schema": sio.SCHEMA,
        "kind": "orbit",
        "members": [list(map(str, m)) for m in orb.class_members],
        "offset": orb.offset,
        "table": [
            {k: v for k, v in sio.curve_doc(g, panel.surf).items() if k != "schema"}
            for g in orb.table
        ],
    }


def hom_doc(sess: Session, query) -> dict:
    from .homs import hom_table

    panel = sess.state()[int(query.get("panel", ["0"])[0])]
    src = int(query["src"][0])
    dst = int(query["dst"][0])
    table = hom_table(panel.surf, panel.gd.arcs[src], panel.gd.arcs[dst])
    return {
        "schema": sio.SCHEMA,
        "kind": "hom",
        "perDegree": {str(d): v for d, v in table.as_sorted()},
        "total": table.total,
    }


class Handler(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def _send(self, code: int, doc):
        payload = sio.dumps(doc).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _error(self, code: int, msg: str):
        self._send(code, {"schema": sio.SCHEMA, "kind": "error", "error": msg})

    def do_GET(self):
        url = urlparse(self.path)
        query = parse_qs(url.query)
        token = query.get("session", ["default"])[0]
        sess = _session(token)
        try:
            if url.path == "/state":
                return self._send(200, state_doc(sess))
            if url.path == "/surface":
                pi = int(query.get("panel", ["0"])[0])
                return self._send(200, sio.surface_doc(sess.state()[pi].surf))
            if url.path == "/hom":
                return self._send(200, hom_doc(sess, query))
            if url.path == "/ui" or url.path.startswith("/ui/"):
                return self._static(url.path)
            return self._error(404, f"unknown path {url.path}")
        except SiltSurfError as ex:
            return self._error(400, str(ex))
        except (KeyError, IndexError, ValueError) as ex:
            return self._error(400, f"bad request: {ex}")

    def _static(self, path: str):
        rel = path[len("/ui") :].lstrip("/") or "index.html"
        target = (UI_DIR / rel).resolve()
        if not str(target).startswith(str(UI_DIR)) or not target.is_file():
            return self._error(404, "asset not found")
        data = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_POST(self):
        url = urlparse(self.path)
        query = parse_qs(url.query)
        token = query.get("session", ["default"])[0]
        sess = _session(token)
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError as ex:
            return self._error(400, f"malformed body: {ex}")
        try:
            if url.path == "/load":
                return self._send(200, apply_load(sess, body))
            if url.path == "/mutate":
                return self._send(200, apply_mutate(sess, body))
            if url.path == "/cut":
                return self._send(200, apply_cut(sess, body))
            if url.path == "/orbit":
                return self._send(200, apply_orbit(sess, body))
            if url.path == "/undo":
                sess.undo()
                return self._send(200, state_doc(sess))
            return self._error(404, f"unknown path {url.path}")
        except SiltSurfError as ex:
            return self._error(400, str(ex))
        except (KeyError, IndexError, ValueError, TypeError) as ex:
            return self._error(400, f"bad request: {ex}")


def run_server(port: int):
    server = ThreadingHTTPServer(("127.0.0.1", port), Handler)
    print(f"siltsurf serve on http://127.0.0.1:{port} (ui at /ui)")
    server.serve_forever()


def make_server(port: int = 0):
    """Server instance for tests; caller drives serve_forever/shutdown."""
    return ThreadingHTTPServer(("127.0.0.1", port), Handler)
