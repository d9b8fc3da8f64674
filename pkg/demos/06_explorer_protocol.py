"""The session protocol behind the browser explorer.

Starts the JSON service in-process, loads an algebra, walks a mutation and a
cut through the same endpoints the TypeScript explorer uses, and shows the
undo stack restoring earlier states.
"""

import json
import threading
import urllib.request

from siltsurf.server import make_server

server = make_server(0)
port = server.server_address[1]
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{port}"


def call(path, body=None):
    if body is None:
        req = urllib.request.Request(base + path)
    else:
        req = urllib.request.Request(
            base + path, data=json.dumps(body).encode(), method="POST"
        )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


algebra = {
    "vertices": ["1", "2", "3"],
    "arrows": [
        {"id": "a", "source": "1", "target": "2"},
        {"id": "b", "source": "2", "target": "3"},
    ],
    "relations": [],
}

state = call("/load", {"algebra": algebra})
print("loaded:", state["panels"][0]["flags"], "badges:", state["panels"][0]["badges"])
print("case previews:", state["panels"][0]["cases"])

state = call("/mutate", {"arc": 0, "direction": "left"})
print("after mutation:", state["exchange"], "-> silting:",
      state["panels"][0]["flags"]["silting"])

hom = call("/hom?src=0&dst=1&session=default")
print("hom table between arcs 0 and 1:", hom["perDegree"], "total", hom["total"])

state = call("/cut", {"arc": "3"})
print("after cutting arc 3:", state["cut"], "->", len(state["panels"]), "panel(s)")

state = call("/undo", {})
state = call("/undo", {})
print("after two undos back to the start: depth", state["depth"],
      "badges:", state["panels"][0]["badges"])

server.shutdown()
