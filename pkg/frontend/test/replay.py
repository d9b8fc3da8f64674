"""Replay a scripted walk directly through the library and print the state.

Reads {"algebra": ..., "ops": [...]} on stdin; each op is
["mutate", panel, arc, direction] or ["cut", panel, arcId] or ["undo"].
The output is exactly what GET /state serves after the same walk.
"""

import json
import sys

from siltsurf import io as sio
from siltsurf.server import Session, apply_cut, apply_load, apply_mutate, state_doc


def main() -> int:
    spec = json.load(sys.stdin)
    sess = Session()
    apply_load(sess, {"algebra": spec["algebra"]})
    for op in spec["ops"]:
        if op[0] == "mutate":
            apply_mutate(sess, {"panel": op[1], "arc": op[2], "direction": op[3]})
        elif op[0] == "cut":
            apply_cut(sess, {"panel": op[1], "arc": op[2]})
        elif op[0] == "undo":
            sess.undo()
        else:
            raise SystemExit(f"unknown op {op}")
    sys.stdout.write(sio.dumps(state_doc(sess)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
