"""From a gentle presentation to its dissected marked surface.

Builds a few classical algebras, prints the surface invariants, and shows
that the fans remember the algebra exactly.
"""

from siltsurf.algebra import validate_gentle
from siltsurf.surface import algebra_from_surface, surface_from_algebra

EXAMPLES = {
    "A2": {
        "vertices": ["1", "2"],
        "arrows": [{"id": "a", "source": "1", "target": "2"}],
        "relations": [],
    },
    "Kronecker": {
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a", "source": "1", "target": "2"},
            {"id": "b", "source": "1", "target": "2"},
        ],
        "relations": [],
    },
    "dual numbers k[x]/x^2": {
        "vertices": ["1"],
        "arrows": [{"id": "a", "source": "1", "target": "1"}],
        "relations": [["a", "a"]],
    },
}

for name, raw in EXAMPLES.items():
    alg = validate_gentle(raw)
    surf, dual = surface_from_algebra(alg)
    g, b = surf.euler_invariants()
    c = surf.counts()
    print(f"{name}:")
    print(f"  genus {g}, {b} boundary component(s), "
          f"{c['circ']} circ points, {c['bullet']} boundary bullets, "
          f"{c['punctures']} puncture(s), {c['arcs']} arcs")
    for w in surf.circ_points():
        print(f"  fan at {w}: {[e for e in surf.fan(w)]}")
    back = algebra_from_surface(surf)
    print(f"  fans reproduce the algebra: {back.canonical_form() == alg.canonical_form()}")
    print()
