"""A silting mutation walk with exchange-triangle verification.

Starts from the projective dissection of a random gentle algebra, mutates a
few times, classifies each step, and has the oracle confirm the exchange
triangle (approximation property and cone).
"""

import random

from siltsurf.fuzz import random_surface
from siltsurf.mutation import classify_case, mutate, mutation_graph
from siltsurf.silting import initial_dissection, silting_report
from siltsurf.verify import verify_exchange_triangle

rng = random.Random(33)
alg, surf = random_surface(rng, 4)
print(f"algebra with {len(alg.vertices)} vertices, surface genus/boundary:",
      surf.euler_invariants())

gd = initial_dissection(surf)
print("initial dissection silting:", silting_report(gd)["silting"])

for step in range(3):
    idx = rng.randrange(len(gd.arcs))
    tag, matches = classify_case(gd, idx, "left")
    new_gd, tri = mutate(gd, idx, "left")
    checks = verify_exchange_triangle(surf, alg, gd, idx, new_gd, tri)
    print(f"step {step}: left mutation at arc {idx}: case {tag}, "
          f"{len(tri.middles)} middle term(s), oracle says "
          f"approximation={checks['approximation']} cone={checks['cone']}")
    back, _ = mutate(new_gd, idx, "right")
    assert back.canonical_key() == gd.canonical_key()
    gd = new_gd
print("right mutation inverted every step")

nodes, edges = mutation_graph(initial_dissection(surf), 2)
print(f"mutation graph to depth 2: {len(nodes)} dissections, {len(edges)} edges")
