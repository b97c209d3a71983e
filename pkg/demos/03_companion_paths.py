"""
Companion paths: constructed route against the oracle
=====================================================

Given a geodesic ``P`` from ``u`` to ``v`` and a neighbour ``w`` of ``v``, a
companion is a geodesic ``Q`` from ``u`` to ``w`` with ``P . (v, w) . Q^-1``
bounding little area.  The oracle takes the minimum over every geodesic;
the builder follows the inductive construction.  Both are compared with
``3 k`` where ``k = |P|``.
"""

from locus import gen_named, shortest_path
from locus.bounds import check_companion_bounds, companion_path, min_area_companion_oracle

H = gen_named("hex-patch(3)")
u = 0
for v, w in [(19, 20), (20, 21), (21, 22)]:
    P = shortest_path(H, u, v)
    res = companion_path(H, u, P, w)
    best = min_area_companion_oracle(H, u, P, w)
    print(f"P={P} w={w}: built {res.area}, oracle {best}, bound {res.bound},"
          f" cases {res.cases}")

# every triple in the disc, constructed route checked against the oracle
rep = check_companion_bounds(H, 3, proof_route=True)
print(len(rep.instances), "triples,", rep.proof_violations, "over bound,",
      rep.below_oracle, "below oracle, max ratio", round(rep.max_ratio, 3))
