"""
Quadratic area through fans of companions
=========================================

Walking around the boundary of a located disc and carrying a companion
geodesic from a base vertex splits the disc into ``n`` thin cycles, each of
area at most ``3 d``.  On the hexagonal patches the total area grows as
``6 r^2`` against the ``3 n^2 = 108 r^2`` bound.
"""

from locus import fan_decomposition, gen_named

for r in range(1, 6):
    D = gen_named(f"hex-patch({r})")
    rep = fan_decomposition(D, 3)
    print(f"r={r} n={rep.n:2d} area={rep.area:3d} bound={rep.bound:5d}"
          f" pass={rep.passed} max cycle area={max(rep.cycle_areas)}")

rep = fan_decomposition(gen_named("hex-patch(2)"), 3)
print("\n".join(rep.lines()))
