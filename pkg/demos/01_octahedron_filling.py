"""
Minimal filling diagrams in the octahedron
==========================================

The octahedron is the flag complex of the 4-cycle joined to two poles.  Its
equator bounds a disc of area 4 (a cone from either pole) and each
triangle bounds a disc of area 1.
"""

from locus import check_m_location, enumerate_full_cycles, gen_named, minimal_filling
from locus.filling import check_lemma_2_4, check_lemma_2_5, check_lemma_3_1

X = gen_named("octahedron")
print(len(X.vertices), "vertices,", X.n_edges, "edges")

# the full cycles of length 4..7 are the three equators
for c in enumerate_full_cycles(X, 4, 7):
    print("full cycle", [X.label(v) for v in c])

# fill the equator a, b, c, d; the single interior vertex lands on a pole
d = minimal_filling(X, (0, 1, 2, 3))
(x,) = d.disc.interior_vertices
print("area", d.area, "centre ->", X.label(d.image(x)))

# a minimal diagram is nondegenerate with injective links
print("clean:", not (d.violations() or check_lemma_2_4(d) or check_lemma_2_5(d)
                     or check_lemma_3_1(d)))

# every equator is in the 1-ball of a pole, so X is 7-located
rep = check_m_location(X, 7, "certify")
print("verdict", rep.verdict, {c: X.label(w) for c, w in rep.witnesses.items()})
