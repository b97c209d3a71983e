"""
A disc that is not 7-located
============================

A 7-gon filled by a ring of triangles around an inner triangle has no vertex
adjacent to the whole boundary.  The location checker names the offending
cycle, and the companion-path builder refuses to run on it.
"""

from locus import as_flag_complex, check_m_location, gen_named, shortest_path
from locus.bounds import NotLocatedError, companion_path, min_area_companion_oracle

L = gen_named("lemma36-counterexample")
print("boundary", L.boundary, "area", L.area)

K = as_flag_complex(L)
for m in (6, 7):
    rep = check_m_location(K, m)
    print(f"{m}-located:", rep.located, rep.violations)

P = shortest_path(L, 0, 3)
try:
    companion_path(L, 0, P, 4)
except NotLocatedError as exc:
    print("builder:", exc)

# the oracle still answers; it makes no use of location
print("oracle area", min_area_companion_oracle(L, 0, P, 4))

# annulus(5) shows the other kind of negative: its core loop is not
# null-homotopic, so certify mode cannot decide it within the node budget
A = gen_named("annulus(5)")
print("annulus certify:", check_m_location(A, 7, "certify", max_nodes=20_000).verdict)
print("annulus assume: ", check_m_location(A, 7).verdict)
