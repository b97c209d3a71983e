import pytest

import oracles
from locus.bounds import (GeodesicCapExceeded, NotLocatedError, check_companion_bounds,
                          companion_path, fan_decomposition, geodesics, is_seven_located,
                          min_area_companion_oracle, shortest_path, verify_quadratic_bound)
from locus.generators import filter_7_located, gen_named, gen_random_disc

H2 = gen_named("hex-patch(2)")
H3 = gen_named("hex-patch(3)")
W6 = gen_named("wheel(6)")

# u = boundary corner 7 of hex-patch(2); v at distance 4; P the least geodesic.
# Values from min_area_companion_oracle, confirmed by oracles.companion_min_area.
FROZEN_H2 = {
    (11, 3): 0, (11, 10): 4, (11, 12): 1,
    (12, 3): 0, (12, 4): 2, (12, 11): 1, (12, 13): 3,
    (13, 4): 0, (13, 12): 1, (13, 14): 1,
    (14, 4): 0, (14, 5): 2, (14, 13): 1, (14, 15): 3,
    (15, 5): 0, (15, 14): 1, (15, 16): 4,
}

# hex-patch(3), u = centre, v and w consecutive boundary vertices
FROZEN_H3 = {(19, 20): 1, (20, 21): 3, (21, 22): 5}


def adj(D):
    return {v: set(D.neighbors(v)) for v in D.vertices}


def test_shortest_path_examples():
    assert shortest_path(H2, 3, 3) == (3,)
    assert len(shortest_path(H2, 0, 7)) == 3
    assert shortest_path(W6, 1, 4) == (1, 0, 4)


def test_case_one_extends_the_geodesic():
    P = shortest_path(H3, 0, 7)
    w = 19
    assert H3.distances_from(0)[w] == 3
    res = companion_path(H3, 0, P, w)
    assert res.path == P + (w,) and res.area == 0
    assert min_area_companion_oracle(H3, 0, P, w) == 0


def test_case_two_triangle():
    # k = 1 with w ~ u: Q = (u, w), one triangle
    res = companion_path(W6, 1, (1, 0), 2)
    assert res.path == (1, 2) and res.area == 1 <= 3
    assert min_area_companion_oracle(W6, 1, (1, 0), 2) == 1


def test_frozen_hex_patch_two():
    u = 7
    for (v, w), area in FROZEN_H2.items():
        P = shortest_path(H2, u, v)
        assert min_area_companion_oracle(H2, u, P, w) == area
        assert oracles.companion_min_area(H2.triangles, H2.boundary, adj(H2), P, w) == area


def test_frozen_hex_patch_three_centre():
    for (v, w), area in FROZEN_H3.items():
        P = shortest_path(H3, 0, v)
        assert len(P) - 1 == 3
        assert min_area_companion_oracle(H3, 0, P, w) == area <= 9
        assert companion_path(H3, 0, P, w).area == area


@pytest.mark.parametrize("D", [H2, gen_random_disc(8, 12, 5), gen_random_disc(10, 20, 9),
                               gen_named("lemma36-counterexample")], ids=lambda D: D.name)
def test_oracle_matches_independent_enumeration(D):
    a = adj(D)
    for u in D.vertices:
        for v in D.vertices:
            P = shortest_path(D, u, v)
            for w in sorted(a[v]):
                want = oracles.companion_min_area(D.triangles, D.boundary, a, P, w)
                assert min_area_companion_oracle(D, u, P, w) == want


def test_geodesics_enumeration_and_cap():
    gs = geodesics(H3, 19, 31)
    assert len(gs) == 20
    assert gs == sorted(oracles.all_geodesics(adj(H3), 19, 31))
    with pytest.raises(GeodesicCapExceeded):
        geodesics(H3, 19, 31, cap=5)


def located_sample():
    discs = [gen_random_disc(n, 2 * n, seed) for n in (6, 9, 12) for seed in range(3)]
    return list(filter_7_located(discs))


def test_proof_route_never_below_oracle_and_within_bound():
    discs = located_sample() + [H2, W6, gen_named("triangle")]
    for D in discs:
        rep = check_companion_bounds(D, 3, proof_route=True)
        assert rep.proof_checked == len(rep.instances) > 0
        assert rep.below_oracle == 0
        assert rep.proof_violations == 0
        assert not rep.violations and rep.max_ratio <= 3


def test_random_detours_stay_sound():
    for D in located_sample()[:4]:
        rep = check_companion_bounds(D, 3, proof_route=True, detour_seed=1)
        assert rep.below_oracle == 0 and rep.proof_violations == 0


def test_companion_result_shape():
    P = shortest_path(H3, 0, 21)
    res = companion_path(H3, 0, P, 22)
    assert res.path[0] == 0 and res.path[-1] == 22
    assert len(res.path) - 1 == H3.distances_from(0)[22]
    assert res.walk[: len(P)] == P
    assert res.bound == 9 and res.passed and res.cases


def test_not_located_disc_is_rejected_but_oracle_runs():
    L = gen_named("lemma36-counterexample")
    assert not is_seven_located(L)
    P = shortest_path(L, 0, 3)
    with pytest.raises(NotLocatedError):
        companion_path(L, 0, P, 4)
    assert min_area_companion_oracle(L, 0, P, 4) >= 0
    assert check_companion_bounds(L, 3).instances


def test_bad_triples_are_rejected():
    with pytest.raises(ValueError):
        companion_path(H3, 0, (0, 1), 30)
    with pytest.raises(ValueError):
        companion_path(H3, 0, (0, 1), 2, const=2)


def test_quadratic_bound_examples():
    t = verify_quadratic_bound(gen_named("triangle"))
    assert (t.area, t.bound, t.passed) == (1, 27, True)
    h = verify_quadratic_bound(gen_named("hex-patch(5)"))
    assert (h.n, h.area, h.bound, h.passed) == (30, 150, 2700, True)


@pytest.mark.parametrize("name", ["triangle", "wheel(6)"] + [f"hex-patch({r})" for r in range(1, 6)])
def test_fan_decomposition_covers(name):
    D = gen_named(name)
    rep = fan_decomposition(D, 3)
    assert rep.method == "fan" and rep.coverage_ok and rep.cycles_ok and rep.passed
    assert len(rep.cycle_areas) == rep.n == len(D.boundary)
    if name.startswith("hex"):
        r = int(name[10:-1])
        assert (rep.area, rep.bound) == (6 * r * r, 108 * r * r)


def test_fan_decomposition_requires_location():
    with pytest.raises(NotLocatedError):
        fan_decomposition(gen_named("lemma36-counterexample"))
