from itertools import combinations

import pytest

import oracles
from locus.disc import (DiscError, InvalidDiscError, NonFlagDiscError, SimplicialDisc,
                        as_flag_complex, enclosed_area, split_closed_walk, validate_disc)
from locus.generators import RandomDiscConfig, gen_named, gen_random_disc


def fan(k):
    """Hub 0 over the rim path 1..k+1; every vertex is on the boundary."""
    tris = [(0, i, i + 1) for i in range(1, k + 1)]
    return tris, (0,) + tuple(range(1, k + 2))


# a pentagon whose chord 0-2 cuts off a cone over the 3-cycle 0, 1, 2
NON_FLAG = ([(0, 1, 5), (1, 2, 5), (2, 0, 5), (0, 2, 3), (0, 3, 4)], (0, 1, 2, 3, 4))


def conditions(violations):
    return {v.condition for v in violations}


def test_validate_examples():
    assert validate_disc([(0, 1, 2)], (0, 1, 2)) == []
    assert validate_disc(*fan(6)) == []
    bowtie = validate_disc([(0, 1, 2), (0, 3, 4)], (1, 2, 0, 3, 4))
    assert "boundary-link" in conditions(bowtie)
    with pytest.raises(InvalidDiscError) as exc:
        SimplicialDisc([(0, 1, 2), (0, 3, 4)], (1, 2, 0, 3, 4))
    assert exc.value.violations


def test_validate_catches_extra_components_and_bad_boundary():
    assert "boundary-vertex-unknown" in conditions(validate_disc([(0, 1, 2)], (0, 2, 1, 3)))
    two = validate_disc([(0, 1, 2), (3, 4, 5)], (0, 1, 2))
    assert two
    assert "bad-triangle" in conditions(validate_disc([(0, 0, 1)], (0, 1, 2)))


def test_area_examples():
    tri = gen_named("triangle")
    assert tri.area == 1 == tri.pick_area()
    assert not tri.interior_vertices
    W = gen_named("wheel(6)")
    assert W.area == 6 == 2 * 1 + 6 - 2
    assert set(W.interior_vertices) == {0}
    H = gen_named("hex-patch(2)")
    assert (H.area, len(H.interior_vertices), len(H.boundary_vertices)) == (24, 7, 12)
    assert H.euler_characteristic() == 1


def test_link_cycle():
    W = gen_named("wheel(6)")
    link = W.link_cycle(0)
    assert len(link) == 6
    assert oracles.split_walk(link) == [link]
    for i, a in enumerate(link):
        assert W.adjacent(a, link[(i + 1) % 6])
    with pytest.raises(DiscError):
        W.link_cycle(1)


def test_degree_four_link_cycle():
    cfg = RandomDiscConfig(min_interior_degree=4, target_degree=4)
    for seed in range(50):
        D = gen_random_disc(8, 10, seed, cfg)
        fours = [v for v in D.interior_vertices if D.degree(v) == 4]
        if fours:
            link = D.link_cycle(fours[0])
            assert len(link) == 4 and set(link) == D.neighbors(fours[0])
            return
    pytest.fail("no degree-4 interior vertex in 50 discs")


def test_interior_link_lengths_equal_degrees():
    for seed in range(20):
        D = gen_random_disc(10, 15, seed)
        for v in D.interior_vertices:
            assert len(D.link_cycle(v)) == D.degree(v)


def test_as_flag_complex():
    assert as_flag_complex(gen_named("triangle")).n_edges == 3
    H = gen_named("hex-patch(3)")
    K = as_flag_complex(H)
    cliques = {frozenset(t) for t in K.triangles()}
    assert cliques == {frozenset(t) for t in H.triangles}
    with pytest.raises(NonFlagDiscError) as exc:
        as_flag_complex(SimplicialDisc(*NON_FLAG))
    assert set(exc.value.clique) == {0, 1, 2}


def test_enclosed_area_examples():
    H = gen_named("hex-patch(2)")
    assert enclosed_area(H, H.boundary) == H.area
    assert enclosed_area(H, (0, 1, 2)) == 1
    assert enclosed_area(H, H.link_cycle(0)) == 6


def test_enclosed_area_additive_on_rings():
    H = gen_named("hex-patch(3)")
    ring1 = H.link_cycle(0)
    ring2 = tuple(range(7, 19))
    # ids run ring by ring, so the triangles between rings 1 and 2 are those on ids 1..18
    between = sum(1 for t in H.triangles if all(1 <= v <= 18 for v in t))
    assert enclosed_area(H, ring2) == enclosed_area(H, ring1) + between == 24


@pytest.mark.parametrize("D", [gen_named("hex-patch(2)"), gen_named("lemma36-counterexample"),
                               gen_random_disc(9, 12, 4), gen_random_disc(12, 20, 7)],
                         ids=lambda D: D.name)
def test_enclosed_area_matches_oracle_on_all_short_cycles(D):
    adj = {v: set(D.neighbors(v)) for v in D.vertices}
    for c in oracles.simple_cycles(adj, 8):
        want = oracles.region_area(D.triangles, D.boundary, c)
        assert enclosed_area(D, c) == want
        assert bin(D.chain(c)).count("1") == want


def test_chain_is_xor_additive():
    H = gen_named("hex-patch(2)")
    ring1 = H.link_cycle(0)
    assert H.chain(H.boundary) ^ H.chain(ring1) == H.chain(H.boundary) - H.chain(ring1)


def test_split_closed_walk():
    assert split_closed_walk((0, 1, 2)) == [(0, 1, 2)]
    pieces = split_closed_walk((0, 1, 2, 0, 3, 4))
    assert sorted(map(sorted, pieces)) == [[0, 1, 2], [0, 3, 4]]
    assert split_closed_walk((0, 1, 0)) == []


def test_walk_area_matches_oracle():
    D = gen_random_disc(10, 12, 3)
    adj = {v: set(D.neighbors(v)) for v in D.vertices}
    cycles = oracles.simple_cycles(adj, 6)
    checked = 0
    for a, b in combinations(cycles[:40], 2):
        if a[0] == b[0]:
            walk = a + b
            assert D.walk_area(walk) == oracles.walk_area(D.triangles, D.boundary, walk)
            checked += 1
    assert checked > 100


def test_rotation_is_consistent_with_triangles():
    D = gen_random_disc(9, 9, 11)
    for v in D.vertices:
        rot = D.rotation(v)
        closed = v not in D.boundary_vertices
        pairs = list(zip(rot, rot[1:])) + ([(rot[-1], rot[0])] if closed else [])
        assert len(pairs) == D.degree(v) - (0 if closed else 1)
        tris = {frozenset(t) for t in D.triangles}
        assert all(frozenset((v, a, b)) in tris for a, b in pairs)
