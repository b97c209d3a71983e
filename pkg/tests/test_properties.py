"""Property-based checks of the module invariants."""

from itertools import combinations

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from locus.bounds import (check_companion_bounds, companion_path, is_seven_located,
                          min_area_companion_oracle, shortest_path)
from locus.core import FlagComplex, distance, is_full_cycle, tighten
from locus.disc import as_flag_complex, validate_disc
from locus.filling import BudgetExhausted, FillingSearch, check_lemma_2_4, check_lemma_2_5
from locus.formats import dump_complex, dump_disc, load
from locus.generators import RandomDiscConfig, gen_random_disc
from locus.location import check_m_location, enumerate_full_cycles

SETTINGS = settings(max_examples=100, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_vertices=9):
    n = draw(st.integers(3, max_vertices))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return FlagComplex(range(n), edges)


@st.composite
def discs(draw, max_boundary=14, max_interior=24, min_degree=None):
    n = draw(st.integers(3, max_boundary))
    budget = draw(st.integers(0, max_interior))
    seed = draw(st.integers(0, 10_000))
    deg = draw(st.sampled_from([4, 5, 6])) if min_degree is None else min_degree
    return gen_random_disc(n, budget, seed, RandomDiscConfig(min_interior_degree=deg))


@st.composite
def walks(draw, X, max_len=10):
    v = draw(st.sampled_from(X.vertices))
    path = [v]
    for _ in range(draw(st.integers(0, max_len))):
        nb = sorted(X.neighbors(path[-1]))
        if not nb:
            break
        path.append(draw(st.sampled_from(nb)))
    return tuple(path)


def adj(X):
    return {v: set(X.neighbors(v)) for v in X.vertices}


# -- core ---------------------------------------------------------------------------

@SETTINGS
@given(graphs(max_vertices=10))
def test_full_cycles_match_subset_oracle(X):
    got = enumerate_full_cycles(X, 3, 7)
    assert len(got) == len(set(map(frozenset, got)))
    assert {frozenset(c) for c in got} == oracles.full_cycles_by_subsets(adj(X), 3, 7)


@SETTINGS
@given(graphs(), st.data())
def test_sphere_is_ball_difference(X, data):
    v = data.draw(st.sampled_from(X.vertices))
    for i in range(1, 5):
        ring = set(X.sphere(v, i).vertices)
        assert ring == set(X.ball(v, i).vertices) - set(X.ball(v, i - 1).vertices)


@SETTINGS
@given(graphs(), st.data())
def test_tighten_properties(X, data):
    p = data.draw(walks(X))
    t = tighten(X, p)
    assert tighten(X, t) == t
    assert (t[0], t[-1]) == (p[0], p[-1])
    assert len(t) <= len(p)
    assert len(t) - 1 >= distance(X, p[0], p[-1])
    assert len(set(t)) == len(t)
    for i, j in combinations(range(len(t)), 2):
        assert X.adjacent(t[i], t[j]) == (j == i + 1)


@SETTINGS
@given(graphs(), st.data())
def test_distance_triangle_inequality(X, data):
    u, v, w = (data.draw(st.sampled_from(X.vertices)) for _ in range(3))
    duv, dvw, duw = distance(X, u, v), distance(X, v, w), distance(X, u, w)
    if duv is not None and dvw is not None:
        assert duw is not None and duw <= duv + dvw


@SETTINGS
@given(graphs(max_vertices=8))
def test_full_iff_span_has_cycle_length_edges(X):
    for c in oracles.simple_cycles(adj(X), 6):
        assert is_full_cycle(X, c) == (X.span(c).n_edges == len(c))


# -- discs ----------------------------------------------------------------------------

@SETTINGS
@given(discs())
def test_random_discs_are_valid_and_satisfy_identities(D):
    assert validate_disc(D.triangles, D.boundary) == []
    V, E, T, vi, vb = oracles.disc_counts(D.triangles, D.boundary)
    assert T == 2 * vi + vb - 2
    assert V - E + T == 1
    for v in D.interior_vertices:
        assert len(D.link_cycle(v)) == D.degree(v)
    as_flag_complex(D)


@SETTINGS
@given(st.integers(3, 20), st.integers(0, 30), st.integers(0, 10_000))
def test_random_discs_reproducible(n, budget, seed):
    assert gen_random_disc(n, budget, seed) == gen_random_disc(n, budget, seed)


@SETTINGS
@given(discs())
def test_disc_files_round_trip(D):
    assert load(dump_disc(D)) == D
    K = as_flag_complex(D)
    assert load(dump_complex(K)) == K


@SETTINGS
@given(discs(max_boundary=10, max_interior=12), st.data())
def test_enclosed_area_matches_flood_oracle(D, data):
    cycles = oracles.simple_cycles(adj(D), 7)
    c = data.draw(st.sampled_from(cycles))
    assert bin(D.chain(c)).count("1") == oracles.region_area(D.triangles, D.boundary, c)


# -- filling --------------------------------------------------------------------------

@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(discs(max_boundary=10, max_interior=10), st.data())
def test_minimal_diagrams_are_clean(D, data):
    K = as_flag_complex(D)
    loops = enumerate_full_cycles(K, 3, 7)
    assume(loops)
    loop = data.draw(st.sampled_from(loops))
    search = FillingSearch(K, max_nodes=50_000)
    try:
        d = search.fill(loop)
    except BudgetExhausted:
        assume(False)
    n = len(loop)
    assert d.area >= n - 2 and (d.area - n) % 2 == 0
    assert not d.violations() and not check_lemma_2_4(d) and not check_lemma_2_5(d)
    # a larger budget finds the same minimum; the least budget that works is the area
    assert FillingSearch(K).fill(loop, d.area + 4).area == d.area
    if d.area > n - 2:
        try:
            FillingSearch(K).fill(loop, d.area - 2)
            raise AssertionError("found a diagram below the minimum")
        except BudgetExhausted:
            pass


# -- location --------------------------------------------------------------------------

@SETTINGS
@given(discs(max_boundary=12, max_interior=16))
def test_location_on_discs(D):
    K = as_flag_complex(D)
    rep = check_m_location(K, 7)
    assert not rep.undecided
    for c, w in rep.witnesses.items():
        assert all(K.adjacent(w, x) for x in c)
    if rep.located:
        assert all(check_m_location(K, m).located for m in range(4, 7))


# -- companion paths -------------------------------------------------------------------

@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(discs(max_boundary=12, max_interior=16, min_degree=6), st.data())
def test_companion_between_oracle_and_bound(D, data):
    u = data.draw(st.sampled_from(D.vertices))
    v = data.draw(st.sampled_from(D.vertices))
    w = data.draw(st.sampled_from(sorted(D.neighbors(v))))
    assume(is_seven_located(D))
    P = shortest_path(D, u, v)
    k = len(P) - 1
    oracle = min_area_companion_oracle(D, u, P, w)
    res = companion_path(D, u, P, w, strict=False)
    assert oracle <= res.area <= 3 * k
    seeded = companion_path(D, u, P, w, strict=False, detour_seed=data.draw(st.integers(0, 99)))
    assert oracle <= seeded.area <= 3 * k


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(discs(max_boundary=9, max_interior=10, min_degree=6))
def test_companion_bounds_hold_on_whole_discs(D):
    rep = check_companion_bounds(D, 3, proof_route=True)
    assert rep.passed and rep.below_oracle == 0
