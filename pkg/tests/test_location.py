import pytest

import oracles
from locus.core import FlagComplex, is_full_cycle
from locus.disc import as_flag_complex
from locus.generators import gen_named, gen_random_disc, to_complex
from locus.location import (ASSUME_SIMPLY_CONNECTED, CERTIFY, certify_null_homotopic,
                            check_m_location, enumerate_full_cycles, is_in_one_ball,
                            verify_lemma_3_6)

OCTA = gen_named("octahedron")
W6 = to_complex(gen_named("wheel(6)"))
RIM = tuple(range(1, 7))
C6 = FlagComplex(range(6), [(i, (i + 1) % 6) for i in range(6)])
K5 = FlagComplex(range(5), [(a, b) for a in range(5) for b in range(a + 1, 5)])


def test_enumerate_examples():
    assert len(enumerate_full_cycles(OCTA, 4, 7)) == 3
    assert {frozenset(c) for c in enumerate_full_cycles(OCTA, 4, 7)} == {
        frozenset({0, 1, 2, 3}), frozenset({0, 4, 2, 5}), frozenset({1, 4, 3, 5})}
    assert enumerate_full_cycles(C6, 4, 7) == [(0, 1, 2, 3, 4, 5)]
    assert enumerate_full_cycles(K5, 4, 7) == []


@pytest.mark.parametrize("name", ["octahedron", "wheel(5)", "wheel(8)", "hex-patch(1)",
                                  "annulus(4)", "annulus(5)", "lemma36-counterexample"])
def test_enumerate_matches_subset_oracle(name):
    X = to_complex(gen_named(name))
    adj = {v: set(X.neighbors(v)) for v in X.vertices}
    got = enumerate_full_cycles(X, 3, 7)
    assert len(got) == len(set(map(frozenset, got)))
    assert {frozenset(c) for c in got} == oracles.full_cycles_by_subsets(adj, 3, 7)
    assert all(is_full_cycle(X, c) for c in got)


def test_one_ball_examples():
    assert is_in_one_ball(W6, RIM) == 0
    assert is_in_one_ball(OCTA, (0, 1, 2, 3)) in (4, 5)
    assert is_in_one_ball(C6, tuple(range(6))) is None


def test_certify_examples():
    assert certify_null_homotopic(OCTA, (0, 1, 4)) == "yes"
    assert certify_null_homotopic(W6, RIM) == "yes"
    assert certify_null_homotopic(gen_named("annulus(5)"), (0, 1, 2, 3, 4), budget=9) == "unknown"


def test_hex_patch_is_located_with_center_witnesses():
    H = gen_named("hex-patch(3)")
    rep = check_m_location(as_flag_complex(H), 7, ASSUME_SIMPLY_CONNECTED)
    assert rep.located
    assert rep.n_cycles == len(H.interior_vertices) == 19
    for c, w in rep.witnesses.items():
        assert len(c) == 6 and set(c) == H.neighbors(w)


def test_octahedron_located_in_both_modes():
    for mode in (ASSUME_SIMPLY_CONNECTED, CERTIFY):
        rep = check_m_location(OCTA, 7, mode)
        assert rep.located and rep.n_cycles == 3
        assert set(rep.witnesses.values()) <= {4, 5} | {0, 1, 2, 3}


def test_lemma36_disc_not_located():
    K = as_flag_complex(gen_named("lemma36-counterexample"))
    rep = check_m_location(K, 7)
    assert rep.verdict == "not-located"
    assert rep.violations == [(0, 1, 2, 3, 4, 5, 6)]
    assert check_m_location(K, 6).located


def test_annulus_certify_is_unknown_or_not_located():
    X = gen_named("annulus(5)")
    rep = check_m_location(X, 7, CERTIFY, max_nodes=20_000)
    assert rep.verdict == "unknown"
    assert (0, 1, 2, 3, 4) in rep.undecided
    assert check_m_location(X, 7, ASSUME_SIMPLY_CONNECTED).verdict == "not-located"


def test_witnesses_dominate_their_cycles():
    for seed in range(10):
        K = as_flag_complex(gen_random_disc(12, 20, seed))
        rep = check_m_location(K, 7)
        for c, w in rep.witnesses.items():
            assert w not in c and all(K.adjacent(w, x) for x in c)
        assert not rep.undecided


def test_location_monotone_in_m():
    X = gen_named("octahedron")
    assert all(check_m_location(X, m, CERTIFY).located for m in range(4, 8))


def test_verify_lemma_3_6_examples():
    assert verify_lemma_3_6(W6, RIM).status == "ok"
    assert verify_lemma_3_6(OCTA, (0, 1, 2, 3)).status == "ok"
    assert verify_lemma_3_6(gen_named("annulus(5)"), (0, 1, 2, 3, 4), budget=9).status == "unknown"


def test_mode_validation():
    with pytest.raises(ValueError):
        check_m_location(OCTA, 3)
    with pytest.raises(ValueError):
        check_m_location(OCTA, 7, "sometimes")
