import pytest

from locus.core import (ComplexError, FlagComplex, canonical_cycle, common_neighbors, distance,
                        is_full_cycle, tighten)
from locus.generators import gen_named, to_complex

EQUATOR = (0, 1, 2, 3)
POLES = {4, 5}


@pytest.fixture
def octa():
    return gen_named("octahedron")


@pytest.fixture
def w6():
    return to_complex(gen_named("wheel(6)"))


def cycle_graph(n):
    return FlagComplex(range(n), [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def test_octahedron_counts(octa):
    assert len(octa) == 6
    assert octa.n_edges == 12
    assert len(octa.triangles()) == 8


def test_loader_rejects_self_loops_and_duplicates():
    with pytest.raises(ComplexError):
        FlagComplex(range(3), [(0, 0)])
    with pytest.raises(ComplexError):
        FlagComplex(range(3), [(0, 1), (1, 0)])


def test_span_examples(octa):
    eq = octa.span(EQUATOR)
    assert eq.n_edges == 4
    assert is_full_cycle(octa, EQUATOR)
    assert len(octa.span([])) == 0
    assert octa.span(octa.vertices) == octa


def test_link_examples(octa, w6):
    link = octa.link({4})
    assert set(link.vertices) == set(EQUATOR)
    assert link.n_edges == 4
    rim = w6.link({0})
    assert set(rim.vertices) == set(range(1, 7)) and rim.n_edges == 6
    tri = to_complex(gen_named("triangle"))
    assert set(tri.link({0, 1}).vertices) == {2}
    with pytest.raises(ComplexError):
        octa.link({0, 2})


def test_ball_and_sphere(octa):
    assert set(octa.ball(0, 0).vertices) == {0}
    assert set(octa.ball(4, 1).vertices) == {0, 1, 2, 3, 4}
    hp = to_complex(gen_named("hex-patch(3)"))
    s1 = hp.sphere(0, 1)
    assert len(s1) == 6 and s1.n_edges == 6


def test_distance(octa):
    assert distance(octa, 3, 3) == 0
    assert distance(octa, 4, 5) == 2
    two = FlagComplex(range(4), [(0, 1), (2, 3)])
    assert distance(two, 0, 3) is None


def test_tighten_examples():
    # path a-b-c-d with a ~ c
    X = FlagComplex(range(4), [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert tighten(X, (0, 1, 2, 3)) == (0, 2, 3)
    P = FlagComplex(range(5), [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert tighten(P, (0, 1, 2, 1, 2, 3)) == (0, 1, 2, 3)
    assert tighten(P, (0, 1, 2, 3, 4)) == (0, 1, 2, 3, 4)


def test_full_cycle_examples(octa, w6):
    assert is_full_cycle(octa, EQUATOR)
    assert is_full_cycle(w6, tuple(range(1, 7)))
    assert is_full_cycle(octa, (0, 1, 4))
    K4 = FlagComplex(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert not is_full_cycle(K4, (0, 1, 2, 3))
    with pytest.raises(ComplexError):
        is_full_cycle(octa, (0, 2, 1))


def test_common_neighbors(octa, w6):
    assert common_neighbors(w6, range(1, 7)) == {0}
    assert common_neighbors(octa, EQUATOR) == POLES
    assert common_neighbors(cycle_graph(6), range(6)) == set()


def test_labels_and_lookup(octa):
    assert octa.vertex_by_label("c") == 2
    with pytest.raises(ComplexError):
        octa.vertex_by_label("z")


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((2, 1, 3)) == (1, 2, 3)
    assert canonical_cycle((4, 0, 7, 5)) == (0, 4, 5, 7)
