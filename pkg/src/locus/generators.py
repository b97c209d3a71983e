"""
Instance generators: named complexes, hexagonal patches, seeded random discs.

Named instances are addressed by identifiers such as ``"wheel(6)"`` or
``"hex-patch(3)"``.  Discs use boundary ids ``0..n-1`` in boundary order and
interior ids from ``n`` on, except the hexagonal patch, whose ids run ring by
ring from the centre.
"""

import math
import random
import re
from dataclasses import dataclass

from .core import FlagComplex
from .disc import NonFlagDiscError, SimplicialDisc, as_flag_complex
from .location import check_m_location

__all__ = [
    "FilterStats",
    "NAMED",
    "RandomDiscConfig",
    "filter_7_located",
    "gen_named",
    "gen_random_disc",
    "hex_patch",
    "parse_name",
    "to_complex",
]

_HEX_DIRS = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)]


def triangle():
    return SimplicialDisc([(0, 1, 2)], (0, 1, 2), name="triangle")


def wheel(k):
    """``k``-wheel as a disc: hub ``0``, rim ``1..k`` (the boundary)."""
    if not 4 <= k <= 8:
        raise ValueError("wheel(k) needs 4 <= k <= 8")
    tris = [(0, i, i % k + 1) for i in range(1, k + 1)]
    return SimplicialDisc(tris, tuple(range(1, k + 1)), name=f"wheel({k})")


def octahedron():
    """
    Octahedron labelled ``a..f`` (ids ``0..5``).

    Opposite pairs are ``(a, c)``, ``(b, d)`` and ``(e, f)``, so ``a, b, c, d``
    is an equator and ``e``, ``f`` are the poles.
    """
    opposite = {(0, 2), (1, 3), (4, 5)}
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6) if (a, b) not in opposite]
    return FlagComplex(range(6), edges, labels=dict(enumerate("abcdef")), name="octahedron")


def _hex_ring(radius):
    if radius == 0:
        return [(0, 0)]
    q, r = -radius, radius  # radius steps along direction 4
    out = []
    for dq, dr in _HEX_DIRS:
        for _ in range(radius):
            out.append((q, r))
            q, r = q + dq, r + dr
    return out


def hex_patch(radius):
    """
    Flat hexagonal patch of the triangular lattice.

    ``V = 1 + 3r(r+1)`` vertices and ``6 r**2`` triangles; vertex ids increase
    ring by ring, so the centre is ``0`` and the boundary is the outer ring.
    """
    if radius < 1:
        raise ValueError("hex-patch(r) needs r >= 1")
    cells = [c for rad in range(radius + 1) for c in _hex_ring(rad)]
    index = {c: i for i, c in enumerate(cells)}
    tris = []
    for (q, r), i in index.items():
        for (a, b), (c, d) in (((1, 0), (0, 1)), ((1, 0), (1, -1))):
            j, k = index.get((q + a, r + b)), index.get((q + c, r + d))
            if j is not None and k is not None:
                tris.append((i, j, k))
    boundary = tuple(index[c] for c in _hex_ring(radius))
    return SimplicialDisc(tris, boundary, name=f"hex-patch({radius})")


def annulus(n):
    """Triangulated annulus as a flag complex: inner ``0..n-1``, outer ``n..2n-1``."""
    if n < 4:
        raise ValueError("annulus(n) needs n >= 4")
    edges = set()
    for i in range(n):
        a, a1 = i, (i + 1) % n
        b, b1 = n + i, n + (i + 1) % n
        edges |= {(a, a1), (b, b1), (a, b), (a, b1)}
    edges = {tuple(sorted(e)) for e in edges}
    return FlagComplex(range(2 * n), sorted(edges), name=f"annulus({n})")


def lemma36_counterexample():
    """
    Disc on a full boundary 7-cycle with two adjacent interior vertices.

    Boundary ``v1..v7`` has ids ``0..6``, ``z = 7`` and ``y = 8``.  Flag, but
    the boundary cycle lies in no 1-ball, so it is not 7-located.
    """
    v = {i: i - 1 for i in range(1, 8)}
    z, y = 7, 8
    tris = [(z, y, v[3]), (z, v[3], v[2]), (z, v[2], v[1]), (z, v[1], v[7]), (z, v[7], y),
            (y, v[3], v[4]), (y, v[4], v[5]), (y, v[5], v[6]), (y, v[6], v[7])]
    labels = {**{v[i]: f"v{i}" for i in v}, z: "z", y: "y"}
    return SimplicialDisc(tris, tuple(range(7)), labels=labels, name="lemma36-counterexample")


NAMED = {
    "triangle": (triangle, 0),
    "wheel": (wheel, 1),
    "octahedron": (octahedron, 0),
    "hex-patch": (hex_patch, 1),
    "annulus": (annulus, 1),
    "lemma36-counterexample": (lemma36_counterexample, 0),
}

_NAME_RE = re.compile(r"^\s*([a-z0-9-]+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


def parse_name(name):
    """Split ``"wheel(6)"`` into ``("wheel", (6,))``."""
    m = _NAME_RE.match(name)
    if not m or m.group(1) not in NAMED:
        raise ValueError(f"unknown instance name {name!r}")
    base = m.group(1)
    params = (int(m.group(2)),) if m.group(2) is not None else ()
    if len(params) != NAMED[base][1]:
        raise ValueError(f"{base} takes {NAMED[base][1]} parameter(s)")
    return base, params


def gen_named(name, *params):
    """Named instance, e.g. ``gen_named("wheel(6)")`` or ``gen_named("wheel", 6)``."""
    if params:
        name = f"{name}({','.join(map(str, params))})"
    base, args = parse_name(name)
    return NAMED[base][0](*args)


def to_complex(obj):
    """Flag complex of a generator output (discs give their 1-skeleton)."""
    if isinstance(obj, FlagComplex):
        return obj
    return obj.skeleton()


# -- random discs -----------------------------------------------------------------

@dataclass(frozen=True)
class RandomDiscConfig:
    """
    Move weights for :func:`gen_random_disc`.

    The disc grows from a triangle by two boundary moves: ``grow`` glues a
    triangle with a new vertex onto a boundary edge, ``fill`` glues the
    triangle ``(a, v, b)`` into a boundary corner ``a, v, b``, which makes
    ``v`` interior with its current degree.  A fill is offered only when that
    degree is at least ``min_interior_degree``; its weight is scaled by
    ``exp(-degree_bias * |deg - target_degree|)``.  The boundary never exceeds
    the requested length by more than ``slack``.  Read backwards, the run is
    a sequence of boundary-reduction moves.
    """

    grow: float = 1.0
    fill: float = 20.0
    target_degree: int = 6
    min_interior_degree: int = 6
    degree_bias: float = 1.0
    slack: int = 0
    max_attempts: int = 200


DEFAULT_RANDOM = RandomDiscConfig()


def _attempt(n, budget, rng, cfg):
    tris = [(0, 1, 2)]
    nbr = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
    boundary = [0, 1, 2]
    fresh = 3
    interior = 0

    def grow(i):
        nonlocal fresh
        a, b = boundary[i], boundary[(i + 1) % len(boundary)]
        y = fresh
        fresh += 1
        tris.append((a, b, y))
        nbr[y] = {a, b}
        nbr[a].add(y)
        nbr[b].add(y)
        boundary.insert(i + 1, y)

    while interior < budget:
        L = len(boundary)
        options, weights = [], []
        # overshooting n must stay undoable by the fills the budget still allows
        if L + 1 - n <= min(cfg.slack, budget - interior):
            options += [("grow", i) for i in range(L)]
            weights += [cfg.grow] * L
        if L > 3:
            for i in range(L):
                a, v, b = boundary[i - 1], boundary[i], boundary[(i + 1) % L]
                d = len(nbr[v])
                if d < cfg.min_interior_degree or b in nbr[a] or nbr[a] & nbr[b] != {v}:
                    continue
                options.append(("fill", i))
                weights.append(cfg.fill * math.exp(-cfg.degree_bias * abs(d - cfg.target_degree)))
        if not options:
            break
        move, i = rng.choices(options, weights)[0]
        if move == "grow":
            grow(i)
        else:
            a, v, b = boundary[i - 1], boundary[i], boundary[(i + 1) % L]
            tris.append((a, v, b))
            nbr[a].add(b)
            nbr[b].add(a)
            del boundary[i]
            interior += 1
    if len(boundary) > n:
        return None
    while len(boundary) < n:
        grow(rng.randrange(len(boundary)))
    # relabel: boundary 0..n-1 in order, interior vertices after
    rank = {v: k for k, v in enumerate(boundary)}
    inner = sorted(v for v in nbr if v not in rank)
    rank.update({v: n + k for k, v in enumerate(inner)})
    return [tuple(rank[v] for v in t) for t in tris]


def gen_random_disc(boundary_len, interior_budget, seed, config=DEFAULT_RANDOM):
    """
    Seeded random triangulated disc.

    Parameters
    ----------
    boundary_len : int
        Number of boundary vertices (>= 3); the boundary is ``0..n-1``.
    interior_budget : int
        Upper bound on the number of interior vertices; fewer are used when
        no admissible corner remains.
    seed : int
    config : RandomDiscConfig, optional

    Returns
    -------
    SimplicialDisc
        Deterministic in ``(boundary_len, interior_budget, seed, config)``.

    Raises
    ------
    ValueError
        When the parameters are infeasible or every attempt gets stuck.
    """
    if boundary_len < 3:
        raise ValueError("boundary_len must be >= 3")
    if interior_budget < 0:
        raise ValueError("interior_budget must be >= 0")
    rng = random.Random(f"locus-disc:{boundary_len}:{interior_budget}:{seed}")
    for _ in range(config.max_attempts):
        tris = _attempt(boundary_len, interior_budget, rng, config)
        if tris is not None:
            return SimplicialDisc(tris, tuple(range(boundary_len)),
                                  name=f"random({boundary_len},{interior_budget},{seed})")
    raise ValueError(f"no disc found for boundary {boundary_len}, budget {interior_budget}")


# -- filtering ------------------------------------------------------------------

@dataclass
class FilterStats:
    seen: int = 0
    accepted: int = 0

    @property
    def rate(self):
        return self.accepted / self.seen if self.seen else 0.0


def filter_7_located(discs, stats=None):
    """Yield the discs that are flag and 7-located; counts go into ``stats``."""
    for D in discs:
        if stats is not None:
            stats.seen += 1
        try:
            K = as_flag_complex(D)
        except NonFlagDiscError:
            continue
        if check_m_location(K, 7).located:
            if stats is not None:
                stats.accepted += 1
            yield D
