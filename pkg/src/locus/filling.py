"""
Filling diagrams and exact minimal-area filling search.

A filling diagram for a cycle ``loop`` of a flag complex ``X`` is a simplicial
map from a triangulated disc to ``X`` sending the disc boundary, in order,
onto the loop.  :func:`minimal_filling` finds one with the fewest triangles
among all diagrams of area at most a given budget.

Search
------
The unfilled part of a diagram is a disc region whose boundary maps to a
closed word ``w = (x0, ..., x_{L-1})`` in ``X``.  In any filling of that
region, the edge ``x0 x1`` lies in exactly one triangle, whose third vertex is
either

* a vertex ``x_j`` (``2 <= j <= L-1``) of the region boundary -- removing the
  triangle splits the region into the sub-regions bounded by
  ``(x1, ..., x_j)`` and ``(x_j, ..., x_{L-1}, x0)`` (a word of length 2 is a
  bare edge and needs no filling); or
* an interior vertex mapped to some ``y ~ x0, x1`` -- removing the triangle
  leaves the region bounded by ``(x0, y, x1, ..., x_{L-1})``.

Conversely, gluing back along either move always yields a disc, so these two
moves reach every filling (up to relabelling of interior vertices), including
non-simplicial Delta-discs.  A minimum-area filling never has a doubled edge
(the 2-gon between two parallel edges could be cut out), so the minimum over
this search space equals the minimum over simplicial discs.

The search is a memoised branch and bound over words, canonicalised under
rotation and reflection, with the lower bound ``area(w) >= L - 2`` and the
parity constraint ``area(w) = L - 2 (mod 2)`` that follow from
``area = 2 V_i + V_b - 2``.  The top level deepens the area budget one parity
step at a time.
"""

import logging
from dataclasses import dataclass

from .core import ComplexError, FlagComplex, canonical_cycle, check_cycle
from .disc import SimplicialDisc, Violation

__all__ = [
    "BudgetExhausted",
    "FillingDiagram",
    "FillingSearch",
    "VertexMap",
    "check_lemma_2_4",
    "check_lemma_2_5",
    "check_lemma_3_1",
    "default_budget",
    "minimal_filling",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 250_000


class BudgetExhausted(RuntimeError):
    """No filling diagram was found within the area budget (or node limit).

    This never means the loop is not null-homotopic; the search is only
    complete per budget.
    """

    def __init__(self, budget, nodes, node_limit_hit=False):
        self.budget = budget
        self.nodes = nodes
        self.node_limit_hit = node_limit_hit
        why = "node limit reached" if node_limit_hit else f"no diagram of area <= {budget}"
        super().__init__(f"filling search exhausted: {why} ({nodes} nodes)")


@dataclass(frozen=True)
class VertexMap:
    """Vertex assignment from a disc to a flag complex."""

    source: SimplicialDisc
    target: FlagComplex
    assignment: dict

    def __post_init__(self):
        missing = [v for v in self.source.vertices if v not in self.assignment]
        if missing:
            raise ValueError(f"map is not total: no image for {missing}")
        bad = [x for x in self.assignment.values() if x not in self.target]
        if bad:
            raise ValueError(f"images {bad} are not vertices of the target")

    def __call__(self, v):
        return self.assignment[v]

    def is_simplicial(self):
        f, X = self.assignment, self.target
        for a, b in self.source.edges():
            if f[a] != f[b] and not X.adjacent(f[a], f[b]):
                return False
        return all(X.is_clique(set(f[v] for v in t)) for t in self.source.triangles)

    def is_nondegenerate(self):
        f = self.assignment
        return all(len({f[v] for v in t}) == 3 for t in self.source.triangles)


@dataclass(frozen=True)
class FillingDiagram:
    loop: tuple
    map: VertexMap
    disc: SimplicialDisc

    @property
    def area(self):
        return self.disc.area

    @property
    def target(self):
        return self.map.target

    def image(self, v):
        return self.map.assignment[v]

    def violations(self):
        """Structural invariants: simplicial map, boundary sent isomorphically onto the loop."""
        out = []
        if not self.map.is_simplicial():
            out.append(Violation("not-simplicial"))
        image = tuple(self.image(v) for v in self.disc.boundary)
        if len(image) != len(self.loop) or canonical_cycle(image) != canonical_cycle(self.loop):
            out.append(Violation("boundary-not-onto-loop", image))
        elif len(set(image)) != len(image):
            out.append(Violation("boundary-not-injective", image))
        return out


def default_budget(loop):
    return len(loop) ** 2


class FillingSearch:
    """
    Memoised minimal-area filling search over a fixed flag complex.

    One instance can serve many loops; memo tables are shared between them.
    """

    def __init__(self, X, max_nodes=DEFAULT_MAX_NODES):
        self.X = X
        self._nbrs = {v: X.neighbors(v) for v in X.vertices}
        self._exact = {}
        self._lower = {}
        self.max_nodes = max_nodes
        self.nodes = 0

    def min_area(self, word, budget):
        """Exact minimal filling area of a closed word if it is ``<= budget``, else ``None``."""
        L = len(word)
        if L <= 2:
            return 0
        if budget < L - 2:
            return None
        if L == 3:
            return 1
        if (budget - L) % 2:
            budget -= 1
        key = canonical_cycle(word)
        known = self._exact.get(key)
        if known is not None:
            return known if known <= budget else None
        if self._lower.get(key, 0) > budget:
            return None
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _NodeLimit()

        best = None
        cap = budget
        x0, x1 = word[0], word[1]
        common = self._nbrs[x0] & self._nbrs[x1]
        for j in range(2, L):
            if word[j] not in common:
                continue
            left = word[1:j + 1]
            right = word[j:] + (x0,)
            a1 = self.min_area(left, cap - 1 - max(len(right) - 2, 0))
            if a1 is None:
                continue
            a2 = self.min_area(right, cap - 1 - a1)
            if a2 is None:
                continue
            best = 1 + a1 + a2
            cap = best - 2
        if cap >= L - 1:
            for y in sorted(common):
                a = self.min_area((x0, y) + word[1:], cap - 1)
                if a is not None:
                    best = 1 + a
                    cap = best - 2
        if best is None:
            self._lower[key] = budget + 1
        else:
            self._exact[key] = best
        return best

    def _build(self, word, ids, area, tris, fmap, fresh):
        L = len(word)
        if L <= 2:
            return
        if L == 3:
            tris.append(ids)
            return
        x0, x1 = word[0], word[1]
        common = self._nbrs[x0] & self._nbrs[x1]
        for j in range(2, L):
            if word[j] not in common:
                continue
            left, right = word[1:j + 1], word[j:] + (x0,)
            a1 = self.min_area(left, area - 1)
            if a1 is None:
                continue
            a2 = self.min_area(right, area - 1 - a1)
            if a2 is None or 1 + a1 + a2 != area:
                continue
            tris.append((ids[0], ids[1], ids[j]))
            self._build(left, ids[1:j + 1], a1, tris, fmap, fresh)
            self._build(right, ids[j:] + (ids[0],), a2, tris, fmap, fresh)
            return
        for y in sorted(common):
            nw = (x0, y) + word[1:]
            if self.min_area(nw, area - 1) == area - 1:
                z = next(fresh)
                fmap[z] = y
                tris.append((ids[0], z, ids[1]))
                self._build(nw, (ids[0], z) + ids[1:], area - 1, tris, fmap, fresh)
                return
        raise AssertionError(f"no move reproduces area {area} for word {word}")

    def fill(self, loop, budget=None):
        """Minimal filling diagram of ``loop`` with area at most ``budget``."""
        loop = check_cycle(self.X, loop)
        budget = default_budget(loop) if budget is None else budget
        if budget < 1:
            raise ValueError("area budget must be >= 1")
        n = len(loop)
        found = None
        try:
            for level in range(n - 2, budget + 1, 2):
                found = self.min_area(loop, level)
                if found is not None:
                    break
        except _NodeLimit:
            raise BudgetExhausted(budget, self.nodes, node_limit_hit=True) from None
        if found is None:
            raise BudgetExhausted(budget, self.nodes)
        tris, fmap = [], {i: x for i, x in enumerate(loop)}
        fresh = iter(range(n, n + found + 1))
        self._build(loop, tuple(range(n)), found, tris, fmap, fresh)
        disc = SimplicialDisc(tris, tuple(range(n)), name=f"fill[{self.X.name}]")
        diagram = FillingDiagram(loop, VertexMap(disc, self.X, fmap), disc)
        log.debug("filled loop of length %d with area %d (%d nodes)", n, found, self.nodes)
        return diagram


class _NodeLimit(Exception):
    pass


def minimal_filling(X, loop, area_budget=None, max_nodes=DEFAULT_MAX_NODES):
    """
    Minimum-area filling diagram of a cycle in a flag complex.

    Parameters
    ----------
    X : FlagComplex
    loop : sequence
        A cycle of ``X`` (at least 3 distinct vertices, cyclically adjacent).
    area_budget : int, optional
        Largest area searched; defaults to ``len(loop) ** 2``.
    max_nodes : int, optional
        Cap on search nodes, reported as budget exhaustion.

    Returns
    -------
    FillingDiagram
        Boundary vertex ``i`` of the disc maps to ``loop[i]``; interior
        vertices are numbered from ``len(loop)`` on.

    Raises
    ------
    BudgetExhausted
        If no diagram of area ``<= area_budget`` exists (or the node cap hits).
    ComplexError
        If ``loop`` is not a cycle of ``X``.
    """
    return FillingSearch(X, max_nodes=max_nodes).fill(loop, area_budget)


# -- post-hoc lemma checks -----------------------------------------------------

def check_lemma_2_4(d):
    """Minimal diagrams are simplicial and nondegenerate."""
    out = []
    if not d.map.is_simplicial():
        out.append(Violation("not-simplicial"))
    f = d.map.assignment
    for t in d.disc.triangles:
        if len({f[v] for v in t}) < 3:
            out.append(Violation("degenerate-triangle", t))
    return out


def check_lemma_2_5(d):
    """Adjacent triangles of a minimal diagram have distinct images."""
    f = d.map.assignment
    out = []
    for a, b in d.disc.edges():
        ts = d.disc.triangles_on_edge(a, b)
        if len(ts) == 2:
            i1 = frozenset(f[v] for v in ts[0])
            i2 = frozenset(f[v] for v in ts[1])
            if i1 == i2:
                out.append(Violation("adjacent-same-image", (ts[0], ts[1])))
    return out


def check_lemma_3_1(d, degrees=range(4, 8)):
    """
    Interior vertices of degree 4..7 have pairwise distinct link images.

    This checks injectivity of the map on the link cycle in the disc.  The
    literal statement about the link of the image vertex in ``X`` cannot be
    tested from the diagram alone, since that link need not lie in the image.
    """
    f = d.map.assignment
    out = []
    for v in sorted(d.disc.interior_vertices):
        link = d.disc.link_cycle(v)
        if len(link) in degrees:
            images = [f[x] for x in link]
            if len(set(images)) != len(images):
                out.append(Violation("link-not-injective", (v,) + tuple(images)))
    return out
