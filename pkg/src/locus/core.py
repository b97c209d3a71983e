"""
Flag simplicial complexes stored through their 1-skeleton.

A flag complex is determined by its graph: every clique spans a simplex.
:class:`FlagComplex` therefore only keeps vertices and a symmetric,
irreflexive adjacency relation; simplices are recovered as cliques on demand.

Paths and cycles are plain tuples of vertex ids.  A cycle ``(c0, ..., c_{n-1})``
implicitly closes with the edge ``c_{n-1} c0``.
"""

from collections import deque
from itertools import combinations

__all__ = [
    "DEFAULT_VERTEX_LIMIT",
    "ComplexError",
    "FlagComplex",
    "canonical_cycle",
    "check_cycle",
    "check_path",
    "common_neighbors",
    "distance",
    "is_full_cycle",
    "tighten",
]

DEFAULT_VERTEX_LIMIT = 4096


class ComplexError(ValueError):
    """Raised for malformed complexes, unknown vertices or invalid paths/cycles."""


class FlagComplex:
    """
    Finite flag simplicial complex given by its 1-skeleton.

    Parameters
    ----------
    vertices : iterable of int
        Vertex ids.  Loaders assign dense ids ``0..n-1``; subcomplexes keep the
        ids of the ambient complex.
    edges : iterable of pairs
        Undirected edges.  Self-loops and duplicate edges are rejected.
    labels : dict, optional
        Side table ``id -> label`` used for reporting.  Defaults to ``str(id)``.
    name : str, optional
    vertex_limit : int, optional
        Construction fails above this many vertices.

    Notes
    -----
    Instances are immutable; all methods are pure queries.
    """

    def __init__(self, vertices, edges=(), labels=None, name="complex",
                 vertex_limit=DEFAULT_VERTEX_LIMIT):
        verts = tuple(sorted(set(vertices)))
        if vertex_limit is not None and len(verts) > vertex_limit:
            raise ComplexError(
                f"complex has {len(verts)} vertices, limit is {vertex_limit}")
        adj = {v: set() for v in verts}
        for e in edges:
            u, v = e
            if u == v:
                raise ComplexError(f"self-loop at vertex {u!r}")
            if u not in adj or v not in adj:
                raise ComplexError(f"edge {e!r} uses an unknown vertex")
            if v in adj[u]:
                raise ComplexError(f"duplicate edge {u!r}-{v!r}")
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = verts
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        labels = dict(labels) if labels else {}
        self._labels = {v: labels.get(v, str(v)) for v in verts}
        self.name = name

    # -- basic structure ---------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def labels(self):
        return dict(self._labels)

    def label(self, v):
        return self._labels[v]

    def vertex_by_label(self, label):
        for v, lab in self._labels.items():
            if lab == label:
                return v
        raise ComplexError(f"no vertex labelled {label!r}")

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._adj

    def __iter__(self):
        return iter(self._vertices)

    def __repr__(self):
        return f"FlagComplex({self.name!r}, V={len(self)}, E={self.n_edges})"

    def __eq__(self, other):
        if not isinstance(other, FlagComplex):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self):
        return hash((self._vertices, frozenset(self.edges())))

    @property
    def n_edges(self):
        return sum(len(nb) for nb in self._adj.values()) // 2

    def neighbors(self, v):
        self._require(v)
        return self._adj[v]

    def degree(self, v):
        return len(self.neighbors(v))

    def adjacent(self, u, v):
        """True iff ``u`` and ``v`` span an edge (``u != v``)."""
        return v in self._adj.get(u, ())

    def edges(self):
        return [(u, v) for u in self._vertices for v in sorted(self._adj[u]) if u < v]

    def is_clique(self, vertices):
        vs = list(vertices)
        return all(self.adjacent(a, b) for a, b in combinations(vs, 2))

    def triangles(self):
        """All 2-simplices, as sorted vertex triples."""
        out = []
        for u in self._vertices:
            for v in self._adj[u]:
                if v <= u:
                    continue
                for w in self._adj[u] & self._adj[v]:
                    if w > v:
                        out.append((u, v, w))
        return sorted(out)

    def _require(self, v):
        if v not in self._adj:
            raise ComplexError(f"unknown vertex {v!r}")

    # -- subcomplexes --------------------------------------------------------

    def span(self, vertices):
        """Full subcomplex spanned by ``vertices`` (the induced subgraph)."""
        vs = set(vertices)
        for v in vs:
            self._require(v)
        edges = [(u, w) for u in vs for w in self._adj[u] if w in vs and u < w]
        return FlagComplex(vs, edges, {v: self._labels[v] for v in vs},
                           name=f"{self.name}[span]", vertex_limit=None)

    def link(self, simplex):
        """Link of a simplex: span of the vertices adjacent to all of it."""
        sigma = set(simplex)
        for v in sigma:
            self._require(v)
        if not self.is_clique(sigma):
            raise ComplexError(f"{sorted(sigma)!r} is not a simplex")
        return self.span(common_neighbors(self, sigma))

    def distances_from(self, v):
        """BFS distances from ``v`` to every reachable vertex."""
        self._require(v)
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def ball(self, v, radius):
        if radius < 0:
            raise ComplexError("radius must be nonnegative")
        dist = self.distances_from(v)
        return self.span(x for x, d in dist.items() if d <= radius)

    def sphere(self, v, radius):
        if radius < 0:
            raise ComplexError("radius must be nonnegative")
        dist = self.distances_from(v)
        return self.span(x for x, d in dist.items() if d == radius)

    def components(self):
        seen = set()
        comps = []
        for v in self._vertices:
            if v not in seen:
                comp = set(self.distances_from(v))
                seen |= comp
                comps.append(comp)
        return comps


# -- free functions (work on any object with ``neighbors``/``adjacent``) -----

def common_neighbors(X, vertices):
    """Vertices outside ``vertices`` adjacent to every vertex of it."""
    vs = set(vertices)
    if not vs:
        return set(X.vertices)
    it = iter(vs)
    out = set(X.neighbors(next(it)))
    for v in it:
        out &= X.neighbors(v)
    return out - vs


def distance(X, u, v):
    """Graph distance between ``u`` and ``v``; ``None`` when unreachable."""
    if v not in X:
        raise ComplexError(f"unknown vertex {v!r}")
    return X.distances_from(u).get(v)


def check_path(X, path):
    """Raise :class:`ComplexError` unless consecutive entries are adjacent or equal."""
    path = tuple(path)
    if not path:
        raise ComplexError("empty path")
    for v in path:
        if v not in X:
            raise ComplexError(f"unknown vertex {v!r}")
    for a, b in zip(path, path[1:]):
        if a != b and not X.adjacent(a, b):
            raise ComplexError(f"path step {a!r}->{b!r} is not an edge")
    return path


def check_cycle(X, cycle):
    """Raise unless ``cycle`` has >= 3 distinct vertices, cyclically adjacent."""
    cycle = tuple(cycle)
    if len(cycle) < 3:
        raise ComplexError("a cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise ComplexError(f"cycle {cycle!r} repeats a vertex")
    for v in cycle:
        if v not in X:
            raise ComplexError(f"unknown vertex {v!r}")
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        if not X.adjacent(a, b):
            raise ComplexError(f"cycle step {a!r}->{b!r} is not an edge")
    return cycle


def is_full_cycle(X, cycle):
    """True iff the cycle spans no chord in ``X``."""
    cycle = check_cycle(X, cycle)
    n = len(cycle)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if X.adjacent(cycle[i], cycle[j]):
                return False
    return True


def tighten(X, path):
    """
    Tighten a path to a chordless, repeat-free path with the same endpoints.

    Two rewrites are applied until neither fits: excise ``v_{i+1}..v_j`` when
    ``v_i == v_j``, and drop ``v_{i+1}..v_{j-1}`` when ``v_i ~ v_j`` with
    ``j > i + 1``.  The lowest ``i`` with an applicable rewrite wins; at that
    ``i`` the coincidence rule beats the chord rule, and the largest ``j`` is
    taken.
    """
    p = list(check_path(X, path))
    while True:
        for i in range(len(p)):
            vi = p[i]
            rep = [j for j in range(i + 1, len(p)) if p[j] == vi]
            if rep:
                del p[i + 1:rep[-1] + 1]
                break
            chord = [j for j in range(i + 2, len(p)) if X.adjacent(vi, p[j])]
            if chord:
                del p[i + 1:chord[-1]]
                break
        else:
            return tuple(p)


def canonical_cycle(cycle):
    """Lexicographically least rotation or reflection of a cyclic sequence."""
    c = tuple(cycle)
    n = len(c)
    if n == 0:
        return c
    best = None
    for seq in (c, c[::-1]):
        for i in range(n):
            cand = seq[i:] + seq[:i]
            if best is None or cand < best:
                best = cand
    return best
