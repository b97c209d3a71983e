"""
Triangulated 2-discs: validation, rotation systems and area accounting.

A :class:`SimplicialDisc` is a finite set of triangles together with a
distinguished boundary cycle.  Construction validates the combinatorics
(manifold links, boundary, Euler characteristic, connectivity) and derives a
rotation system, i.e. the cyclic (interior vertex) or linear (boundary vertex)
order of the neighbours of every vertex.

Areas of cycles are computed on the dual graph.  For a closed edge-walk ``z``
the unique mod-2 2-chain with boundary ``z`` is found either by flooding the
dual graph from the outer face (:func:`enclosed_area`) or by XOR-ing
precomputed per-edge masks built from a dual spanning tree
(:meth:`SimplicialDisc.chain`).  Both agree on simple cycles, where the chain
is exactly the set of enclosed triangles.
"""

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

from .core import ComplexError, FlagComplex, common_neighbors

__all__ = [
    "DiscError",
    "InvalidDiscError",
    "NonFlagDiscError",
    "SimplicialDisc",
    "Violation",
    "as_flag_complex",
    "enclosed_area",
    "non_flag_witness",
    "split_closed_walk",
    "validate_disc",
]


class DiscError(ValueError):
    """Raised when an operation receives an invalid vertex, cycle or walk."""


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.condition}: {self.witness}"


class InvalidDiscError(DiscError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"invalid disc ({len(self.violations)} violations): {lines}")


class NonFlagDiscError(DiscError):
    """The 1-skeleton has a 3-clique that is not a triangle of the disc."""

    def __init__(self, clique):
        self.clique = tuple(clique)
        super().__init__(f"disc is not flag: 3-clique {self.clique} is not a triangle")


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def _norm_triangles(triangles):
    return [tuple(sorted(t)) for t in triangles]


def _link_graph(v, tris_at_v):
    g = defaultdict(set)
    for t in tris_at_v:
        a, b = [x for x in t if x != v]
        g[a].add(b)
        g[b].add(a)
    return g


def _connected(graph, nodes):
    nodes = set(nodes)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in graph[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


def validate_disc(triangles, boundary):
    """
    Check that ``triangles`` with boundary cycle ``boundary`` form a simplicial 2-disc.

    Returns
    -------
    list of Violation
        Empty iff the input is a valid disc.
    """
    out = []
    raw = [tuple(t) for t in triangles]
    boundary = tuple(boundary)
    if not raw:
        return [Violation("empty", ())]
    for t in raw:
        if len(t) != 3 or len(set(t)) != 3:
            out.append(Violation("bad-triangle", t))
    if out:
        return out
    tris = _norm_triangles(raw)
    seen = set()
    for t in tris:
        if t in seen:
            out.append(Violation("duplicate-triangle", t))
        seen.add(t)
    tris = sorted(seen)

    verts = sorted({v for t in tris for v in t})
    edge_tris = defaultdict(list)
    for t in tris:
        for a, b in combinations(t, 2):
            edge_tris[(a, b)].append(t)

    if len(boundary) < 3:
        out.append(Violation("boundary-short", boundary))
    if len(set(boundary)) != len(boundary):
        out.append(Violation("boundary-not-simple", boundary))
    vset = set(verts)
    for v in boundary:
        if v not in vset:
            out.append(Violation("boundary-vertex-unknown", (v,)))
    bedges = set()
    if len(boundary) >= 3:
        for i, a in enumerate(boundary):
            b = boundary[(i + 1) % len(boundary)]
            e = _edge(a, b)
            bedges.add(e)
            if e not in edge_tris:
                out.append(Violation("boundary-edge-missing", e))

    for e, ts in sorted(edge_tris.items()):
        if len(ts) > 2:
            out.append(Violation("edge-multiplicity", e + (len(ts),)))
        elif len(ts) == 1 and e not in bedges:
            out.append(Violation("free-edge-off-boundary", e))
        elif len(ts) == 2 and e in bedges:
            out.append(Violation("boundary-edge-interior", e))

    bset = set(boundary)
    tris_at = defaultdict(list)
    for t in tris:
        for v in t:
            tris_at[v].append(t)
    for v in verts:
        g = _link_graph(v, tris_at[v])
        degs = sorted(len(g[x]) for x in g)
        connected = _connected(g, g.keys())
        if v in bset:
            ok = connected and (degs == [1, 1] or
                                (degs[:2] == [1, 1] and all(d == 2 for d in degs[2:])))
            if not ok:
                out.append(Violation("boundary-link", (v,)))
        else:
            if not (connected and len(degs) >= 3 and all(d == 2 for d in degs)):
                out.append(Violation("interior-link", (v,)))

    # connectivity of the 1-skeleton
    adj = defaultdict(set)
    for a, b in edge_tris:
        adj[a].add(b)
        adj[b].add(a)
    if not _connected(adj, verts):
        out.append(Violation("disconnected", ()))

    chi = len(verts) - len(edge_tris) + len(tris)
    if chi != 1:
        out.append(Violation("euler", (len(verts), len(edge_tris), len(tris), chi)))
    return out


class SimplicialDisc:
    """
    A validated triangulated 2-disc.

    Parameters
    ----------
    triangles : iterable of 3-tuples
    boundary : sequence
        The boundary cycle in cyclic order.
    labels : dict, optional
        Vertex labels for reporting.
    name : str, optional

    Raises
    ------
    InvalidDiscError
        If the data does not describe a simplicial 2-disc.
    """

    def __init__(self, triangles, boundary, labels=None, name="disc"):
        triangles = [tuple(t) for t in triangles]
        boundary = tuple(boundary)
        violations = validate_disc(triangles, boundary)
        if violations:
            raise InvalidDiscError(violations)
        self.name = name
        self._triangles = tuple(sorted(_norm_triangles(triangles)))
        self._boundary = boundary
        self._vertices = tuple(sorted({v for t in self._triangles for v in t}))
        labels = dict(labels) if labels else {}
        self._labels = {v: labels.get(v, str(v)) for v in self._vertices}

        adj = defaultdict(set)
        edge_tris = defaultdict(list)
        tris_at = defaultdict(list)
        for i, t in enumerate(self._triangles):
            for a, b in combinations(t, 2):
                adj[a].add(b)
                adj[b].add(a)
                edge_tris[(a, b)].append(i)
            for v in t:
                tris_at[v].append(t)
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._edge_tris = dict(edge_tris)
        self._bset = frozenset(boundary)
        self._bedges = frozenset(_edge(boundary[i], boundary[(i + 1) % len(boundary)])
                                 for i in range(len(boundary)))
        self._rotation = {v: self._order_link(v, tris_at[v]) for v in self._vertices}
        self._tri_index = {t: i for i, t in enumerate(self._triangles)}
        self._masks = None

    def _order_link(self, v, tris_at_v):
        g = _link_graph(v, tris_at_v)
        if v in self._bset:
            i = self._boundary.index(v)
            start = self._boundary[i - 1]
        else:
            start = min(g)
        order = [start]
        prev = None
        cur = start
        while True:
            nxt = sorted(x for x in g[cur] if x != prev)
            if not nxt or nxt[0] == start:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        return tuple(order)

    # -- structure ------------------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def triangles(self):
        return self._triangles

    @property
    def boundary(self):
        return self._boundary

    @property
    def labels(self):
        return dict(self._labels)

    def label(self, v):
        return self._labels[v]

    def edges(self):
        return sorted(self._edge_tris)

    @property
    def n_edges(self):
        return len(self._edge_tris)

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._adj

    def __repr__(self):
        return (f"SimplicialDisc({self.name!r}, V={len(self)}, T={self.area}, "
                f"|boundary|={len(self._boundary)})")

    def __eq__(self, other):
        if not isinstance(other, SimplicialDisc):
            return NotImplemented
        return self._triangles == other._triangles and self._boundary == other._boundary

    def __hash__(self):
        return hash((self._triangles, self._boundary))

    def neighbors(self, v):
        if v not in self._adj:
            raise DiscError(f"unknown vertex {v!r}")
        return self._adj[v]

    def adjacent(self, u, v):
        return v in self._adj.get(u, ())

    def degree(self, v):
        return len(self.neighbors(v))

    def distances_from(self, v):
        if v not in self._adj:
            raise DiscError(f"unknown vertex {v!r}")
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def is_boundary(self, v):
        return v in self._bset

    def is_boundary_edge(self, a, b):
        return _edge(a, b) in self._bedges

    @property
    def interior_vertices(self):
        return frozenset(v for v in self._vertices if v not in self._bset)

    @property
    def boundary_vertices(self):
        return self._bset

    def triangles_on_edge(self, a, b):
        return [self._triangles[i] for i in self._edge_tris.get(_edge(a, b), ())]

    def rotation(self, v):
        """Neighbours of ``v`` in rotational order (a path for boundary vertices)."""
        if v not in self._rotation:
            raise DiscError(f"unknown vertex {v!r}")
        return self._rotation[v]

    def link_cycle(self, v):
        """The link of an interior vertex, as a cycle in rotational order."""
        if v not in self._adj:
            raise DiscError(f"unknown vertex {v!r}")
        if v in self._bset:
            raise DiscError(f"vertex {v!r} is on the boundary")
        return self._rotation[v]

    # -- area accounting ----------------------------------------------------------

    @property
    def area(self):
        return len(self._triangles)

    def pick_area(self):
        """``2 V_i + V_b - 2``; equals :attr:`area` on every valid disc."""
        return 2 * len(self.interior_vertices) + len(self._bset) - 2

    def euler_characteristic(self):
        return len(self._vertices) - self.n_edges + len(self._triangles)

    def skeleton(self):
        """The 1-skeleton as a :class:`FlagComplex` (flag completion implied)."""
        return FlagComplex(self._vertices, self.edges(), self._labels,
                           name=self.name, vertex_limit=None)

    def _edge_masks(self):
        # dual spanning tree rooted at the outer face; the mask of a primal
        # edge is the triangle set below its dual tree edge (0 off the tree)
        if self._masks is not None:
            return self._masks
        outer = -1
        nbrs = defaultdict(list)
        for e, ts in self._edge_tris.items():
            if len(ts) == 2:
                nbrs[ts[0]].append((ts[1], e))
                nbrs[ts[1]].append((ts[0], e))
            else:
                nbrs[outer].append((ts[0], e))
        parent = {outer: None}
        order = []
        queue = deque([outer])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y, e in sorted(nbrs[x]):
                if y not in parent:
                    parent[y] = (x, e)
                    queue.append(y)
        below = {}
        masks = {e: 0 for e in self._edge_tris}
        for x in reversed(order):
            if x == outer:
                continue
            below[x] = below.get(x, 0) | (1 << x)
            px, e = parent[x]
            masks[e] = below[x]
            if px != outer:
                below[px] = below.get(px, 0) | below[x]
        self._masks = masks
        return masks

    def edge_mask(self, a, b):
        e = _edge(a, b)
        masks = self._edge_masks()
        if e not in masks:
            raise DiscError(f"{a!r}-{b!r} is not an edge of the disc")
        return masks[e]

    def chain(self, walk):
        """
        Mod-2 2-chain (bitmask over triangle indices) bounded by a closed walk.

        Consecutive repeated vertices are ignored; the walk closes from its last
        vertex back to its first.
        """
        w = [x for i, x in enumerate(walk) if i == 0 or x != walk[i - 1]]
        if len(w) > 1 and w[-1] == w[0]:
            w.pop()
        acc = 0
        for i in range(len(w)):
            a, b = w[i], w[(i + 1) % len(w)]
            if a != b:
                acc ^= self.edge_mask(a, b)
        return acc

    def chain_triangles(self, mask):
        return [t for i, t in enumerate(self._triangles) if mask >> i & 1]

    def walk_area(self, walk):
        """
        Area enclosed by a closed walk.

        The walk is split at repeated vertices into simple cycles (see
        :func:`split_closed_walk`); the result is the sum of their enclosed
        areas.  Back-and-forth pieces contribute nothing.
        """
        return sum(bin(self.chain(c)).count("1") for c in split_closed_walk(walk))


def split_closed_walk(walk):
    """
    Split a closed walk into simple cycles (length >= 3) at repeated vertices.

    Always cuts at the first vertex whose repetition is detected, so the
    decomposition is deterministic.  Degenerate pieces of length < 3 are dropped.
    """
    w = [x for i, x in enumerate(walk) if i == 0 or x != walk[i - 1]]
    if len(w) > 1 and w[-1] == w[0]:
        w.pop()
    out = []
    stack = [w]
    while stack:
        cur = stack.pop()
        last = {}
        for j, x in enumerate(cur):
            if x in last:
                i = last[x]
                stack.append(cur[:i] + cur[j:])
                stack.append(cur[i:j])
                break
            last[x] = j
        else:
            if len(cur) >= 3:
                out.append(tuple(cur))
    return out


def _check_simple_cycle(D, cycle):
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise DiscError(f"{cycle!r} is not a simple cycle")
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        if not D.adjacent(a, b):
            raise DiscError(f"{a!r}-{b!r} is not an edge of the disc")
    return cycle


def enclosed_area(D, cycle):
    """
    Number of triangles of ``D`` inside a simple cycle of its 1-skeleton.

    Computed by flooding the dual graph from the outer face without crossing
    the cycle; the triangles left unreached are the inside.
    """
    cycle = _check_simple_cycle(D, cycle)
    cedges = {_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    if cedges == set(D._bedges):
        return D.area
    tris = D.triangles
    seeds = [D._edge_tris[e][0] for e in D._bedges if e not in cedges]
    reached = set(seeds)
    queue = deque(seeds)
    while queue:
        i = queue.popleft()
        for a, b in combinations(tris[i], 2):
            e = (a, b)
            if e in cedges:
                continue
            for j in D._edge_tris[e]:
                if j not in reached:
                    reached.add(j)
                    queue.append(j)
    return len(tris) - len(reached)


def non_flag_witness(D):
    """A 3-clique of the 1-skeleton that is not a triangle of ``D``, or ``None``."""
    tris = set(D.triangles)
    for u in D.vertices:
        for v in D.neighbors(u):
            if v <= u:
                continue
            for w in sorted(common_neighbors(D, (u, v))):
                if w > v and (u, v, w) not in tris:
                    return (u, v, w)
    return None


def as_flag_complex(D):
    """
    The 1-skeleton of ``D`` as a flag complex.

    Raises
    ------
    NonFlagDiscError
        If some 3-clique of the 1-skeleton is not a triangle of ``D``; the
        clique is attached to the exception.
    """
    witness = non_flag_witness(D)
    if witness is not None:
        raise NonFlagDiscError(witness)
    return D.skeleton()
