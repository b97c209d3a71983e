"""
Companion geodesics and the quadratic isoperimetric bound on 7-located discs.

Given a disc ``D``, a base vertex ``u``, a geodesic ``P`` from ``u`` to ``v``
and a neighbour ``w`` of ``v``, a *companion* is a geodesic ``Q`` from ``u``
to ``w`` such that the closed walk ``P . vw . reverse(Q)`` encloses few
triangles.  On 7-located discs the area is expected to stay below
``const * d(u, v)`` for any ``const >= 3``.

Areas of closed walks follow :meth:`SimplicialDisc.walk_area`: the walk is cut
at repeated vertices into simple cycles and their enclosed areas are added.
Two geodesics from ``u`` can only share a vertex at equal distance from ``u``,
so the pieces are the stretches between consecutive shared vertices.

Two independent routes compute companions:

* :func:`min_area_companion_oracle` enumerates every geodesic ``u -> w``
  through the BFS layer DAG and keeps the least area;
* :func:`companion_path` follows the inductive case analysis (distance
  trichotomy, detour around ``v``, 1-ball centres of short full cycles,
  chains of vertices around ``v`` for long ones), falling back to the
  exhaustive search whenever a structural assumption of that analysis fails
  on the instance.  Every fallback is recorded with its case label.

:func:`fan_decomposition` strings companions along a boundary cycle to cover
the disc with ``n`` cycles, and :func:`verify_quadratic_bound` checks
``area < const * n**2`` directly.
"""

import logging
import random
from collections import Counter
from dataclasses import dataclass, field

from .core import tighten
from .disc import NonFlagDiscError, as_flag_complex, split_closed_walk
from .location import check_m_location

__all__ = [
    "BoundReport",
    "BoundViolation",
    "CompanionResult",
    "DEFAULT_CONST",
    "GEODESIC_CAP",
    "GeodesicCapExceeded",
    "IsoperimetricReport",
    "NotLocatedError",
    "check_companion_bounds",
    "companion_path",
    "companion_walk",
    "fan_decomposition",
    "geodesics",
    "is_seven_located",
    "min_area_companion_oracle",
    "shortest_path",
    "verify_quadratic_bound",
]

log = logging.getLogger(__name__)

DEFAULT_CONST = 3
GEODESIC_CAP = 10 ** 6


class GeodesicCapExceeded(RuntimeError):
    """Geodesic enumeration visited more than the allowed number of paths."""


class NotLocatedError(ValueError):
    """The disc is not 7-located (or not flag), so the bound machinery does not apply."""


class BoundViolation(RuntimeError):
    def __init__(self, result):
        self.result = result
        super().__init__(f"companion area {result.area} exceeds bound {result.bound}")


def _check_const(const):
    if const < 3:
        raise ValueError("const must be a natural number > 2")


def is_seven_located(D):
    """True iff ``D`` is flag and 7-located (every cycle in a disc is null-homotopic)."""
    try:
        K = as_flag_complex(D)
    except NonFlagDiscError:
        return False
    return check_m_location(K, 7).located


def _require_located(D):
    if not is_seven_located(D):
        raise NotLocatedError(f"{D.name} is not a flag 7-located disc")


# -- geodesics ----------------------------------------------------------------

def shortest_path(D, u, v):
    """Lexicographically least geodesic from ``u`` to ``v`` (vertex sequence)."""
    dv = D.distances_from(v)
    if u not in dv:
        raise ValueError(f"{u!r} and {v!r} are not connected")
    path = [u]
    x = u
    while x != v:
        x = min(y for y in D.neighbors(x) if dv.get(y) == dv[x] - 1)
        path.append(x)
    return tuple(path)


def _geodesic_dag(D, u, w, du=None):
    du = du if du is not None else D.distances_from(u)
    dw = D.distances_from(w)
    l = du[w]
    succ = {}
    for x, dx in du.items():
        if dx < l and dw.get(x) == l - dx:
            succ[x] = sorted(y for y in D.neighbors(x)
                             if du.get(y) == dx + 1 and dw.get(y) == l - dx - 1)
    return succ, l


def geodesics(D, u, w, cap=GEODESIC_CAP):
    """All geodesics from ``u`` to ``w`` in lexicographic order (raises past ``cap``)."""
    succ, l = _geodesic_dag(D, u, w)
    out = []

    def walk(path):
        x = path[-1]
        if len(path) == l + 1:
            out.append(tuple(path))
            if len(out) > cap:
                raise GeodesicCapExceeded(f"more than {cap} geodesics {u}->{w}")
            return
        for y in succ[x]:
            path.append(y)
            walk(path)
            path.pop()

    walk([u])
    return out


def companion_walk(P, Q):
    """Closed walk ``P . (v, w) . reverse(Q)`` as a vertex sequence."""
    return tuple(P) + tuple(reversed(Q))[:-1]


def _check_triple(D, P, w):
    P = tuple(P)
    if not P:
        raise ValueError("empty path")
    for a, b in zip(P, P[1:]):
        if not D.adjacent(a, b):
            raise ValueError(f"{a}-{b} is not an edge")
    if not D.adjacent(P[-1], w):
        raise ValueError(f"w={w!r} is not adjacent to v={P[-1]!r}")
    du = D.distances_from(P[0])
    if du[P[-1]] != len(P) - 1:
        raise ValueError("P is not a shortest path")
    return P, du


def _min_area_search(D, P, w, du=None, cap=GEODESIC_CAP):
    """Least walk area over all geodesics ``u -> w``; returns ``(area, Q, n_paths)``."""
    u, v = P[0], P[-1]
    k = len(P) - 1
    succ, l = _geodesic_dag(D, u, w, du)
    px = [0]
    for a, b in zip(P, P[1:]):
        px.append(px[-1] ^ D.edge_mask(a, b))
    mvw = D.edge_mask(v, w)
    best = [None, None]
    count = [0]
    path = [u]

    def dfs(i, s, qx, area):
        if best[0] is not None and area >= best[0]:
            return
        x = path[-1]
        if i == l:
            count[0] += 1
            if count[0] > cap:
                raise GeodesicCapExceeded(f"more than {cap} geodesics {u}->{w}")
            total = area + bin(px[k] ^ px[s] ^ mvw ^ qx).count("1")
            if best[0] is None or total < best[0]:
                best[0], best[1] = total, tuple(path)
            return
        for y in succ[x]:
            j = i + 1
            qy = qx ^ D.edge_mask(x, y)
            path.append(y)
            if j <= k and P[j] == y:
                dfs(j, j, 0, area + bin(px[j] ^ px[s] ^ qy).count("1"))
            else:
                dfs(j, s, qy, area)
            path.pop()

    dfs(0, 0, 0, 0)
    return best[0], best[1], count[0]


def min_area_companion_oracle(D, u, P, w, cap=GEODESIC_CAP):
    """
    Minimum area of ``P . vw . reverse(Q)`` over all geodesics ``Q`` from ``u`` to ``w``.

    Raises
    ------
    GeodesicCapExceeded
        When more than ``cap`` geodesics would need to be inspected.
    """
    P, du = _check_triple(D, P, w)
    if P[0] != u:
        raise ValueError("P must start at u")
    area, _, _ = _min_area_search(D, P, w, du, cap)
    return area


# -- proof-following construction ---------------------------------------------

@dataclass
class CompanionResult:
    path: tuple
    walk: tuple
    cycles: list
    area: int
    k: int
    bound: int
    cases: list = field(default_factory=list)
    fallbacks: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)

    @property
    def passed(self):
        return self.area <= self.bound


class _Structural(Exception):
    def __init__(self, label, reason):
        self.label = label
        self.reason = reason
        super().__init__(f"{label}: {reason}")


class _CompanionBuilder:
    def __init__(self, D, u, const, cap, detour_seed=None):
        self.D = D
        self.rng = None if detour_seed is None else random.Random(detour_seed)
        self.u = u
        self.const = const
        self.cap = cap
        self.du = D.distances_from(u)
        self.memo = {}
        self.fallbacks = []
        self.anomalies = []

    # helpers

    def _detour(self, a, b, avoid):
        """Lexicographically least shortest ``a -> b`` path in ``D - avoid``."""
        D = self.D
        if self.rng is not None:
            return self._random_detour(a, b, avoid)
        dist = {b: 0}
        frontier = [b]
        while frontier and a not in dist:
            nxt = []
            for x in frontier:
                for y in D.neighbors(x):
                    if y != avoid and y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if a not in dist:
            return None
        path = [a]
        while path[-1] != b:
            x = path[-1]
            path.append(min(y for y in D.neighbors(x)
                            if y != avoid and dist.get(y) == dist[x] - 1))
        return tuple(path)

    def _random_detour(self, a, b, avoid):
        # random walk in D - avoid, then tightened there
        D = self.D
        rest = D.skeleton().span(x for x in D.vertices if x != avoid)
        if b not in rest.distances_from(a):
            return None
        walk = [a]
        while walk[-1] != b:
            walk.append(self.rng.choice(sorted(rest.neighbors(walk[-1]))))
        return tighten(rest, walk)

    def _full(self, cycle):
        D = self.D
        n = len(cycle)
        for i in range(n):
            for j in range(i + 2, n):
                if not (i == 0 and j == n - 1) and D.adjacent(cycle[i], cycle[j]):
                    return False
        return True

    def _center(self, cycle, label):
        D = self.D
        common = set(D.neighbors(cycle[0]))
        for x in cycle[1:]:
            common &= D.neighbors(x)
        common -= set(cycle)
        if not common:
            raise _Structural(label, f"full cycle {cycle} has no 1-ball centre")
        return min(common)

    def _arc(self, v, a, b, cycle, label):
        """Neighbours of ``v`` strictly between ``a`` and ``b`` on the side inside ``cycle``."""
        D = self.D
        rot = D.rotation(v)
        if a not in rot or b not in rot:
            raise _Structural(label, "arc endpoints not in the link")
        inside = D.chain(cycle)
        ia, ib = rot.index(a), rot.index(b)
        cyclic = not D.is_boundary(v)
        candidates = []
        m = len(rot)
        for step in (1, -1):
            arc = []
            j = ia
            while True:
                j = j + step
                if cyclic:
                    j %= m
                elif not 0 <= j < m:
                    arc = None
                    break
                if j == ib:
                    break
                arc.append(rot[j])
            if arc is None:
                continue
            first = arc[0] if arc else b
            tri = tuple(sorted((v, a, first)))
            idx = D._tri_index.get(tri)
            if idx is not None and inside >> idx & 1:
                candidates.append(arc)
        if len(candidates) != 1 or not candidates[0]:
            raise _Structural(label, "no unique vertex chain around v inside the cycle")
        arc = candidates[0]
        inner = {x for t in D.chain_triangles(inside) for x in t} - set(cycle)
        both = [z for z in inner if D.adjacent(z, v) and D.adjacent(z, b)]
        if len(both) != 1:
            self.anomalies.append((label, f"{len(both)} vertices adjacent to both "
                                          f"{v} and {b} inside {cycle}"))
        return arc

    # main recursion

    def companion(self, P, w):
        key = (P, w)
        if key in self.memo:
            return self.memo[key]
        k = len(P) - 1
        try:
            Q, label = self._construct(P, w)
        except _Structural as exc:
            self.fallbacks.append((exc.label, exc.reason, k))
            log.info("companion fallback at case %s: %s", exc.label, exc.reason)
            Q, label = self._fallback(P, w), exc.label + ":fallback"
        else:
            area = self.D.walk_area(companion_walk(P, Q))
            if area > self.const * k:
                self.fallbacks.append((label, f"construction area {area} > {self.const * k}", k))
                log.info("companion fallback at case %s: area %d over bound", label, area)
                Q, label = self._fallback(P, w), label + ":fallback"
        self.memo[key] = (Q, label)
        return Q, label

    def _fallback(self, P, w):
        _, Q, _ = _min_area_search(self.D, P, w, self.du, self.cap)
        return Q

    def _step(self, Z, y):
        return self.companion(Z, y)[0]

    def _construct(self, P, w):
        D, du = self.D, self.du
        v = P[-1]
        k = len(P) - 1
        l = du[w]
        if l == k + 1:
            return P + (w,), "1"
        vp, Pp = P[-2], P[:-1]
        if l == k:
            if D.adjacent(w, vp):
                return Pp + (w,), "2"
            fam = "2"
        else:
            if w == vp:
                return Pp, "3"
            if D.adjacent(w, vp):
                return self._step(Pp, w), "3"
            fam = "3"

        W = self._detour(vp, w, v)
        if W is None:
            raise _Structural(fam, "no detour around v")
        ws = W[1:-1]
        n = len(ws)
        i = next(j for j in range(1, n + 1) if D.adjacent(ws[j - 1], w))
        s = next((j for j in range(1, i + 1) if D.adjacent(ws[j - 1], v)), None)

        def wv(j):
            return ws[j - 1]

        chain = []
        if s is None:
            delta = (v, vp) + ws[:i] + (w,)
            alpha_full = i == n and self._full((v,) + W)
            label = f"{fam}.1" if alpha_full else f"{fam}.2.3.a"
            if not self._full(delta):
                raise _Structural(label, f"cycle {delta} is not full")
            if len(delta) <= 7:
                label += "(a)"
                z = self._center(delta, label)
                chain = [z, wv(i), w] if fam == "2" else [z, w]
            else:
                label += "(b)"
                chain = self._arc(v, vp, w, delta, label) + [w]
        else:
            label = f"{fam}.2.1" if s == 1 else f"{fam}.2.2"
            if s == 1:
                chain = [wv(1)]
            else:
                delta = (v, vp) + ws[:s]
                if not self._full(delta):
                    raise _Structural(label, f"cycle {delta} is not full")
                if len(delta) <= 7:
                    label += "(a)"
                    chain = [self._center(delta, label), wv(s)]
                else:
                    label += "(b)"
                    chain = self._arc(v, vp, wv(s), delta, label) + [wv(s)]
            cur = s
            if cur == i:
                label += f"|{fam}.2.3.b"
                chain.append(w)
            while cur != i:
                t = next((j for j in range(cur + 1, i + 1) if D.adjacent(wv(j), v)), None)
                if t is None:
                    beta = (v,) + ws[cur - 1:i] + (w,)
                    sub = f"{fam}.2.3.b.1"
                    if not self._full(beta):
                        raise _Structural(sub, f"cycle {beta} is not full")
                    if len(beta) <= 7:
                        sub += "(a)"
                        z = self._center(beta, sub)
                        chain += [z, wv(i), w] if fam == "2" else [z, w]
                    else:
                        sub += "(b)"
                        chain += self._arc(v, wv(cur), w, beta, sub) + [w]
                    label += "|" + sub
                    break
                sub = f"{fam}.2.3.b.2"
                piece = (v,) + ws[cur - 1:t]
                if len(piece) == 3:
                    chain.append(wv(t))
                elif len(piece) <= 7:
                    chain += [self._center(piece, sub), wv(t)]
                else:
                    chain += self._arc(v, wv(cur), wv(t), piece, sub) + [wv(t)]
                label += "|" + sub
                cur = t
                if cur == i:
                    chain.append(w)

        Z = Pp
        prev = vp
        for idx, y in enumerate(chain):
            if not D.adjacent(prev, y):
                raise _Structural(label, f"chain step {prev}->{y} is not an edge")
            if idx < len(chain) - 1 and du[y] != k - 1:
                raise _Structural(label, f"chain vertex {y} at distance {du[y]}, expected {k - 1}")
            Z = self._step(Z, y)
            prev = y
        return Z, label


def companion_path(D, u, P, w, const=DEFAULT_CONST, check_located=True, cap=GEODESIC_CAP,
                   strict=True, detour_seed=None):
    """
    Geodesic ``Q`` from ``u`` to ``w`` whose companion cycle has area ``<= const * d(u, v)``.

    Parameters
    ----------
    D : SimplicialDisc
        Should be flag and 7-located (checked unless ``check_located=False``).
    u : vertex
    P : sequence
        A geodesic from ``u`` to ``v``.
    w : vertex
        A neighbour of ``v = P[-1]``.
    const : int
        Any natural number > 2.
    strict : bool
        Raise :class:`BoundViolation` when the final area exceeds the bound.
    detour_seed : int, optional
        By default the detour around ``v`` is the least shortest path in
        ``D - v``, which in a flag disc runs along the link of ``v``.  With a
        seed, a random walk in ``D - v`` is tightened instead, which reaches
        the deeper cases of the analysis.

    Returns
    -------
    CompanionResult
    """
    _check_const(const)
    P, du = _check_triple(D, P, w)
    if P[0] != u:
        raise ValueError("P must start at u")
    if check_located:
        _require_located(D)
    builder = _CompanionBuilder(D, u, const, cap, detour_seed)
    return _finish(builder, P, w, strict)


def _finish(builder, P, w, strict):
    D = builder.D
    Q, label = builder.companion(P, w)
    walk = companion_walk(P, Q)
    k = len(P) - 1
    result = CompanionResult(
        path=Q, walk=walk, cycles=split_closed_walk(walk), area=D.walk_area(walk),
        k=k, bound=builder.const * k, cases=[label],
        fallbacks=list(builder.fallbacks), anomalies=list(builder.anomalies))
    if strict and not result.passed:
        raise BoundViolation(result)
    return result


# -- reports ----------------------------------------------------------------------

@dataclass
class BoundReport:
    """
    Oracle companion areas over many triples, optionally with the proof route.

    Each instance is ``(u, v, w, k, area, bound, passed)`` with ``area`` the
    oracle minimum.  With the proof route, ``proof_violations`` counts
    constructed areas above the bound, ``below_oracle`` counts constructed
    areas below the oracle minimum (impossible unless one route is wrong) and
    ``fallbacks`` maps case labels to fallback counts.
    """

    const: int
    instances: list = field(default_factory=list)
    capped: int = 0
    proof_checked: int = 0
    proof_violations: int = 0
    below_oracle: int = 0
    above_oracle: int = 0
    fallbacks: Counter = field(default_factory=Counter)
    anomalies: int = 0

    @property
    def violations(self):
        return [r for r in self.instances if not r[6]]

    @property
    def passed(self):
        return not self.violations and not self.proof_violations and not self.below_oracle

    @property
    def max_ratio(self):
        ratios = [r[4] / r[3] for r in self.instances if r[3] > 0]
        return max(ratios, default=0.0)

    def merge(self, other):
        self.instances += other.instances
        self.capped += other.capped
        self.proof_checked += other.proof_checked
        self.proof_violations += other.proof_violations
        self.below_oracle += other.below_oracle
        self.above_oracle += other.above_oracle
        self.fallbacks.update(other.fallbacks)
        self.anomalies += other.anomalies

    def lines(self):
        out = [
            f"const: {self.const}",
            f"instances: {len(self.instances)}",
            f"violations: {len(self.violations)}",
            f"capped: {self.capped}",
            f"max_ratio: {self.max_ratio:.4f}",
        ]
        if self.proof_checked:
            out += [
                f"proof_checked: {self.proof_checked}",
                f"proof_violations: {self.proof_violations}",
                f"proof_below_oracle: {self.below_oracle}",
                f"proof_above_oracle: {self.above_oracle}",
                f"proof_fallbacks: {sum(self.fallbacks.values())}",
            ]
        return out


def check_companion_bounds(D, const=DEFAULT_CONST, max_k=8, cap=GEODESIC_CAP, proof_route=False,
                           detour_seed=None):
    """
    Run the geodesic oracle on every triple ``(u, v, w ~ v)`` with ``d(u, v) <= max_k``.

    ``P`` is the lexicographically least geodesic from ``u`` to ``v``.  Capped
    triples are counted and left out.  With ``proof_route`` the
    proof-following construction runs on the same triples (one memo per
    ``u``) and is compared against the oracle.
    """
    _check_const(const)
    report = BoundReport(const)
    for u in D.vertices:
        du = D.distances_from(u)
        builder = _CompanionBuilder(D, u, const, cap, detour_seed) if proof_route else None
        for v in D.vertices:
            k = du[v]
            if k > max_k:
                continue
            P = shortest_path(D, u, v)
            for w in sorted(D.neighbors(v)):
                try:
                    area, _, _ = _min_area_search(D, P, w, du, cap)
                except GeodesicCapExceeded:
                    report.capped += 1
                    continue
                bound = const * k
                report.instances.append((u, v, w, k, area, bound, area <= bound))
                if builder is not None:
                    Q, _ = builder.companion(P, w)
                    got = D.walk_area(companion_walk(P, Q))
                    report.proof_checked += 1
                    report.proof_violations += got > bound
                    report.below_oracle += got < area
                    report.above_oracle += got > area
        if builder is not None:
            report.fallbacks.update(label for label, _, _ in builder.fallbacks)
            report.anomalies += len(builder.anomalies)
    return report


@dataclass
class IsoperimetricReport:
    n: int
    area: int
    const: int
    method: str = "direct"
    cycle_areas: list = field(default_factory=list)
    cycle_distances: list = field(default_factory=list)
    coverage_ok: bool = True
    fallbacks: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    cases: list = field(default_factory=list)

    @property
    def bound(self):
        return self.const * self.n ** 2

    @property
    def cycle_bounds(self):
        return [self.const * d for d in self.cycle_distances]

    @property
    def cycles_ok(self):
        half = self.const * (self.n // 2)
        return all(a <= b and a <= half
                   for a, b in zip(self.cycle_areas, self.cycle_bounds))

    @property
    def passed(self):
        return self.area < self.bound and self.cycles_ok and self.coverage_ok

    def lines(self):
        out = [
            f"method: {self.method}",
            f"n: {self.n}",
            f"area: {self.area}",
            f"const: {self.const}",
            f"bound: {self.bound}",
            f"pass: {'yes' if self.passed else 'no'}",
        ]
        if self.method == "fan":
            out += [
                "cycle_areas: " + " ".join(map(str, self.cycle_areas)),
                "cycle_bounds: " + " ".join(map(str, self.cycle_bounds)),
                f"cycles_ok: {'yes' if self.cycles_ok else 'no'}",
                f"coverage_ok: {'yes' if self.coverage_ok else 'no'}",
                f"fallbacks: {len(self.fallbacks)}",
            ]
        return out


def verify_quadratic_bound(D0, const=DEFAULT_CONST):
    """Direct check ``area(D0) < const * n**2`` with ``n`` the boundary length."""
    _check_const(const)
    return IsoperimetricReport(n=len(D0.boundary), area=D0.area, const=const)


def fan_decomposition(D0, const=DEFAULT_CONST, check_located=True, cap=GEODESIC_CAP):
    """
    Cover ``D0`` by the cycles ``C_i = P_i . (v_i, v_{i+1}) . reverse(P_{i+1})``.

    ``P_0`` is the one-vertex path at ``v_0 = boundary[0]`` and ``P_{i+1}`` is
    the companion of ``P_i`` towards ``v_{i+1}`` (indices mod ``n``).  Records
    every ``Area C_i`` against ``const * d(v_0, v_i)`` and audits that the
    cycles cover every triangle.
    """
    _check_const(const)
    if check_located:
        _require_located(D0)
    alpha = D0.boundary
    n = len(alpha)
    u = alpha[0]
    builder = _CompanionBuilder(D0, u, const, cap)
    report = IsoperimetricReport(n=n, area=D0.area, const=const, method="fan")
    covered = 0
    P = (u,)
    for i in range(n):
        w = alpha[(i + 1) % n]
        res = _finish(builder, P, w, strict=False)
        report.cycle_areas.append(res.area)
        report.cycle_distances.append(res.k)
        report.cases.append(res.cases[0])
        for c in res.cycles:
            covered |= D0.chain(c)
        P = res.path
    report.fallbacks = list(builder.fallbacks)
    report.anomalies = list(builder.anomalies)
    report.coverage_ok = covered == (1 << D0.area) - 1
    return report
