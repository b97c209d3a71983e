"""
m-location checks.

A flag complex is m-located when every full, null-homotopic cycle of length at
most ``m`` lies in the 1-ball of some vertex.  Full cycles of length 3 are
triangles and always lie in the 1-ball of any of their vertices, so only
lengths ``4..m`` are enumerated.

For a full cycle ``c`` of length >= 4, ``c`` lies in a 1-ball ``B_1(w)`` iff
``w`` is adjacent to every vertex of ``c``: ``w`` cannot itself lie on ``c``,
because the cycle vertices at cycle-distance >= 2 from ``w`` would then be
joined to ``w`` by chords.  :func:`is_in_one_ball` is therefore a
common-neighbour test.

Null-homotopy is undecidable by a bounded search, so two modes exist:
``"assume-simply-connected"`` (every cycle counts, which is exact for discs)
and ``"certify"`` (a cycle counts only once a filling diagram is found within
the area budget; the rest are reported as undecided).
"""

import logging
from dataclasses import dataclass, field

from .core import ComplexError, canonical_cycle, check_cycle, common_neighbors, is_full_cycle
from .disc import NonFlagDiscError, as_flag_complex
from .filling import BudgetExhausted, FillingSearch, default_budget

__all__ = [
    "ASSUME_SIMPLY_CONNECTED",
    "CERTIFY",
    "Lemma36Result",
    "LocationReport",
    "WITNESS_CAP",
    "certify_null_homotopic",
    "check_m_location",
    "enumerate_full_cycles",
    "is_in_one_ball",
    "verify_lemma_3_6",
]

log = logging.getLogger(__name__)

ASSUME_SIMPLY_CONNECTED = "assume-simply-connected"
CERTIFY = "certify"
WITNESS_CAP = 10_000


def enumerate_full_cycles(X, min_len=3, max_len=7):
    """
    All chordless cycles of ``X`` with length in ``[min_len, max_len]``.

    Backtracking from the least vertex of each cycle; the second vertex is
    required to be smaller than the last, so every cycle appears once, in
    canonical form.  The result is sorted by (length, vertices).
    """
    if not 3 <= min_len <= max_len:
        raise ValueError("need 3 <= min_len <= max_len")
    nbrs = {v: X.neighbors(v) for v in X.vertices}
    out = []

    def extend(path, blocked):
        # blocked: vertices adjacent to some path vertex other than the last
        start, last = path[0], path[-1]
        for w in sorted(nbrs[last]):
            if w <= start or w in path:
                continue
            if w in blocked:
                continue
            if start in nbrs[w]:
                # w closes the cycle; a chord to path[1..-2] is excluded by blocked
                if len(path) >= 2 and len(path) + 1 >= min_len and path[1] < w:
                    out.append(tuple(path) + (w,))
                continue
            if len(path) + 1 < max_len:
                path.append(w)
                extend(path, blocked | nbrs[last])
                path.pop()

    for s in X.vertices:
        for v in sorted(nbrs[s]):
            if v > s:
                extend([s, v], set())
    out = [c for c in out if min_len <= len(c) <= max_len]
    out.sort(key=lambda c: (len(c), c))
    return out


def is_in_one_ball(X, cycle):
    """Least vertex adjacent to every vertex of a full cycle of length >= 4, or ``None``."""
    cycle = check_cycle(X, cycle)
    if len(cycle) < 4:
        raise ValueError("1-ball test applies to cycles of length >= 4")
    if not is_full_cycle(X, cycle):
        raise ValueError(f"cycle {cycle!r} is not full")
    common = common_neighbors(X, cycle)
    return min(common) if common else None


def certify_null_homotopic(X, cycle, budget=None, search=None):
    """``"yes"`` if a filling diagram is found within ``budget``, else ``"unknown"``."""
    search = search or FillingSearch(X)
    try:
        search.fill(cycle, budget)
    except BudgetExhausted:
        return "unknown"
    return "yes"


@dataclass
class LocationReport:
    m: int
    mode: str
    verdict: str = "located"
    witnesses: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    n_cycles: int = 0
    n_witnessed: int = 0
    witnesses_truncated: bool = False

    @property
    def located(self):
        return self.verdict == "located"

    def lines(self):
        """Machine-readable ``key: value`` lines."""
        out = [
            f"m: {self.m}",
            f"mode: {self.mode}",
            f"verdict: {self.verdict}",
            f"full_cycles: {self.n_cycles}",
            f"witnessed: {self.n_witnessed}",
            f"violations: {len(self.violations)}",
            f"undecided: {len(self.undecided)}",
        ]
        for c in self.violations:
            out.append("violation: " + " ".join(map(str, c)))
        for c in self.undecided:
            out.append("undecided_cycle: " + " ".join(map(str, c)))
        return out


def check_m_location(X, m=7, mode=ASSUME_SIMPLY_CONNECTED, budget=None, max_nodes=None):
    """
    Decide m-location of a flag complex.

    Parameters
    ----------
    X : FlagComplex
    m : int
        Largest cycle length considered; must be >= 4.
    mode : {"assume-simply-connected", "certify"}
    budget : int, optional
        Filling budget per cycle in certify mode; defaults to ``len(cycle)**2``.

    Returns
    -------
    LocationReport
        ``not-located`` iff some counted full cycle lacks a 1-ball; ``unknown``
        iff none does but some cycle could not be certified null-homotopic.
    """
    if m < 4:
        raise ValueError("m-location needs m >= 4")
    if mode not in (ASSUME_SIMPLY_CONNECTED, CERTIFY):
        raise ValueError(f"unknown mode {mode!r}")
    report = LocationReport(m=m, mode=mode)
    search = None
    if mode == CERTIFY:
        search = FillingSearch(X) if max_nodes is None else FillingSearch(X, max_nodes)
    for c in enumerate_full_cycles(X, 4, m):
        report.n_cycles += 1
        w = is_in_one_ball(X, c)
        if w is not None:
            report.n_witnessed += 1
            if len(report.witnesses) < WITNESS_CAP:
                report.witnesses[c] = w
            else:
                report.witnesses_truncated = True
            continue
        if mode == CERTIFY:
            b = default_budget(c) if budget is None else budget
            if certify_null_homotopic(X, c, b, search) != "yes":
                report.undecided.append(c)
                continue
        report.violations.append(c)
    if report.violations:
        report.verdict = "not-located"
    elif report.undecided:
        report.verdict = "unknown"
    return report


@dataclass
class Lemma36Result:
    status: str
    diagram: object = None
    report: LocationReport = None
    non_flag_clique: tuple = None
    detail: str = ""


def verify_lemma_3_6(X, loop, budget=None, search=None):
    """
    Check that the minimal filling disc of ``loop`` is flag and 7-located.

    Returns a :class:`Lemma36Result` with status ``"ok"``, ``"violation"`` or
    ``"unknown"`` (no filling within budget).  A non-flag disc is a violation.
    The caller is responsible for the premise that ``X`` is 7-located.
    """
    search = search or FillingSearch(X)
    try:
        diagram = search.fill(loop, budget)
    except BudgetExhausted as exc:
        return Lemma36Result("unknown", detail=str(exc))
    try:
        K = as_flag_complex(diagram.disc)
    except NonFlagDiscError as exc:
        log.warning("minimal disc is not flag: %s", exc.clique)
        return Lemma36Result("violation", diagram, non_flag_clique=exc.clique,
                             detail="minimal disc is not flag")
    report = check_m_location(K, 7, ASSUME_SIMPLY_CONNECTED)
    if report.located:
        return Lemma36Result("ok", diagram, report)
    return Lemma36Result("violation", diagram, report,
                         detail=f"{len(report.violations)} full cycles without a 1-ball")
