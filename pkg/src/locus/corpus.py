"""
Manifest-driven corpus runs.

A manifest is a JSON object::

    {
      "name": "default",
      "settings": {"loop_min": 3, "loop_max": 8, "loops_per_length": 8, ...},
      "streams": [
        {
          "name": "located",
          "instances": ["hex-patch(3)", "wheel(6)"],
          "random": {"boundary": [4, 20], "interior": [0, 60], "config": {...}},
          "seeds": {"start": 0, "count": 50},
          "filter": "7-located",
          "suites": ["lemma-3-8", "theorem"],
          "options": {"lemma-3-8": {"max_boundary": 20}}
        }
      ]
    }

For random instances, seed ``s`` draws the boundary length and interior
budget uniformly from the given ranges with ``random.Random(s)`` and then
calls :func:`gen_random_disc` with the same seed.

Suites count units: a (complex, loop) pair for the filling suites, a triple
``(u, v, w)`` for ``lemma-3-8`` and a disc for ``pick-euler`` and
``theorem``.  Instances run on a process pool of ``LOCUS_THREADS`` workers
(default 1) and are merged in manifest order.
"""

import json
import logging
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bounds import DEFAULT_CONST, check_companion_bounds, fan_decomposition, verify_quadratic_bound
from .disc import NonFlagDiscError, SimplicialDisc, as_flag_complex
from .filling import BudgetExhausted, FillingSearch, check_lemma_2_4, check_lemma_2_5, check_lemma_3_1
from .generators import RandomDiscConfig, gen_named, gen_random_disc, to_complex
from .location import ASSUME_SIMPLY_CONNECTED, CERTIFY, check_m_location, enumerate_full_cycles, \
    verify_lemma_3_6

__all__ = [
    "CorpusReport",
    "ManifestError",
    "SUITES",
    "SuiteResult",
    "default_manifest_path",
    "expand_stream",
    "load_manifest",
    "run_corpus",
]

log = logging.getLogger(__name__)

SUITES = ("pick-euler", "lemma-2-4", "lemma-2-5", "lemma-3-1", "lemma-3-6", "lemma-3-8", "theorem")
FILLING_SUITES = ("lemma-2-4", "lemma-2-5", "lemma-3-1", "lemma-3-6")

DEFAULT_SETTINGS = {
    "loop_min": 3,
    "loop_max": 8,
    "loops_per_length": 8,
    "boundary_loop_max": 10,
    "max_nodes": 250_000,
    "certify_max_nodes": 20_000,
    "const": DEFAULT_CONST,
}

SUITE_OPTIONS = {
    "lemma-3-8": {"max_boundary": None, "max_k": 8, "proof_route": True, "cap": 10 ** 6},
    "theorem": {"max_boundary": None, "fan": True},
}

MAX_FAILURES = 20


class ManifestError(ValueError):
    pass


def default_manifest_path():
    return os.path.join(os.path.dirname(__file__), "data", "default_manifest.json")


def _range(spec, key):
    if isinstance(spec, int):
        return spec, spec
    if (isinstance(spec, list) and len(spec) == 2 and all(isinstance(x, int) for x in spec)
            and spec[0] <= spec[1]):
        return spec[0], spec[1]
    raise ManifestError(f"{key} must be an integer or [lo, hi]")


def _seeds(spec):
    if isinstance(spec, list) and all(isinstance(s, int) for s in spec):
        return list(spec)
    if isinstance(spec, dict) and set(spec) <= {"start", "count"} and "count" in spec:
        start = spec.get("start", 0)
        return list(range(start, start + spec["count"]))
    raise ManifestError("seeds must be a list of integers or {start, count}")


def load_manifest(source):
    """Parse and check a manifest (path, JSON text or dict)."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if not str(source).lstrip().startswith(("{", "[")):
            try:
                with open(source, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ManifestError(f"cannot read manifest {source}: {exc.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    unknown = set(data) - {"name", "settings", "streams", "description"}
    if unknown:
        raise ManifestError(f"unknown manifest keys {sorted(unknown)}")
    settings = dict(DEFAULT_SETTINGS)
    extra = set(data.get("settings", {})) - set(DEFAULT_SETTINGS)
    if extra:
        raise ManifestError(f"unknown settings {sorted(extra)}")
    settings.update(data.get("settings", {}))
    streams = []
    for i, st in enumerate(data.get("streams", [])):
        if not isinstance(st, dict):
            raise ManifestError(f"stream {i} is not an object")
        bad = set(st) - {"name", "instances", "random", "seeds", "filter", "suites", "options"}
        if bad:
            raise ManifestError(f"stream {i}: unknown keys {sorted(bad)}")
        suites = st.get("suites", [])
        for s in suites:
            if s not in SUITES:
                raise ManifestError(f"stream {i}: unknown suite {s!r}")
        if st.get("filter") not in (None, "7-located"):
            raise ManifestError(f"stream {i}: unknown filter {st['filter']!r}")
        if ("random" in st) != ("seeds" in st):
            raise ManifestError(f"stream {i}: 'random' and 'seeds' go together")
        options = {}
        for suite, opts in st.get("options", {}).items():
            if suite not in SUITE_OPTIONS:
                raise ManifestError(f"stream {i}: no options for suite {suite!r}")
            if set(opts) - set(SUITE_OPTIONS[suite]):
                raise ManifestError(f"stream {i}: unknown {suite} options")
            options[suite] = opts
        stream = {
            "name": st.get("name", f"stream{i}"),
            "instances": list(st.get("instances", [])),
            "random": st.get("random"),
            "seeds": _seeds(st["seeds"]) if "seeds" in st else [],
            "filter": st.get("filter"),
            "suites": list(suites),
            "options": options,
        }
        if stream["random"] is not None:
            r = stream["random"]
            _range(r.get("boundary"), "random.boundary")
            _range(r.get("interior", 0), "random.interior")
            try:
                RandomDiscConfig(**r.get("config", {}))
            except TypeError as exc:
                raise ManifestError(f"stream {i}: bad random config: {exc}") from None
        for name in stream["instances"]:
            try:
                gen_named(name)
            except ValueError as exc:
                raise ManifestError(f"stream {i}: {exc}") from None
        streams.append(stream)
    return {"name": data.get("name", "manifest"), "settings": settings, "streams": streams}


def expand_stream(stream):
    """Instance specs of a stream: ``("named", name)`` or ``("random", n, budget, seed, config)``."""
    out = [("named", name) for name in stream["instances"]]
    r = stream["random"]
    if r is not None:
        blo, bhi = _range(r["boundary"], "boundary")
        ilo, ihi = _range(r.get("interior", 0), "interior")
        cfg = tuple(sorted(r.get("config", {}).items()))
        for s in stream["seeds"]:
            rng = random.Random(s)
            out.append(("random", rng.randint(blo, bhi), rng.randint(ilo, ihi), s, cfg))
    return out


def build_instance(spec):
    if spec[0] == "named":
        return gen_named(spec[1])
    _, n, budget, seed, cfg = spec
    return gen_random_disc(n, budget, seed, RandomDiscConfig(**dict(cfg)))


# -- results -------------------------------------------------------------------

@dataclass
class SuiteResult:
    passed: int = 0
    failed: int = 0
    unknown: int = 0
    skipped: int = 0
    max_ratio: float = 0.0
    fallbacks: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, what):
        self.failed += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(what)

    def merge(self, other):
        self.passed += other.passed
        self.failed += other.failed
        self.unknown += other.unknown
        self.skipped += other.skipped
        self.max_ratio = max(self.max_ratio, other.max_ratio)
        self.fallbacks.update(other.fallbacks)
        room = MAX_FAILURES - len(self.failures)
        self.failures += other.failures[:max(room, 0)]
        self.seconds += other.seconds


@dataclass
class CorpusReport:
    name: str
    suites: dict = field(default_factory=dict)
    streams: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(r.failed == 0 for r in self.suites.values())

    def lines(self, timing=True):
        """Stable ``key: value`` lines; ``time.*`` keys carry wall-clock seconds."""
        out = [f"manifest: {self.name}"]
        for st in self.streams:
            out.append(f"stream.{st['name']}.instances: {st['instances']}")
            if st["filter"]:
                out.append(f"stream.{st['name']}.accepted: {st['accepted']}")
                out.append(f"stream.{st['name']}.rejected: {' '.join(st['rejected']) or '-'}")
        for name in SUITES:
            if name not in self.suites:
                continue
            r = self.suites[name]
            out += [
                f"suite.{name}.pass: {r.passed}",
                f"suite.{name}.fail: {r.failed}",
                f"suite.{name}.unknown: {r.unknown}",
                f"suite.{name}.skipped: {r.skipped}",
            ]
            if name in ("lemma-3-8", "theorem"):
                out.append(f"suite.{name}.max_ratio: {r.max_ratio:.4f}")
                out.append(f"suite.{name}.fallbacks: {sum(r.fallbacks.values())}")
            for f in r.failures:
                out.append(f"suite.{name}.failure: {f}")
            if timing:
                out.append(f"time.{name}: {r.seconds:.3f}")
        if timing:
            out.append(f"time.total: {self.seconds:.3f}")
        out.append(f"verdict: {'pass' if self.passed else 'fail'}")
        return out


# -- per-instance work ----------------------------------------------------------

def _loops(K, obj, settings):
    per = settings["loops_per_length"]
    by_len = Counter()
    loops = []
    for c in enumerate_full_cycles(K, settings["loop_min"], settings["loop_max"]):
        if by_len[len(c)] < per:
            by_len[len(c)] += 1
            loops.append(c)
    if isinstance(obj, SimplicialDisc) and len(obj.boundary) <= settings["boundary_loop_max"]:
        if tuple(obj.boundary) not in loops:
            loops.append(tuple(obj.boundary))
    return loops


def _ambient_located(obj, K, settings):
    if isinstance(obj, SimplicialDisc):
        return check_m_location(K, 7, ASSUME_SIMPLY_CONNECTED).located
    return check_m_location(K, 7, CERTIFY, max_nodes=settings["certify_max_nodes"]).located


def _filling_suites(name, obj, suites, settings, results):
    K = to_complex(obj)
    search = FillingSearch(K, max_nodes=settings["max_nodes"])
    wanted = [s for s in FILLING_SUITES if s in suites]
    located = None
    if "lemma-3-6" in wanted:
        t = time.perf_counter()
        located = _ambient_located(obj, K, settings)
        results["lemma-3-6"].seconds += time.perf_counter() - t
    for loop in _loops(K, obj, settings):
        t = time.perf_counter()
        tag = f"{name} loop {' '.join(map(str, loop))}"
        try:
            d = search.fill(loop)
        except BudgetExhausted:
            spent = (time.perf_counter() - t) / len(wanted)
            for s in wanted:
                results[s].unknown += 1
                results[s].seconds += spent
            continue
        fill_time = time.perf_counter() - t
        checks = {
            "lemma-2-4": lambda: check_lemma_2_4(d) + d.violations(),
            "lemma-2-5": lambda: check_lemma_2_5(d),
            "lemma-3-1": lambda: check_lemma_3_1(d),
        }
        for s in wanted:
            t = time.perf_counter()
            r = results[s]
            if s == "lemma-3-6":
                if not located:
                    r.skipped += 1
                else:
                    res = verify_lemma_3_6(K, loop, search=search)
                    if res.status == "ok":
                        r.passed += 1
                    elif res.status == "unknown":
                        r.unknown += 1
                    else:
                        r.fail(f"{tag}: {res.detail}")
            else:
                bad = checks[s]()
                if bad:
                    r.fail(f"{tag}: {bad[0]}")
                else:
                    r.passed += 1
            r.seconds += time.perf_counter() - t + fill_time / len(wanted)


def _run_instance(job):
    spec, suites, options, settings, filt = job
    obj = build_instance(spec)
    name = obj.name
    results = {s: SuiteResult() for s in suites}
    if filt == "7-located":
        if isinstance(obj, SimplicialDisc):
            try:
                K = as_flag_complex(obj)
            except NonFlagDiscError:
                return name, False, results
        else:
            K = obj
        if not _ambient_located(obj, K, settings):
            return name, False, results
    const = settings["const"]
    disc = obj if isinstance(obj, SimplicialDisc) else None

    if "pick-euler" in suites:
        r = results["pick-euler"]
        t = time.perf_counter()
        if disc is None:
            r.skipped += 1
        elif disc.area == disc.pick_area() and disc.euler_characteristic() == 1:
            r.passed += 1
        else:
            r.fail(f"{name}: area {disc.area}, pick {disc.pick_area()}, "
                   f"euler {disc.euler_characteristic()}")
        r.seconds += time.perf_counter() - t

    if any(s in suites for s in FILLING_SUITES):
        _filling_suites(name, obj, suites, settings, results)

    if "lemma-3-8" in suites:
        opts = {**SUITE_OPTIONS["lemma-3-8"], **options.get("lemma-3-8", {})}
        r = results["lemma-3-8"]
        t = time.perf_counter()
        if disc is None or (opts["max_boundary"] and len(disc.boundary) > opts["max_boundary"]):
            r.skipped += 1
        else:
            br = check_companion_bounds(disc, const, opts["max_k"], opts["cap"],
                                        proof_route=opts["proof_route"])
            r.passed += len(br.instances) - len(br.violations)
            for u, v, w, k, area, bound, _ in br.violations:
                r.fail(f"{name}: u={u} v={v} w={w} area {area} > {bound}")
            if br.proof_violations:
                r.fail(f"{name}: {br.proof_violations} proof-route areas over the bound")
            if br.below_oracle:
                r.fail(f"{name}: {br.below_oracle} proof-route areas below the oracle minimum")
            r.unknown += br.capped
            r.max_ratio = max(r.max_ratio, br.max_ratio)
            r.fallbacks.update(br.fallbacks)
        r.seconds += time.perf_counter() - t

    if "theorem" in suites:
        opts = {**SUITE_OPTIONS["theorem"], **options.get("theorem", {})}
        r = results["theorem"]
        t = time.perf_counter()
        if disc is None or (opts["max_boundary"] and len(disc.boundary) > opts["max_boundary"]):
            r.skipped += 1
        else:
            direct = verify_quadratic_bound(disc, const)
            ok = direct.passed
            if opts["fan"]:
                fan = fan_decomposition(disc, const, check_located=False)
                ok = ok and fan.passed
                r.fallbacks.update(label for label, _, _ in fan.fallbacks)
            if ok:
                r.passed += 1
            else:
                r.fail(f"{name}: n={direct.n} area={direct.area}")
            r.max_ratio = max(r.max_ratio, direct.area / direct.n ** 2)
        r.seconds += time.perf_counter() - t
    return name, True, results


def _workers(threads):
    if threads is None:
        threads = int(os.environ.get("LOCUS_THREADS", "1") or 1)
    return max(1, threads)


def run_corpus(manifest, threads=None):
    """
    Run every stream of a manifest.

    Parameters
    ----------
    manifest : dict or str
        Parsed manifest, JSON text or path.
    threads : int, optional
        Worker processes; defaults to ``LOCUS_THREADS`` or 1.

    Returns
    -------
    CorpusReport
    """
    if not (isinstance(manifest, dict) and "streams" in manifest and "settings" in manifest):
        manifest = load_manifest(manifest)
    start = time.perf_counter()
    report = CorpusReport(manifest["name"])
    settings = manifest["settings"]
    workers = _workers(threads)
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for stream in manifest["streams"]:
            jobs = [(spec, tuple(stream["suites"]), stream["options"], settings, stream["filter"])
                    for spec in expand_stream(stream)]
            outputs = pool.map(_run_instance, jobs) if pool else map(_run_instance, jobs)
            info = {"name": stream["name"], "instances": len(jobs), "filter": stream["filter"],
                    "accepted": 0, "rejected": []}
            for name, accepted, results in outputs:
                if not accepted:
                    info["rejected"].append(name)
                    continue
                info["accepted"] += 1
                for s, r in results.items():
                    report.suites.setdefault(s, SuiteResult()).merge(r)
            report.streams.append(info)
            log.info("stream %s: %d instances", stream["name"], len(jobs))
    finally:
        if pool:
            pool.shutdown()
    report.seconds = time.perf_counter() - start
    return report
