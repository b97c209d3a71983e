"""
Command-line interface: ``locus <command> ...``.

Every command prints a human-readable summary and, with ``--report FILE``,
writes machine-readable ``key: value`` lines.  Exit codes: 0 ok, 1 property
violated or not located, 2 unknown or budget exhausted, 3 usage error.
"""

import argparse
import logging
import sys

from .bounds import (DEFAULT_CONST, BoundViolation, NotLocatedError, companion_path,
                     fan_decomposition, shortest_path, verify_quadratic_bound)
from .core import ComplexError, FlagComplex, distance
from .corpus import ManifestError, default_manifest_path, run_corpus
from .disc import DiscError, InvalidDiscError, NonFlagDiscError, SimplicialDisc, as_flag_complex
from .filling import DEFAULT_MAX_NODES, BudgetExhausted, FillingSearch
from .formats import FormatError, dump_complex, dump_diagram, dump_disc, load
from .generators import RandomDiscConfig, gen_named, gen_random_disc
from .location import ASSUME_SIMPLY_CONNECTED, CERTIFY, check_m_location

__all__ = ["main"]

log = logging.getLogger("locus")

OK, VIOLATED, UNKNOWN, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# -- helpers ----------------------------------------------------------------------

def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    try:
        return load(_read(path))
    except (FormatError, DiscError, ComplexError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_disc(path):
    obj = _load(path)
    if not isinstance(obj, SimplicialDisc):
        raise UsageError(f"{path} is a complex file; this command needs a disc")
    return obj


def _vertex(obj, token):
    """Resolve a CLI vertex token: a label first, then an integer id."""
    try:
        return obj.vertex_by_label(token)
    except (ComplexError, AttributeError):
        pass
    for v in obj.vertices:
        if obj.label(v) == token:
            return v
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"unknown vertex {token!r}") from None
    if v not in obj:
        raise UsageError(f"unknown vertex {token!r}")
    return v


def _names(obj, vertices):
    return " ".join(obj.label(v) for v in vertices)


def _emit(args, lines, human=None):
    """Print ``human`` (defaults to ``lines``) and write ``lines`` to ``--report``."""
    for line in (lines if human is None else human):
        print(line)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _yn(flag):
    return "yes" if flag else "no"


# -- commands -------------------------------------------------------------------

def cmd_gen(args):
    if args.name == "random":
        if args.boundary is None:
            raise UsageError("gen random needs --boundary")
        cfg = RandomDiscConfig(min_interior_degree=args.min_degree)
        try:
            obj = gen_random_disc(args.boundary, args.interior, args.seed, cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            obj = gen_named(args.name, *args.params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    fmt = args.format
    if fmt == "auto":
        fmt = "complex" if isinstance(obj, FlagComplex) else "disc"
    if fmt == "disc" and not isinstance(obj, SimplicialDisc):
        raise UsageError(f"{obj.name} is a complex, not a disc")
    if fmt == "complex" and isinstance(obj, SimplicialDisc):
        try:
            obj = as_flag_complex(obj)
        except NonFlagDiscError as exc:
            raise UsageError(str(exc)) from None
    text = dump_complex(obj) if fmt == "complex" else dump_disc(obj)
    _write(args.output, text)
    lines = [f"kind: {fmt}", f"name: {obj.name}", f"vertices: {len(obj)}",
             f"edges: {obj.n_edges}"]
    if fmt == "disc":
        lines += [f"triangles: {obj.area}", f"boundary: {len(obj.boundary)}",
                  f"interior: {len(obj.interior_vertices)}"]
    # with no -o the file text goes to stdout, so keep the summary off it
    _emit(args, lines, human=[] if args.output in (None, "-") else None)
    return OK


def cmd_validate(args):
    text = _read(args.file)
    try:
        obj = load(text)
    except InvalidDiscError as exc:
        lines = ["kind: disc", "valid: no", f"violations: {len(exc.violations)}"]
        lines += [f"violation: {v}" for v in exc.violations]
        _emit(args, lines)
        return VIOLATED
    except (FormatError, DiscError, ComplexError) as exc:
        _emit(args, ["valid: no", "violations: 1", f"violation: {exc}"])
        return VIOLATED
    if isinstance(obj, FlagComplex):
        lines = ["kind: complex", "valid: yes", "violations: 0", f"name: {obj.name}",
                 f"vertices: {len(obj)}", f"edges: {obj.n_edges}"]
    else:
        lines = ["kind: disc", "valid: yes", "violations: 0", f"name: {obj.name}",
                 f"vertices: {len(obj)}", f"triangles: {obj.area}",
                 f"boundary: {len(obj.boundary)}"]
        try:
            as_flag_complex(obj)
            lines.append("flag: yes")
        except NonFlagDiscError as exc:
            lines += ["flag: no", "non_flag_clique: " + _names(obj, exc.clique)]
    _emit(args, lines)
    return OK


def cmd_check_location(args):
    obj = _load(args.file)
    if isinstance(obj, SimplicialDisc):
        try:
            X = as_flag_complex(obj)
        except NonFlagDiscError as exc:
            _emit(args, ["flag: no", "verdict: not-flag",
                         "non_flag_clique: " + _names(obj, exc.clique)])
            return VIOLATED
        mode = args.mode or ASSUME_SIMPLY_CONNECTED
    else:
        X = obj
        mode = args.mode or CERTIFY
    max_nodes = args.max_nodes or DEFAULT_MAX_NODES
    try:
        report = check_m_location(X, args.m, mode, budget=args.budget, max_nodes=max_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = report.lines()
    human = [ln for ln in lines if not ln.startswith(("violation:", "undecided_cycle:"))]
    human += ["violation: " + _names(X, c) for c in report.violations]
    human += ["undecided_cycle: " + _names(X, c) for c in report.undecided]
    _emit(args, lines, human)
    return {"located": OK, "not-located": VIOLATED}.get(report.verdict, UNKNOWN)


def cmd_fill(args):
    obj = _load(args.file)
    try:
        X = as_flag_complex(obj) if isinstance(obj, SimplicialDisc) else obj
    except NonFlagDiscError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    loop = tuple(_vertex(X, t.strip()) for t in args.loop.split(",") if t.strip())
    search = FillingSearch(X, max_nodes=args.max_nodes or DEFAULT_MAX_NODES)
    try:
        diagram = search.fill(loop, args.budget)
    except BudgetExhausted as exc:
        _emit(args, ["status: unknown", f"loop: {_names(X, loop)}", f"length: {len(loop)}",
                     f"budget: {exc.budget}", f"node_limit_hit: {_yn(exc.node_limit_hit)}"])
        return UNKNOWN
    except (ComplexError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        _write(args.output, dump_diagram(diagram))
    lines = ["status: ok", f"loop: {_names(X, loop)}", f"length: {len(loop)}",
             f"area: {diagram.area}", f"interior: {len(diagram.disc.interior_vertices)}",
             f"violations: {len(diagram.violations())}"]
    _emit(args, lines)
    return OK if not diagram.violations() else VIOLATED


def cmd_verify_iso(args):
    D = _load_disc(args.file)
    try:
        report = fan_decomposition(D, args.const) if args.fan else verify_quadratic_bound(D, args.const)
    except NotLocatedError as exc:
        _emit(args, ["located: no", "pass: no", f"error: {exc}"])
        return VIOLATED
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = report.lines()
    if args.fan:
        lines.append(f"anomalies: {len(report.anomalies)}")
    _emit(args, lines)
    return OK if report.passed else VIOLATED


def cmd_companion(args):
    D = _load_disc(args.file)
    u, v, w = (_vertex(D, t) for t in (args.u, args.v, args.w))
    if args.path:
        P = tuple(_vertex(D, t.strip()) for t in args.path.split(","))
    else:
        P = shortest_path(D, u, v)
    try:
        res = companion_path(D, u, P, w, args.const, strict=False, detour_seed=args.detour_seed)
    except NotLocatedError as exc:
        _emit(args, ["located: no", "pass: no", f"error: {exc}"])
        return VIOLATED
    except (ValueError, BoundViolation) as exc:
        raise UsageError(str(exc)) from None
    lines = [
        f"u: {D.label(u)}", f"v: {D.label(v)}", f"w: {D.label(w)}",
        f"d_uv: {res.k}", f"d_uw: {distance(D, u, w)}",
        "path_p: " + _names(D, P),
        "path: " + _names(D, res.path),
        "cycle: " + _names(D, res.walk),
        f"area: {res.area}", f"bound: {res.bound}",
        f"case: {res.cases[0]}", f"fallbacks: {len(res.fallbacks)}",
        f"anomalies: {len(res.anomalies)}", f"pass: {_yn(res.passed)}",
    ]
    _emit(args, lines)
    return OK if res.passed else VIOLATED


def cmd_corpus(args):
    source = args.manifest or default_manifest_path()
    try:
        report = run_corpus(source, threads=args.threads)
    except ManifestError as exc:
        raise UsageError(f"malformed manifest: {exc}") from None
    _emit(args, report.lines(timing=not args.no_timing))
    return OK if report.passed else VIOLATED


# -- parser ---------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="locus", description="Flag complexes, m-location and filling diagrams.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name, func, help):
        sp = sub.add_parser(name, help=help, description=help)
        sp.add_argument("--report", metavar="FILE", help="write key: value lines to FILE")
        sp.set_defaults(func=func)
        return sp

    sp = command("gen", cmd_gen, "generate a named instance or a random disc")
    sp.add_argument("name", help="instance name, e.g. wheel, 'wheel(6)', hex-patch, or random")
    sp.add_argument("params", nargs="*", type=int, help="integer parameters for named instances")
    sp.add_argument("-o", "--output", help="output file (default: stdout)")
    sp.add_argument("--format", choices=["auto", "complex", "disc"], default="auto")
    sp.add_argument("--boundary", type=int, help="random: boundary length")
    sp.add_argument("--interior", type=int, default=0, help="random: interior vertex budget")
    sp.add_argument("--seed", type=int, default=0, help="random: seed")
    sp.add_argument("--min-degree", type=int, default=6,
                    help="random: least degree a vertex may have when it becomes interior")

    sp = command("validate", cmd_validate, "validate a complex or disc file")
    sp.add_argument("file")

    sp = command("check-location", cmd_check_location, "decide m-location")
    sp.add_argument("file")
    sp.add_argument("--m", type=int, default=7)
    sp.add_argument("--mode", choices=[ASSUME_SIMPLY_CONNECTED, CERTIFY],
                    help="default: assume-simply-connected for discs, certify for complexes")
    sp.add_argument("--budget", type=int, help="certify: filling budget per cycle (default |c|^2)")
    sp.add_argument("--max-nodes", type=int, help="certify: search node cap")

    sp = command("fill", cmd_fill, "minimal filling diagram of a loop")
    sp.add_argument("file")
    sp.add_argument("--loop", required=True, help="comma-separated vertex labels or ids")
    sp.add_argument("--budget", type=int, help="largest area searched (default |loop|^2)")
    sp.add_argument("--max-nodes", type=int, help="search node cap")
    sp.add_argument("-o", "--output", help="write the diagram here")

    sp = command("verify-iso", cmd_verify_iso, "check the quadratic area bound of a disc")
    sp.add_argument("file")
    sp.add_argument("--const", type=int, default=DEFAULT_CONST)
    sp.add_argument("--fan", action="store_true", help="also build the fan decomposition")

    sp = command("companion", cmd_companion, "companion geodesic for a triple u, v, w")
    sp.add_argument("file")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--path", help="geodesic from u to v (default: least shortest path)")
    sp.add_argument("--const", type=int, default=DEFAULT_CONST)
    sp.add_argument("--detour-seed", type=int, help="randomise the detour around v")

    sp = command("corpus", cmd_corpus, "run the verification suites over a manifest")
    sp.add_argument("manifest", nargs="?", help="manifest file (default: the shipped manifest)")
    sp.add_argument("--threads", type=int, help="worker processes (default: LOCUS_THREADS or 1)")
    sp.add_argument("--no-timing", action="store_true", help="omit time.* keys")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"locus {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
