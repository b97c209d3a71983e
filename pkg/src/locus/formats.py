"""
Text formats for complexes, discs and filling diagrams.

Complex::

    complex <name> <vertex-count>
    edge u v

Disc::

    disc <name>
    tri a b c
    boundary v0 v1 ... v_{n-1}

Diagram: a disc block, then ``map d x`` lines sending disc vertices to target
vertices, then ``area N``.

Vertices are 0-based integers or double-quoted labels (one style per file);
``#`` starts a comment outside quotes.  Labelled vertices get ids in order of
first appearance, boundary line first in disc blocks; the writers order lines
so that this reproduces the ids of the written object whenever the graph
allows it.
"""

import re

from .core import ComplexError, FlagComplex
from .disc import SimplicialDisc
from .filling import FillingDiagram, VertexMap

__all__ = [
    "FormatError",
    "dump_complex",
    "dump_diagram",
    "dump_disc",
    "load",
    "load_complex",
    "load_diagram",
    "load_disc",
    "read_file",
    "write_file",
]

_TOKEN = re.compile(r'\s*(?:"((?:[^"\\]|\\.)*)"|(#.*)|(\S+))')


class FormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class _Quoted(str):
    pass


def _tokens(line, lineno):
    out = []
    pos = 0
    line = line.rstrip("\n")
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            if line[pos:].strip():
                raise FormatError("unterminated quote", lineno)
            break
        pos = m.end()
        if m.group(2) is not None:
            break
        if m.group(1) is not None:
            out.append(_Quoted(re.sub(r"\\(.)", r"\1", m.group(1))))
        elif m.group(3) is not None:
            out.append(m.group(3))
    return out


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw, lineno)
        if toks:
            yield lineno, toks


class _Vertices:
    """Resolve vertex tokens to ids; a file uses integers or quoted labels, not both."""

    def __init__(self, count=None):
        self.count = count
        self.style = None
        self.ids = {}

    def __call__(self, tok, lineno):
        style = "label" if isinstance(tok, _Quoted) else "int"
        if self.style is None:
            self.style = style
        elif style != self.style:
            raise FormatError("mixed integer and quoted vertex names", lineno)
        if style == "int":
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(f"bad vertex {tok!r}", lineno) from None
            if v < 0 or (self.count is not None and v >= self.count):
                raise FormatError(f"vertex {v} out of range", lineno)
            return v
        if tok not in self.ids:
            if self.count is not None and len(self.ids) >= self.count:
                raise FormatError(f"more than {self.count} labels", lineno)
            self.ids[tok] = len(self.ids)
        return self.ids[tok]

    def labels(self):
        return {v: str(lab) for lab, v in self.ids.items()}


def load_complex(text):
    """Parse a complex file."""
    it = _lines(text)
    try:
        lineno, head = next(it)
    except StopIteration:
        raise FormatError("empty file") from None
    if head[0] != "complex" or len(head) != 3:
        raise FormatError("expected 'complex <name> <vertex-count>'", lineno)
    try:
        count = int(head[2])
    except ValueError:
        raise FormatError("vertex count must be an integer", lineno) from None
    verts = _Vertices(count)
    edges = []
    seen = set()
    for lineno, toks in it:
        if toks[0] != "edge" or len(toks) != 3:
            raise FormatError(f"expected 'edge u v', got {' '.join(toks)!r}", lineno)
        u, v = verts(toks[1], lineno), verts(toks[2], lineno)
        if u == v:
            raise FormatError(f"self-loop at {toks[1]}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {toks[1]} {toks[2]}", lineno)
        seen.add(key)
        edges.append(key)
    try:
        return FlagComplex(range(count), edges, verts.labels(), name=head[1])
    except ComplexError as exc:
        raise FormatError(str(exc)) from exc


def _parse_disc(lines, verts, lineno, head):
    if head[0] != "disc" or len(head) != 2:
        raise FormatError("expected 'disc <name>'", lineno)
    raw_tris, raw_boundary, rest = [], None, []
    for lineno, toks in lines:
        if toks[0] == "tri":
            if len(toks) != 4:
                raise FormatError("expected 'tri a b c'", lineno)
            raw_tris.append((lineno, toks[1:]))
        elif toks[0] == "boundary":
            if raw_boundary is not None:
                raise FormatError("second boundary line", lineno)
            raw_boundary = (lineno, toks[1:])
        else:
            rest.append((lineno, toks))
            rest.extend(lines)
            break
    if raw_boundary is None:
        raise FormatError("missing boundary line")
    # boundary labels take the first ids
    lineno, toks = raw_boundary
    boundary = tuple(verts(t, lineno) for t in toks)
    tris = [tuple(verts(t, ln) for t in toks) for ln, toks in raw_tris]
    return tris, boundary, rest


def load_disc(text):
    """Parse a disc file; the disc is validated (raises ``InvalidDiscError``)."""
    it = _lines(text)
    try:
        lineno, head = next(it)
    except StopIteration:
        raise FormatError("empty file") from None
    verts = _Vertices()
    tris, boundary, rest = _parse_disc(it, verts, lineno, head)
    if rest:
        raise FormatError(f"unexpected {rest[0][1][0]!r}", rest[0][0])
    return SimplicialDisc(tris, boundary, verts.labels() or None, name=head[1])


def load_diagram(text, X):
    """Parse a diagram file against its target complex ``X``."""
    it = _lines(text)
    try:
        lineno, head = next(it)
    except StopIteration:
        raise FormatError("empty file") from None
    verts = _Vertices()
    tris, boundary, rest = _parse_disc(it, verts, lineno, head)
    disc = SimplicialDisc(tris, boundary, verts.labels() or None, name=head[1])
    fmap, area = {}, None
    for lineno, toks in rest:
        if toks[0] == "map" and len(toks) == 3:
            d = verts(toks[1], lineno)
            x = toks[2]
            try:
                fmap[d] = X.vertex_by_label(str(x)) if isinstance(x, _Quoted) else int(x)
            except (ComplexError, ValueError):
                raise FormatError(f"unknown target vertex {x!r}", lineno) from None
        elif toks[0] == "area" and len(toks) == 2:
            area = int(toks[1])
        else:
            raise FormatError(f"unexpected {' '.join(toks)!r}", lineno)
    vm = VertexMap(disc, X, fmap)
    loop = tuple(fmap[v] for v in disc.boundary)
    diagram = FillingDiagram(loop, vm, disc)
    if area is not None and area != disc.area:
        raise FormatError(f"area line says {area}, disc has {disc.area}")
    return diagram


def load(text):
    """Load a complex or disc, dispatching on the header keyword."""
    for _, toks in _lines(text):
        if toks[0] == "complex":
            return load_complex(text)
        if toks[0] == "disc":
            return load_disc(text)
        raise FormatError(f"unknown file type {toks[0]!r}")
    raise FormatError("empty file")


def _uses_labels(obj):
    return any(obj.label(v) != str(v) for v in obj.vertices)


def _namer(obj):
    if _uses_labels(obj):
        return lambda v: '"' + obj.label(v).replace("\\", "\\\\").replace('"', '\\"') + '"'
    return str


def dump_complex(X):
    """Serialise a complex; ids must be ``0..n-1`` unless every vertex is labelled."""
    name = _namer(X)
    if not _uses_labels(X) and X.vertices != tuple(range(len(X))):
        raise FormatError("complex ids must be 0..n-1 to be written without labels")
    lines = [f"complex {X.name} {len(X)}"]
    edges = sorted(X.edges(), key=lambda e: (max(e), min(e)))
    lines += [f"edge {name(u)} {name(v)}" for u, v in edges]
    return "\n".join(lines) + "\n"


def dump_disc(D):
    name = _namer(D)
    lines = [f"disc {D.name}"]
    tris = sorted(D.triangles, key=lambda t: sorted(t, reverse=True))
    lines += ["tri " + " ".join(name(v) for v in sorted(t)) for t in tris]
    lines.append("boundary " + " ".join(name(v) for v in D.boundary))
    return "\n".join(lines) + "\n"


def dump_diagram(d):
    X = d.target
    xname = _namer(X)
    dname = _namer(d.disc)
    lines = [dump_disc(d.disc).rstrip("\n")]
    lines += [f"map {dname(v)} {xname(d.image(v))}" for v in d.disc.vertices]
    lines.append(f"area {d.area}")
    return "\n".join(lines) + "\n"


def read_file(path):
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def write_file(path, obj):
    text = dump_complex(obj) if isinstance(obj, FlagComplex) else dump_disc(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
