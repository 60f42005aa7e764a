"""Line-oriented spec files describing algebroids, connections and friends.

Example::

    algebroid aff1
      frame e1, e2
      bracket [e1, e2] = e2
    end

Each block is ``KIND NAME [on REF]``, a list of ``key [args] = value`` lines
and ``end``.  Values are expressions in the polynomial grammar; sections are
linear combinations of frame names, matrices are written ``[[a, b], [c, d]]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .algebroid import BundleDerivation, Connection, FrameAlgebroid
from .defcomplex import DefCochain
from .im import IMSectionCoords, IMTriple, internal_triple
from .symexpr import ParseError, Polynomial, PolyMatrix, PolyVector, linear_coefficients, parse_expression
from .vb import SplitVB, build_full_core, build_tangent, build_trivial_core, gauge_vb

KINDS = ("algebroid", "connection", "vb", "cochain", "triple", "imsection")
VB_KINDS = ("trivial-core", "full-core", "tangent", "gauge", "custom")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*$")


class ResolutionError(ParseError):
    """A name that does not resolve, or a block of the wrong kind."""


@dataclass
class Entry:
    key: str
    args: tuple
    text: str
    line: int
    column: int
    arg_column: int = 0


@dataclass
class Block:
    kind: str
    name: str
    ref: str | None
    line: int
    entries: list = field(default_factory=list)
    ref_column: int = 1

    def get(self, key):
        return [e for e in self.entries if e.key == key]

    def one(self, key, required: bool = True):
        found = self.get(key)
        if len(found) > 1:
            e = found[1]
            raise ParseError(f"duplicate key {key!r} in {self.kind} {self.name}", e.line, e.column)
        if not found:
            if required:
                raise ParseError(f"{self.kind} {self.name} is missing {key!r}", self.line, 1)
            return None
        return found[0]


KNOWN_KEYS = {
    "algebroid": {"base", "frame", "anchor", "bracket"},
    "connection": {"rank", "christoffel"},
    "vb": {"kind", "connection", "fiber", "core", "anchor", "bracket"},
    "cochain": {"degree", "value", "symbol"},
    "triple": {"internal", "symbol", "fat_symbol", "side_symbol", "core_symbol", "fat", "side", "core"},
    "imsection": {"X", "U", "V"},
}


def _split_top(text: str, column: int, sep: str = ","):
    """Split on top-level separators, yielding (piece, column of piece)."""
    depth = 0
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], column + start))
            start = i + 1
    out.append((text[start:], column + start))
    return out


def _strip(piece: str, column: int):
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), column + lead


def parse_document(text: str) -> list:
    """Split text into blocks; only the block structure is checked here."""
    blocks = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        words = body.split()
        if current is None:
            if words[0] not in KINDS:
                raise ParseError(f"expected a block keyword, found {words[0]!r}", lineno, col)
            if len(words) not in (2, 4) or (len(words) == 4 and words[2] != "on"):
                raise ParseError("block header must be KIND NAME [on REF]", lineno, col)
            if not _IDENT.match(words[1]):
                raise ParseError(f"bad block name {words[1]!r}", lineno, col + len(words[0]) + 1)
            current = Block(words[0], words[1], words[3] if len(words) == 4 else None, lineno)
            if current.ref is not None:
                current.ref_column = line.rindex(current.ref) + 1
            continue
        if body == "end":
            blocks.append(current)
            current = None
            continue
        key = words[0]
        if key in KINDS and key not in KNOWN_KEYS[current.kind]:
            raise ParseError(f"missing 'end' before new {key} block", lineno, col)
        if key not in KNOWN_KEYS[current.kind]:
            raise ParseError(f"unknown key {key!r} in {current.kind} block", lineno, col)
        rest = body[len(key):]
        rest_col = col + len(key)
        stripped, rest_col = _strip(rest, rest_col)
        args = ()
        arg_col = rest_col
        if stripped.startswith("["):
            close = stripped.find("]")
            if close < 0:
                raise ParseError("unclosed '['", lineno, rest_col)
            inner = stripped[1:close]
            arg_col = rest_col + 1
            if inner.strip():
                pieces = _split_top(inner, rest_col + 1)
                args = tuple(_strip(p, c)[0] for p, c in pieces)
                for (p, c) in pieces:
                    name, ncol = _strip(p, c)
                    if not _IDENT.match(name):
                        raise ParseError(f"bad argument name {name!r}", lineno, ncol)
            stripped, rest_col = _strip(stripped[close + 1:], rest_col + close + 1)
        elif "=" in stripped:
            # bare form: "anchor e1 = 1, 0"
            head = stripped.partition("=")[0]
            if head.strip():
                if not _IDENT.match(head.strip()):
                    raise ParseError(f"bad argument name {head.strip()!r}", lineno, rest_col)
                args = (head.strip(),)
                arg_col = rest_col
                offset = len(head)
                stripped, rest_col = _strip(stripped[offset:], rest_col + offset)
        if stripped.startswith("="):
            stripped, rest_col = _strip(stripped[1:], rest_col + 1)
        current.entries.append(Entry(key, args, stripped, lineno, rest_col, arg_col))
    if current is not None:
        raise ParseError(f"block {current.name} is not closed with 'end'", current.line, 1)
    names = {}
    for b in blocks:
        if b.name in names:
            raise ParseError(f"duplicate block name {b.name!r}", b.line, 1)
        names[b.name] = b
    return blocks


def _names(entry: Entry) -> tuple:
    if not entry.text:
        return ()
    out = []
    for piece, col in _split_top(entry.text, entry.column):
        name, ncol = _strip(piece, col)
        if not _IDENT.match(name) or "-" in name:
            raise ParseError(f"bad name {name!r}", entry.line, ncol)
        out.append(name)
    if len(set(out)) != len(out):
        raise ParseError("repeated name", entry.line, entry.column)
    return tuple(out)


def _expr(text: str, chart, line: int, column: int) -> Polynomial:
    return parse_expression(text, chart, line, column)


def _components(entry: Entry, chart, count: int) -> list:
    pieces = _split_top(entry.text, entry.column)
    if count == 0:
        if entry.text.strip() not in ("", "0"):
            raise ParseError("expected no components on a zero-dimensional chart", entry.line, entry.column)
        return []
    if len(pieces) != count:
        raise ParseError(f"expected {count} components, found {len(pieces)}", entry.line, entry.column)
    return [_expr(p, chart, entry.line, c) for p, c in pieces]


def _linear(entry: Entry, chart, basis) -> list:
    chart = tuple(chart)
    basis = tuple(basis)
    clash = set(chart) & set(basis)
    if clash:
        raise ResolutionError(f"names used both as coordinates and generators: {sorted(clash)}",
                              entry.line, entry.column)
    p = _expr(entry.text, chart + basis, entry.line, entry.column)
    try:
        return linear_coefficients(p, chart, basis)
    except ValueError as exc:
        raise ParseError(str(exc), entry.line, entry.column) from None


def _matrix(entry: Entry, chart, nrows: int, ncols: int) -> PolyMatrix:
    text = entry.text.strip()
    col = entry.column
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected a matrix [[..], ..]", entry.line, col)
    rows = []
    inner = text[1:-1]
    if inner.strip():
        for piece, pcol in _split_top(inner, col + 1):
            row_text, rcol = _strip(piece, pcol)
            if not (row_text.startswith("[") and row_text.endswith("]")):
                raise ParseError("expected a matrix row [..]", entry.line, rcol)
            body = row_text[1:-1]
            row = [] if not body.strip() else [
                _expr(p, chart, entry.line, c) for p, c in _split_top(body, rcol + 1)
            ]
            rows.append(row)
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ParseError(f"expected a {nrows}x{ncols} matrix", entry.line, col)
    return PolyMatrix(rows, (nrows, ncols), chart)


def _arg_indices(entry: Entry, frame, arity: int) -> tuple:
    if len(entry.args) != arity:
        raise ParseError(f"expected {arity} arguments", entry.line, entry.arg_column)
    out = []
    for name in entry.args:
        if name not in frame:
            raise ResolutionError(f"unknown generator {name!r}", entry.line, entry.arg_column)
        out.append(frame.index(name))
    return tuple(out)


class SpecDocument:
    """Parsed spec file with lazily built, cached objects."""

    def __init__(self, text: str, source: str = "<string>"):
        self.source = source
        self.blocks = parse_document(text)
        self.by_name = {b.name: b for b in self.blocks}
        self._cache = {}

    @classmethod
    def from_file(cls, path) -> "SpecDocument":
        path = Path(path)
        return cls(path.read_text(), str(path))

    def names(self, kind: str | None = None) -> list:
        return [b.name for b in self.blocks if kind is None or b.kind == kind]

    def block(self, name: str, kinds=None, line: int = 1, column: int = 1) -> Block:
        if name not in self.by_name:
            raise ResolutionError(f"unknown name {name!r}", line, column)
        b = self.by_name[name]
        if kinds is not None and b.kind not in kinds:
            raise ResolutionError(f"{name!r} has kind {b.kind}, expected {' or '.join(kinds)}", line, column)
        return b

    def get(self, name: str, kinds=None, line: int = 1, column: int = 1):
        b = self.block(name, kinds, line, column)
        if name not in self._cache:
            self._cache[name] = getattr(self, f"_build_{b.kind}")(b)
        return self._cache[name]

    def _ref(self, b: Block, kinds):
        if b.ref is None:
            raise ParseError(f"{b.kind} {b.name} needs 'on REF'", b.line, 1)
        return self.get(b.ref, kinds, b.line, b.ref_column)

    # -- builders ---------------------------------------------------------

    def _build_algebroid(self, b: Block) -> FrameAlgebroid:
        base = b.one("base", required=False)
        chart = _names(base) if base else ()
        frame = _names(b.one("frame"))
        clash = set(chart) & set(frame)
        if clash:
            raise ResolutionError(f"names used both as coordinates and generators: {sorted(clash)}", b.line, 1)
        anchor = [PolyVector.zero(len(chart), chart) for _ in frame]
        for e in b.get("anchor"):
            (i,) = _arg_indices(e, frame, 1) if e.args else (None,)
            if i is None:
                raise ParseError("anchor needs a generator: anchor [e] = ...", e.line, e.column)
            anchor[i] = PolyVector(_components(e, chart, len(chart)), chart)
        structure = {}
        for e in b.get("bracket"):
            i, j = _arg_indices(e, frame, 2)
            coeffs = _linear(e, chart, frame)
            if (min(i, j), max(i, j)) in structure:
                raise ParseError("bracket given twice", e.line, e.column)
            structure[(i, j)] = PolyVector(coeffs, chart)
        try:
            return FrameAlgebroid(chart, frame, anchor, structure, name=b.name)
        except ValueError as exc:
            raise ParseError(str(exc), b.line, 1) from None

    def _build_connection(self, b: Block) -> Connection:
        A = self._ref(b, ("algebroid",))
        rank_entry = b.one("rank")
        try:
            n = int(rank_entry.text)
        except ValueError:
            raise ParseError("rank must be a natural number", rank_entry.line, rank_entry.column) from None
        mats = [PolyMatrix.zeros(n, n, A.chart) for _ in range(A.rank)]
        for e in b.get("christoffel"):
            (i,) = _arg_indices(e, A.frame, 1)
            mats[i] = _matrix(e, A.chart, n, n)
        return Connection(A, mats, name=b.name, rank=n)

    def _build_vb(self, b: Block) -> SplitVB:
        A = self._ref(b, ("algebroid",))
        kind_entry = b.one("kind")
        kind = kind_entry.text
        if kind not in VB_KINDS:
            raise ParseError(f"unknown vb kind {kind!r}", kind_entry.line, kind_entry.column)
        try:
            if kind in ("trivial-core", "full-core", "gauge"):
                ce = b.one("connection")
                nabla = self.get(ce.text, ("connection",), ce.line, ce.column)
                if nabla.algebroid != A:
                    raise ResolutionError("connection is over a different algebroid", ce.line, ce.column)
                if kind == "trivial-core":
                    return build_trivial_core(A, nabla, name=b.name)
                if kind == "full-core":
                    return build_full_core(A, nabla, name=b.name)
                return gauge_vb(A, nabla, name=b.name)
            if kind == "tangent":
                return build_tangent(A, name=b.name)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), b.line, 1) from None
        return self._build_custom_vb(A, b)

    def _build_custom_vb(self, A: FrameAlgebroid, b: Block) -> SplitVB:
        fe = b.one("fiber", required=False)
        ce = b.one("core", required=False)
        fiber = _names(fe) if fe else ()
        core = _names(ce) if ce else ()
        T = A.chart + fiber
        frame = A.frame + core
        if len(set(T) | set(frame)) != len(T) + len(frame):
            raise ResolutionError("fiber, core and base names must be distinct", b.line, 1)
        pulled = A.rechart(T)
        anchor = list(pulled.anchor) + [PolyVector.zero(len(T), T) for _ in core]
        for e in b.get("anchor"):
            (i,) = _arg_indices(e, frame, 1)
            anchor[i] = PolyVector(_components(e, T, len(T)), T)
        z = Polynomial.zero(T)
        structure = {key: PolyVector(list(sec.components) + [z] * len(core), T)
                     for key, sec in pulled.structure.items()}
        for e in b.get("bracket"):
            i, j = _arg_indices(e, frame, 2)
            coeffs = _linear(e, T, frame)
            structure.pop((min(i, j), max(i, j)), None)
            structure[(i, j)] = PolyVector(coeffs, T)
        try:
            total = FrameAlgebroid(T, frame, anchor, structure, name=b.name)
            return SplitVB(A, fiber, core, total, kind="custom", name=b.name)
        except ValueError as exc:
            raise ParseError(str(exc), b.line, 1) from None

    def _build_cochain(self, b: Block) -> DefCochain:
        target = self._ref(b, ("algebroid", "vb"))
        A = target.total if isinstance(target, SplitVB) else target
        de = b.one("degree")
        try:
            k = int(de.text)
        except ValueError:
            raise ParseError("degree must be a natural number", de.line, de.column) from None
        values = {}
        for e in b.get("value"):
            key = _arg_indices(e, A.frame, k)
            values[key] = PolyVector(_linear(e, A.chart, A.frame), A.chart)
        symbols = {}
        for e in b.get("symbol"):
            if k == 0:
                raise ParseError("degree-0 cochains have no symbol", e.line, e.column)
            key = _arg_indices(e, A.frame, k - 1)
            symbols[key] = PolyVector(_components(e, A.chart, A.dim), A.chart)
        try:
            if k == 0 and () not in values:
                values[()] = A.zero_section()
            return DefCochain(A, k, values, symbols)
        except ValueError as exc:
            raise ParseError(str(exc), b.line, 1) from None

    def cochain_vb(self, name: str):
        """The VB-algebroid a cochain block lives on, if any."""
        b = self.block(name, ("cochain",))
        target = self.get(b.ref, ("algebroid", "vb"), b.line, b.ref_column)
        return target if isinstance(target, SplitVB) else None

    def _build_triple(self, b: Block) -> IMTriple:
        W = self._ref(b, ("vb",))
        F = W.fat
        x = W.chart
        internal = b.one("internal", required=False)
        if internal is not None:
            return internal_triple(W, PolyVector(_linear(internal, x, F.frame), x))
        common = b.one("symbol", required=False)
        fields = {}
        for key in ("fat", "side", "core"):
            e = b.one(f"{key}_symbol", required=False) or common
            fields[key] = (PolyVector(_components(e, x, len(x)), x) if e is not None
                           else PolyVector.zero(len(x), x))
        fat_cols = [PolyVector.zero(F.rank, x) for _ in range(F.rank)]
        for e in b.get("fat"):
            (i,) = _arg_indices(e, F.frame, 1)
            fat_cols[i] = PolyVector(_linear(e, x, F.frame), x)
        fat_matrix = PolyMatrix.from_columns(fat_cols, F.rank, x)
        se = b.one("side", required=False)
        side = _matrix(se, x, W.n, W.n) if se else PolyMatrix.zeros(W.n, W.n, x)
        ce = b.one("core", required=False)
        core = _matrix(ce, x, W.k, W.k) if ce else PolyMatrix.zeros(W.k, W.k, x)
        return IMTriple(BundleDerivation(fields["fat"], fat_matrix),
                        BundleDerivation(fields["side"], side),
                        BundleDerivation(fields["core"], core))

    def imsection_connection(self, name: str) -> Connection:
        b = self.block(name, ("imsection",))
        return self._ref(b, ("connection",))

    def _build_imsection(self, b: Block) -> IMSectionCoords:
        nabla = self._ref(b, ("connection",))
        A = nabla.algebroid
        x = A.chart
        xe = b.one("X", required=False)
        X = PolyVector(_components(xe, x, len(x)), x) if xe else PolyVector.zero(len(x), x)
        ue = b.one("U", required=False)
        U = _matrix(ue, x, A.rank, A.rank) if ue else PolyMatrix.zeros(A.rank, A.rank, x)
        ve = b.one("V", required=False)
        V = _matrix(ve, x, nabla.rank, nabla.rank) if ve else PolyMatrix.zeros(nabla.rank, nabla.rank, x)
        return IMSectionCoords(X, U, V)


def format_cochain_block(c: DefCochain, name: str, ref: str) -> str:
    """Re-parseable cochain block in canonical form."""
    lines = [f"cochain {name} on {ref}", f"  degree {c.degree}"]
    A = c.parent
    for key in sorted(c.values):
        lines.append(f"  value [{', '.join(A.frame[i] for i in key)}] = {A.format_section(c.values[key])}")
    for key in sorted(c.symbols):
        comps = ", ".join(str(p) for p in c.symbols[key].components)
        lines.append(f"  symbol [{', '.join(A.frame[i] for i in key)}] = {comps}")
    lines.append("end")
    return "\n".join(lines)
