"""Lie algebroids given by structure functions on a frame.

A :class:`FrameAlgebroid` over a chart ``x = (x^1..x^m)`` has a frame
``e_1..e_r`` with anchor components ``rho^i_a`` and brackets
``[e_b, e_c] = c^a_bc e_a``.  Sections are :class:`PolyVector` objects of
length ``r`` holding frame coefficients.

Derivations of a trivial bundle ``E`` of rank ``n`` are pairs (symbol,
matrix) with ``D e_A = V^B_A e_B``, so the matrix column is the source frame
element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .report import Report, failed, passed
from .symexpr import Polynomial, PolyMatrix, PolyVector, format_combination

Section = PolyVector


def format_vector_field(field: PolyVector) -> str:
    """Vector field as ``f*d/dx + ...``."""
    parts = []
    for comp, name in zip(field.components, field.variables):
        if comp:
            parts.append(f"({comp})*d/d{name}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FrameAlgebroid:
    chart: tuple
    frame: tuple
    anchor: tuple
    structure: Mapping
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "chart", tuple(self.chart))
        object.__setattr__(self, "frame", tuple(self.frame))
        object.__setattr__(self, "anchor", tuple(self.anchor))
        if len(set(self.frame)) != len(self.frame):
            raise ValueError("repeated frame name")
        if len(self.anchor) != self.rank:
            raise ValueError(f"anchor has {len(self.anchor)} entries for rank {self.rank}")
        for v in self.anchor:
            if len(v) != len(self.chart) or v.variables != self.chart:
                raise ValueError("anchor components must be vector fields on the chart")
        clean = {}
        for (b, c), sec in dict(self.structure).items():
            if b == c:
                if sec:
                    raise ValueError("bracket of a frame element with itself must vanish")
                continue
            if len(sec) != self.rank or sec.variables != self.chart:
                raise ValueError("bracket values must be sections on the chart")
            if b > c:
                b, c, sec = c, b, -sec
            if (b, c) in clean and clean[(b, c)] != sec:
                raise ValueError(f"conflicting brackets for ({self.frame[b]}, {self.frame[c]})")
            if sec:
                clean[(b, c)] = sec
        object.__setattr__(self, "structure", clean)

    @property
    def rank(self) -> int:
        return len(self.frame)

    @property
    def dim(self) -> int:
        return len(self.chart)

    def zero_section(self) -> Section:
        return PolyVector.zero(self.rank, self.chart)

    def basis(self, i: int) -> Section:
        return PolyVector.basis(self.rank, i, self.chart)

    def index(self, name: str) -> int:
        return self.frame.index(name)

    def constant(self, value) -> Polynomial:
        return Polynomial.constant(self.chart, value)

    def frame_bracket(self, b: int, c: int) -> Section:
        if b == c:
            return self.zero_section()
        if b < c:
            return self.structure.get((b, c), self.zero_section())
        return -self.structure.get((c, b), self.zero_section())

    def structure_function(self, a: int, b: int, c: int) -> Polynomial:
        return self.frame_bracket(b, c)[a]

    def anchor_of(self, s: Section) -> PolyVector:
        out = PolyVector.zero(self.dim, self.chart)
        for coeff, rho in zip(s.components, self.anchor):
            if coeff:
                out = out + rho.scale(coeff)
        return out

    def bracket(self, a: Section, b: Section) -> Section:
        self._check_section(a)
        self._check_section(b)
        ra = self.anchor_of(a)
        rb = self.anchor_of(b)
        out = ra.apply_each(b) - rb.apply_each(a)
        for (i, j), sec in self.structure.items():
            coeff = a[i] * b[j] - a[j] * b[i]
            if coeff:
                out = out + sec.scale(coeff)
        return out

    def _check_section(self, s: Section):
        if len(s) != self.rank or s.variables != self.chart:
            raise ValueError(f"section of length {len(s)} on {s.variables} does not belong to this algebroid")

    def format_section(self, s: Section) -> str:
        return format_combination(s.components, self.chart, self.frame)

    def rechart(self, chart: Sequence[str]) -> "FrameAlgebroid":
        """Same frame data pulled back to a larger chart."""
        return FrameAlgebroid(
            chart,
            self.frame,
            [_extend_field(v, chart) for v in self.anchor],
            {k: v.rechart(chart) for k, v in self.structure.items()},
            self.name,
        )


def _extend_field(field: PolyVector, chart: Sequence[str]) -> PolyVector:
    chart = tuple(chart)
    comps = []
    for name in chart:
        if name in field.variables:
            comps.append(field[field.variables.index(name)].rechart(chart))
        else:
            comps.append(Polynomial.zero(chart))
    return PolyVector(comps, chart)


def bracket(A: FrameAlgebroid, a: Section, b: Section) -> Section:
    return A.bracket(a, b)


def jacobiator(A: FrameAlgebroid, a: Section, b: Section, c: Section) -> Section:
    return (A.bracket(a, A.bracket(b, c)) + A.bracket(b, A.bracket(c, a))
            + A.bracket(c, A.bracket(a, b)))


def check_jacobi(A: FrameAlgebroid) -> Report:
    """Jacobi identity on frame triples, then on triples with a coordinate weight.

    The weighted triples (e_i, e_j, x^l e_0) see the anchor defect
    rho([e_i, e_j]) - [rho(e_i), rho(e_j)], which frame triples alone miss.
    """
    for i, j, k in combinations(range(A.rank), 3):
        res = jacobiator(A, A.basis(i), A.basis(j), A.basis(k))
        if res:
            return failed("jacobi", f"({A.frame[i]}, {A.frame[j]}, {A.frame[k]}): {A.format_section(res)}")
    for i, j in combinations(range(A.rank), 2):
        for name in A.chart:
            weighted = A.basis(0).scale(Polynomial.variable(A.chart, name))
            res = jacobiator(A, A.basis(i), A.basis(j), weighted)
            if res:
                return failed("jacobi", f"({A.frame[i]}, {A.frame[j]}, {name}*{A.frame[0]}): "
                                        f"{A.format_section(res)}")
    return passed("jacobi")


def check_anchor_compat(A: FrameAlgebroid) -> Report:
    for i, j in combinations(range(A.rank), 2):
        lhs = A.anchor_of(A.frame_bracket(i, j))
        rhs = A.anchor[i].lie_bracket(A.anchor[j])
        if lhs != rhs:
            return failed("anchor", f"({A.frame[i]}, {A.frame[j]}): {format_vector_field(lhs - rhs)}")
    return passed("anchor")


# ---------------------------------------------------------------------------
# derivations of trivial bundles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BundleDerivation:
    symbol: PolyVector
    matrix: PolyMatrix

    def __post_init__(self):
        if self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError("derivation matrix must be square")
        if self.symbol.variables != self.matrix.variables:
            raise ValueError("symbol and matrix live on different charts")
        if len(self.symbol) != len(self.symbol.variables):
            raise ValueError("symbol must be a vector field on the chart")

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    @property
    def chart(self) -> tuple:
        return self.symbol.variables

    @classmethod
    def zero(cls, n: int, chart: Sequence[str]) -> "BundleDerivation":
        return cls(PolyVector.zero(len(chart), chart), PolyMatrix.zeros(n, n, chart))

    def is_zero(self) -> bool:
        return self.symbol.is_zero() and self.matrix.is_zero()

    def __add__(self, other: "BundleDerivation") -> "BundleDerivation":
        return BundleDerivation(self.symbol + other.symbol, self.matrix + other.matrix)

    def __sub__(self, other: "BundleDerivation") -> "BundleDerivation":
        return BundleDerivation(self.symbol - other.symbol, self.matrix - other.matrix)

    def __neg__(self):
        return BundleDerivation(-self.symbol, -self.matrix)

    def scale(self, f) -> "BundleDerivation":
        return BundleDerivation(self.symbol.scale(f), self.matrix.scale(f))

    def apply(self, e: PolyVector) -> PolyVector:
        if len(e) != self.rank:
            raise ValueError(f"section of length {len(e)} for a rank {self.rank} bundle")
        return self.symbol.apply_each(e) + self.matrix @ e

    def __str__(self):
        return f"({format_vector_field(self.symbol)}; {self.matrix})"


def derivation_apply(D: BundleDerivation, e: PolyVector) -> PolyVector:
    return D.apply(e)


def derivation_commutator(D1: BundleDerivation, D2: BundleDerivation) -> BundleDerivation:
    if D1.rank != D2.rank or D1.chart != D2.chart:
        raise ValueError("derivations of different bundles")
    symbol = D1.symbol.lie_bracket(D2.symbol)
    matrix = (D2.matrix.derive(D1.symbol) - D1.matrix.derive(D2.symbol)
              + D1.matrix @ D2.matrix - D2.matrix @ D1.matrix)
    return BundleDerivation(symbol, matrix)


def dual_derivation(D: BundleDerivation) -> BundleDerivation:
    return BundleDerivation(D.symbol, -D.matrix.transpose())


def hom_action(X: PolyVector, V_target: PolyMatrix, M: PolyMatrix, V_source: PolyMatrix) -> PolyMatrix:
    """Induced derivation of Hom(S, T) applied to M: X(M) + V_T M - M V_S."""
    return M.derive(X) + V_target @ M - M @ V_source


# ---------------------------------------------------------------------------
# connections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Connection:
    algebroid: FrameAlgebroid
    christoffel: tuple
    name: str = ""
    rank: int = -1

    def __post_init__(self):
        object.__setattr__(self, "christoffel", tuple(self.christoffel))
        if self.christoffel:
            object.__setattr__(self, "rank", self.christoffel[0].shape[0])
        elif self.rank < 0:
            raise ValueError("bundle rank is needed when the algebroid has no frame")
        A = self.algebroid
        if len(self.christoffel) != A.rank:
            raise ValueError(f"{len(self.christoffel)} Christoffel matrices for rank {A.rank}")
        shapes = {m.shape for m in self.christoffel}
        if len(shapes) > 1 or any(s[0] != s[1] for s in shapes):
            raise ValueError("Christoffel matrices must be square of a common size")
        for m in self.christoffel:
            if m.variables != A.chart:
                raise ValueError("Christoffel symbols must live on the base chart")

    def derivation(self, alpha: int) -> BundleDerivation:
        return BundleDerivation(self.algebroid.anchor[alpha], self.christoffel[alpha])

    def along(self, a: Section) -> BundleDerivation:
        """The derivation nabla_a of E."""
        A = self.algebroid
        out = BundleDerivation.zero(self.rank, A.chart)
        for coeff, alpha in zip(a.components, range(A.rank)):
            if coeff:
                out = out + self.derivation(alpha).scale(coeff)
        return out

    def apply(self, a: Section, e: PolyVector) -> PolyVector:
        return self.along(a).apply(e)


def zero_connection(A: FrameAlgebroid, n: int) -> Connection:
    return Connection(A, [PolyMatrix.zeros(n, n, A.chart) for _ in range(A.rank)], rank=n)


def connection_apply(nabla: Connection, a: Section, e: PolyVector) -> PolyVector:
    return nabla.apply(a, e)


def curvature(nabla: Connection, i: int, j: int) -> PolyMatrix:
    A = nabla.algebroid
    comm = derivation_commutator(nabla.derivation(i), nabla.derivation(j))
    return (comm - nabla.along(A.frame_bracket(i, j))).matrix


def check_flatness(A: FrameAlgebroid, nabla: Connection) -> Report:
    if nabla.algebroid != A:
        raise ValueError("connection belongs to a different algebroid")
    for i, j in combinations(range(A.rank), 2):
        R = curvature(nabla, i, j)
        if not R.is_zero():
            return failed("flatness", f"({A.frame[i]}, {A.frame[j]}): {R}")
    return passed("flatness")


# ---------------------------------------------------------------------------
# gauge algebroid
# ---------------------------------------------------------------------------


def gauge_frame_names(n: int, chart: Sequence[str]) -> tuple:
    return tuple(f"d{x}" for x in chart) + tuple(f"n{a + 1}{b + 1}" for a in range(n) for b in range(n))


def derivation_to_gauge_section(D: BundleDerivation) -> Section:
    """Coefficients of a derivation in the frame (d/dx^i, 0), (0, E_AB)."""
    n = D.rank
    comps = list(D.symbol.components) + [D.matrix[a, b] for a in range(n) for b in range(n)]
    return PolyVector(comps, D.chart)


def gauge_section_to_derivation(s: Section, n: int) -> BundleDerivation:
    chart = s.variables
    m = len(chart)
    symbol = PolyVector(s.components[:m], chart)
    rows = [[s[m + a * n + b] for b in range(n)] for a in range(n)]
    return BundleDerivation(symbol, PolyMatrix(rows, (n, n), chart))


def gauge_frame_derivations(n: int, chart: Sequence[str]) -> list:
    chart = tuple(chart)
    m = len(chart)
    out = []
    for i in range(m):
        out.append(BundleDerivation(PolyVector.basis(m, i, chart), PolyMatrix.zeros(n, n, chart)))
    for a in range(n):
        for b in range(n):
            out.append(BundleDerivation(PolyVector.zero(m, chart), PolyMatrix.unit(n, n, a, b, chart)))
    return out


def gauge_algebroid(n: int, chart: Sequence[str]) -> FrameAlgebroid:
    chart = tuple(chart)
    gens = gauge_frame_derivations(n, chart)
    structure = {}
    for i, j in combinations(range(len(gens)), 2):
        comm = derivation_commutator(gens[i], gens[j])
        if not comm.is_zero():
            structure[(i, j)] = derivation_to_gauge_section(comm)
    anchor = [g.symbol for g in gens]
    return FrameAlgebroid(chart, gauge_frame_names(n, chart), anchor, structure, name=f"der(R^{n})")
