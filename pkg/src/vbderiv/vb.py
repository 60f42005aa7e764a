"""Split VB-algebroids presented on the total space of the side bundle.

The total algebroid ``W -> E`` lives on the chart ``(x, v)`` where ``v`` are
fiber coordinates of ``E``.  Its frame is the ``r`` linear generators
followed by the ``k`` core generators.  Sections of the fat algebroid are
written in the frame ``a~_1..a~_r`` followed by ``v^B c^_A`` (index
``r + A*n + B``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .algebroid import (
    BundleDerivation,
    Connection,
    FrameAlgebroid,
    Section,
    check_flatness,
    format_vector_field,
)
from .defcomplex import DefCochain, bracket_with_derivation, cochain_eval, cochain_symbol_eval
from .report import Report, failed, passed
from .symexpr import Polynomial, PolyMatrix, PolyVector


class NotLinearError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SplitVB:
    base: FrameAlgebroid
    fiber: tuple
    core_names: tuple
    total: FrameAlgebroid
    kind: str = "custom"
    name: str = ""
    linear_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "fiber", tuple(self.fiber))
        object.__setattr__(self, "core_names", tuple(self.core_names))
        A = self.base
        object.__setattr__(self, "linear_names", tuple(self.linear_names) or A.frame)
        if len(self.linear_names) != A.rank:
            raise ValueError("one linear generator per base frame element")
        if self.total.chart != A.chart + self.fiber:
            raise ValueError("total chart must be the base chart followed by the fiber coordinates")
        if self.total.frame != self.linear_names + self.core_names:
            raise ValueError("total frame must list the linear generators, then the core generators")

    @property
    def r(self) -> int:
        return self.base.rank

    @property
    def n(self) -> int:
        return len(self.fiber)

    @property
    def k(self) -> int:
        return len(self.core_names)

    @property
    def chart(self) -> tuple:
        return self.base.chart

    @property
    def total_chart(self) -> tuple:
        return self.total.chart

    def is_core_index(self, i: int) -> bool:
        return i >= self.r

    def fiber_var(self, b: int) -> Polynomial:
        return Polynomial.variable(self.total_chart, self.fiber[b])

    # -- fat frame --------------------------------------------------------

    @property
    def fat_rank(self) -> int:
        return self.r + self.n * self.k

    @property
    def fat_names(self) -> tuple:
        names = list(self.linear_names)
        for a in range(self.k):
            for b in range(self.n):
                names.append(f"{self.fiber[b]}_{self.core_names[a]}")
        return tuple(names)

    def hom_index(self, a: int, b: int) -> int:
        """Fat index of the generator v^b times the core generator a."""
        return self.r + a * self.n + b

    def fat_to_total(self, s: Section) -> Section:
        if len(s) != self.fat_rank or s.variables != self.chart:
            raise ValueError("not a fat section")
        T = self.total_chart
        comps = [s[i].rechart(T) for i in range(self.r)]
        for a in range(self.k):
            acc = Polynomial.zero(T)
            for b in range(self.n):
                f = s[self.hom_index(a, b)]
                if f:
                    acc = acc + f.rechart(T) * self.fiber_var(b)
            comps.append(acc)
        return PolyVector(comps, T)

    def total_to_fat(self, t: Section) -> Section:
        if not is_linear_section(self, t):
            raise NotLinearError(f"not a linear section: {self.total.format_section(t)}")
        x = self.chart
        comps = [t[i].rechart(x) for i in range(self.r)]
        for a in range(self.k):
            g = t[self.r + a]
            for b in range(self.n):
                comps.append(g.derivative(self.fiber[b]).rechart(x))
        return PolyVector(comps, x)

    def core_to_total(self, chi: PolyVector) -> Section:
        """Core section of W -> E built from a section of C."""
        T = self.total_chart
        z = Polynomial.zero(T)
        return PolyVector([z] * self.r + [c.rechart(T) for c in chi.components], T)

    def total_to_core(self, t: Section) -> PolyVector:
        if not is_core_section(self, t):
            raise NotLinearError(f"not a core section: {self.total.format_section(t)}")
        return PolyVector([t[self.r + a].rechart(self.chart) for a in range(self.k)], self.chart)

    def fat_basis(self, i: int) -> Section:
        return PolyVector.basis(self.fat_rank, i, self.chart)

    def fat_generators(self) -> list:
        """Fat frame written as linear sections of W -> E."""
        return [self.fat_to_total(self.fat_basis(i)) for i in range(self.fat_rank)]

    def core_generators(self) -> list:
        return [self.total.basis(self.r + a) for a in range(self.k)]

    @cached_property
    def fat(self) -> FrameAlgebroid:
        return _build_fat(self)


# ---------------------------------------------------------------------------
# shape predicates
# ---------------------------------------------------------------------------


def _v_degrees(W: SplitVB, p: Polynomial) -> set:
    return p.degree_in(W.fiber)


def is_linear_section(W: SplitVB, t: Section) -> bool:
    return (all(_v_degrees(W, t[i]) <= {0} for i in range(W.r))
            and all(_v_degrees(W, t[W.r + a]) <= {1} for a in range(W.k)))


def is_core_section(W: SplitVB, t: Section) -> bool:
    return (all(not t[i] for i in range(W.r))
            and all(_v_degrees(W, t[W.r + a]) <= {0} for a in range(W.k)))


def euler_weight_ok(W: SplitVB, t: Section, weight: int) -> bool:
    """t lies in the eigenspace of the Euler derivation with the given eigenvalue."""
    return (all(_v_degrees(W, t[i]) <= ({weight} if weight >= 0 else set()) for i in range(W.r))
            and all(_v_degrees(W, t[W.r + a]) <= ({weight + 1} if weight + 1 >= 0 else set())
                    for a in range(W.k)))


def field_weight_ok(W: SplitVB, field: PolyVector, weight: int) -> bool:
    """[Euler field, field] = weight * field, checked by degree inspection."""
    m = len(W.chart)
    horizontal = field.components[:m]
    vertical = field.components[m:]
    return (all(_v_degrees(W, c) <= ({weight} if weight >= 0 else set()) for c in horizontal)
            and all(_v_degrees(W, c) <= ({weight + 1} if weight + 1 >= 0 else set()) for c in vertical))


def is_linear_field(W: SplitVB, field: PolyVector) -> bool:
    return field_weight_ok(W, field, 0)


def is_vertical_constant(W: SplitVB, field: PolyVector) -> bool:
    return field_weight_ok(W, field, -1)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _fresh_names(prefix: str, count: int, taken) -> tuple:
    taken = set(taken)
    names = []
    for i in range(count):
        name = f"{prefix}{i + 1}"
        while name in taken:
            name = "_" + name
        names.append(name)
        taken.add(name)
    return tuple(names)


def build_trivial_core(A: FrameAlgebroid, nabla: Connection, check: bool = True, name: str = "") -> SplitVB:
    """Action algebroid of a representation, as a VB-algebroid with zero core."""
    if check:
        flat = check_flatness(A, nabla)
        if not flat:
            raise ValueError(f"connection is not flat: {flat.witness}")
    n = nabla.rank
    fiber = _fresh_names("v", n, A.chart + A.frame)
    T = A.chart + fiber
    anchor = []
    for alpha in range(A.rank):
        comps = [c.rechart(T) for c in A.anchor[alpha].components]
        G = nabla.christoffel[alpha]
        for b in range(n):
            acc = Polynomial.zero(T)
            for a in range(n):
                if G[b, a]:
                    acc = acc - G[b, a].rechart(T) * Polynomial.variable(T, fiber[a])
            comps.append(acc)
        anchor.append(PolyVector(comps, T))
    structure = {key: sec.rechart(T) for key, sec in A.structure.items()}
    total = FrameAlgebroid(T, A.frame, anchor, structure, name=f"{A.name}|action")
    return SplitVB(A, fiber, (), total, kind="trivial-core", name=name)


def build_full_core(A: FrameAlgebroid, nabla: Connection, check: bool = True, name: str = "") -> SplitVB:
    """Semidirect product of A with a representation C, as a VB-algebroid over M."""
    if check:
        flat = check_flatness(A, nabla)
        if not flat:
            raise ValueError(f"connection is not flat: {flat.witness}")
    k = nabla.rank
    r = A.rank
    core = _fresh_names("c", k, A.chart + A.frame)
    x = A.chart
    zero_field = PolyVector.zero(A.dim, x)
    anchor = list(A.anchor) + [zero_field] * k
    structure = {key: PolyVector(list(sec.components) + [Polynomial.zero(x)] * k, x)
                 for key, sec in A.structure.items()}
    for alpha in range(r):
        G = nabla.christoffel[alpha]
        for a in range(k):
            comps = [Polynomial.zero(x)] * r + [G[b, a] for b in range(k)]
            structure[(alpha, r + a)] = PolyVector(comps, x)
    total = FrameAlgebroid(x, A.frame + core, anchor, structure, name=f"{A.name}|semidirect")
    return SplitVB(A, (), core, total, kind="full-core", name=name)


def _lift_vb(A: FrameAlgebroid, nabla: Connection | None, kind: str, name: str) -> SplitVB:
    """Shared construction of the tangent and gauge VB-algebroids.

    The side bundle is der E with fiber coordinates xdot^i (symbol part)
    and v_AB (matrix part); the core is A.  The tangent case is E = 0.
    """
    x = A.chart
    m = A.dim
    r = A.rank
    n = nabla.rank if nabla is not None else 0
    taken = set(x) | set(A.frame)
    xdot = []
    for name_ in x:
        cand = f"{name_}dot"
        while cand in taken:
            cand = "_" + cand
        xdot.append(cand)
        taken.add(cand)
    vs = []
    for a in range(n):
        for b in range(n):
            cand = f"v{a + 1}{b + 1}"
            while cand in taken:
                cand = "_" + cand
            vs.append(cand)
            taken.add(cand)
    fiber = tuple(xdot) + tuple(vs)
    T = x + fiber
    linear_names = []
    core_names = []
    for e in A.frame:
        lin = f"d{e}"
        while lin in taken:
            lin = "_" + lin
        taken.add(lin)
        linear_names.append(lin)
        hat = f"{e}hat"
        while hat in taken:
            hat = "_" + hat
        taken.add(hat)
        core_names.append(hat)
    var = {v: Polynomial.variable(T, v) for v in fiber}

    def vidx(a, b):
        return vs[a * n + b]

    def xdot_apply(f: Polynomial) -> Polynomial:
        acc = Polynomial.zero(T)
        for j in range(m):
            d = f.derivative(x[j])
            if d:
                acc = acc + d.rechart(T) * var[xdot[j]]
        return acc

    anchor = []
    for alpha in range(r):
        rho = A.anchor[alpha]
        comps = [c.rechart(T) for c in rho.components]
        comps += [xdot_apply(rho[i]) for i in range(m)]
        if n:
            G = [[nabla.christoffel[alpha][a, b].rechart(T) for b in range(n)] for a in range(n)]
            Graw = nabla.christoffel[alpha]
            for a in range(n):
                for b in range(n):
                    acc = xdot_apply(Graw[a, b])
                    for c in range(n):
                        if G[c][b]:
                            acc = acc + G[c][b] * var[vidx(a, c)]
                        if G[a][c]:
                            acc = acc - G[a][c] * var[vidx(c, b)]
                    comps.append(acc)
        anchor.append(PolyVector(comps, T))
    for alpha in range(r):
        rho = A.anchor[alpha]
        comps = [Polynomial.zero(T)] * m + [c.rechart(T) for c in rho.components]
        for a in range(n):
            for b in range(n):
                comps.append(nabla.christoffel[alpha][a, b].rechart(T))
        anchor.append(PolyVector(comps, T))
    structure = {}
    zero = Polynomial.zero(T)
    for (a, b), sec in A.structure.items():
        comps = [c.rechart(T) for c in sec.components] + [xdot_apply(c) for c in sec.components]
        structure[(a, b)] = PolyVector(comps, T)
    for alpha in range(r):
        for beta in range(r):
            sec = A.frame_bracket(alpha, beta)
            if sec:
                comps = [zero] * r + [c.rechart(T) for c in sec.components]
                structure[(alpha, r + beta)] = PolyVector(comps, T)
    total = FrameAlgebroid(T, tuple(linear_names) + tuple(core_names), anchor, structure,
                           name=f"{A.name}|{kind}")
    return SplitVB(A, fiber, tuple(core_names), total, kind=kind, name=name,
                   linear_names=tuple(linear_names))


def build_tangent(A: FrameAlgebroid, name: str = "") -> SplitVB:
    return _lift_vb(A, None, "tangent", name)


def gauge_vb(A: FrameAlgebroid, nabla: Connection, n: int | None = None, check: bool = True,
             name: str = "") -> SplitVB:
    if n is not None and n != nabla.rank:
        raise ValueError(f"connection has rank {nabla.rank}, not {n}")
    if check:
        flat = check_flatness(A, nabla)
        if not flat:
            raise ValueError(f"connection is not flat: {flat.witness}")
    return _lift_vb(A, nabla, "gauge", name)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def validate_vb_axioms(W: SplitVB) -> Report:
    A = W.base
    T = W.total
    m = A.dim
    names = T.frame
    for alpha in range(W.r):
        field = T.anchor[alpha]
        if not is_linear_field(W, field):
            return failed("vb-axioms", f"anchor not linear at {names[alpha]}: {format_vector_field(field)}")
        horizontal = PolyVector([c.rechart(A.chart) for c in field.components[:m]], A.chart)
        if horizontal != A.anchor[alpha]:
            return failed("vb-axioms", f"anchor of {names[alpha]} does not cover the base anchor")
    for a in range(W.k):
        field = T.anchor[W.r + a]
        if not is_vertical_constant(W, field):
            return failed("vb-axioms", f"anchor not a vertical lift at {names[W.r + a]}: "
                                       f"{format_vector_field(field)}")
    for i, j in combinations(range(T.rank), 2):
        sec = T.frame_bracket(i, j)
        ci, cj = W.is_core_index(i), W.is_core_index(j)
        label = f"[{names[i]}, {names[j]}]"
        if ci and cj:
            if sec:
                return failed("vb-axioms", f"{label} = {T.format_section(sec)} is not zero")
        elif ci or cj:
            if not is_core_section(W, sec):
                return failed("vb-axioms", f"{label} = {T.format_section(sec)} is not a core section")
        else:
            if not is_linear_section(W, sec):
                return failed("vb-axioms", f"{label} = {T.format_section(sec)} is not a linear section")
            lin = PolyVector([sec[g].rechart(A.chart) for g in range(W.r)], A.chart)
            if lin != A.frame_bracket(i, j):
                return failed("vb-axioms", f"{label} does not cover the base bracket")
    return passed("vb-axioms")


# ---------------------------------------------------------------------------
# fat algebroid and representations
# ---------------------------------------------------------------------------


def _build_fat(W: SplitVB) -> FrameAlgebroid:
    x = W.chart
    gens = W.fat_generators()
    structure = {}
    for i, j in combinations(range(W.fat_rank), 2):
        sec = W.total.bracket(gens[i], gens[j])
        if sec:
            structure[(i, j)] = W.total_to_fat(sec)
    zero_field = PolyVector.zero(len(x), x)
    anchor = list(W.base.anchor) + [zero_field] * (W.n * W.k)
    return FrameAlgebroid(x, W.fat_names, anchor, structure, name=f"fat({W.name or W.kind})")


def fat_algebroid(W: SplitVB) -> FrameAlgebroid:
    return W.fat


def fat_projection(W: SplitVB, s: Section) -> Section:
    return PolyVector(s.components[:W.r], W.chart)


def derivation_of_linear_field(W: SplitVB, field: PolyVector) -> BundleDerivation:
    """The derivation of E matching a linear vector field on E.

    A linear field X^i d/dx^i + M^B_A v^A d/dv^B acts on fiberwise linear
    functions, i.e. on sections of E*; the dual derivation of E has matrix -M.
    """
    if not is_linear_field(W, field):
        raise NotLinearError(f"not a linear vector field: {format_vector_field(field)}")
    x = W.chart
    m = len(x)
    symbol = PolyVector([c.rechart(x) for c in field.components[:m]], x)
    rows = [[-field[m + b].derivative(W.fiber[a]).rechart(x) for a in range(W.n)] for b in range(W.n)]
    return BundleDerivation(symbol, PolyMatrix(rows, (W.n, W.n), x))


def linear_field_of(W: SplitVB, D: BundleDerivation) -> PolyVector:
    """Inverse of :func:`derivation_of_linear_field`."""
    T = W.total_chart
    comps = [c.rechart(T) for c in D.symbol.components]
    for b in range(W.n):
        acc = Polynomial.zero(T)
        for a in range(W.n):
            if D.matrix[b, a]:
                acc = acc - D.matrix[b, a].rechart(T) * W.fiber_var(a)
        comps.append(acc)
    return PolyVector(comps, T)


def vertical_lift(W: SplitVB, e: PolyVector) -> PolyVector:
    T = W.total_chart
    comps = [Polynomial.zero(T)] * len(W.chart) + [c.rechart(T) for c in e.components]
    return PolyVector(comps, T)


def side_derivation(W: SplitVB, s: Section) -> BundleDerivation:
    """psi^s_s: the derivation of E whose linear vector field is the anchor of s."""
    return derivation_of_linear_field(W, W.total.anchor_of(W.fat_to_total(s)))


def core_derivation(W: SplitVB, s: Section) -> BundleDerivation:
    """psi^c_s, read off from brackets with the core generators."""
    x = W.chart
    t = W.fat_to_total(s)
    cols = []
    for a in range(W.k):
        sec = W.total.bracket(t, W.total.basis(W.r + a))
        cols.append(W.total_to_core(sec))
    symbol = W.base.anchor_of(fat_projection(W, s))
    return BundleDerivation(symbol, PolyMatrix.from_columns(cols, W.k, x))


def side_representation(W: SplitVB, s: Section, e: PolyVector) -> PolyVector:
    return side_derivation(W, s).apply(e)


def core_representation(W: SplitVB, s: Section, chi: PolyVector) -> PolyVector:
    return core_derivation(W, s).apply(chi)


def side_connection(W: SplitVB) -> Connection:
    F = W.fat
    return Connection(F, [side_derivation(W, W.fat_basis(i)).matrix for i in range(W.fat_rank)], rank=W.n)


def core_connection(W: SplitVB) -> Connection:
    F = W.fat
    return Connection(F, [core_derivation(W, W.fat_basis(i)).matrix for i in range(W.fat_rank)], rank=W.k)


def core_anchor(W: SplitVB) -> PolyMatrix:
    """alpha: C -> E as an n x k matrix over the base chart."""
    x = W.chart
    m = len(x)
    cols = []
    for a in range(W.k):
        field = W.total.anchor[W.r + a]
        cols.append(PolyVector([field[m + b].rechart(x) for b in range(W.n)], x))
    if not cols:
        return PolyMatrix.zeros(W.n, 0, x)
    return PolyMatrix.from_columns(cols, W.n, x)


# ---------------------------------------------------------------------------
# Euler derivation and linearity
# ---------------------------------------------------------------------------


def euler_field(W: SplitVB) -> PolyVector:
    T = W.total_chart
    m = len(W.chart)
    comps = [Polynomial.zero(T)] * m + [W.fiber_var(b) for b in range(W.n)]
    return PolyVector(comps, T)


def euler_derivation(W: SplitVB) -> BundleDerivation:
    T = W.total_chart
    one = Polynomial.constant(T, 1)
    z = Polynomial.zero(T)
    size = W.r + W.k
    rows = [[(-one if (i == j and i >= W.r) else z) for j in range(size)] for i in range(size)]
    return BundleDerivation(euler_field(W), PolyMatrix(rows, (size, size), T))


@dataclass(frozen=True)
class Linearity:
    linear: bool
    witness: str = ""

    def __bool__(self):
        return self.linear


def classify_cochain_linearity(W: SplitVB, c: DefCochain) -> Linearity:
    """Linear iff the bracket with the Euler derivation vanishes."""
    if c.parent is not W.total and c.parent != W.total:
        raise ValueError("cochain does not live on this VB-algebroid")
    br = bracket_with_derivation(euler_derivation(W), c)
    if br.is_zero():
        return Linearity(True)
    T = W.total
    for key in sorted(br.values):
        args = ", ".join(T.frame[i] for i in key)
        return Linearity(False, f"[[E, c]]({args}) = {T.format_section(br.values[key])}")
    for key in sorted(br.symbols):
        args = ", ".join(T.frame[i] for i in key)
        return Linearity(False, f"symbol of [[E, c]]({args}) = {format_vector_field(br.symbols[key])}")
    raise AssertionError("unreachable")


def inspect_linearity(W: SplitVB, c: DefCochain) -> Linearity:
    """Linearity by reading Euler weights of values and symbols on frame tuples.

    Linear generators have weight 0 and core generators weight -1, so a
    linear cochain sends a tuple with i core slots to weight -i.
    """
    T = W.total
    k = c.degree
    if k == 0:
        ok = is_linear_section(W, c.section)
        return Linearity(ok, "" if ok else f"value {T.format_section(c.section)} is not linear")
    for key in combinations(range(T.rank), k):
        weight = -sum(1 for i in key if W.is_core_index(i))
        val = c.value(key)
        if not euler_weight_ok(W, val, weight):
            args = ", ".join(T.frame[i] for i in key)
            return Linearity(False, f"value at ({args}) has the wrong weight: {T.format_section(val)}")
    for key in combinations(range(T.rank), k - 1):
        weight = -sum(1 for i in key if W.is_core_index(i))
        sym = c.symbol(key)
        if not field_weight_ok(W, sym, weight):
            args = ", ".join(T.frame[i] for i in key)
            return Linearity(False, f"symbol at ({args}) has the wrong weight: {format_vector_field(sym)}")
    return Linearity(True)


def corollary_c_check(W: SplitVB, c: DefCochain) -> list:
    """The five shape clauses for a linear cochain of degree >= 1."""
    T = W.total
    K = c.degree
    if K < 1:
        raise ValueError("needs a cochain of degree at least 1")
    fat = [(W.fat_names[i], g) for i, g in enumerate(W.fat_generators())]
    core = [(T.frame[W.r + a], g) for a, g in enumerate(W.core_generators())]
    reports = []

    def tuples(n_lin, n_core):
        for lin in combinations(fat, n_lin):
            for cor in combinations(core, n_core):
                yield lin + cor

    def label(tup):
        return "(" + ", ".join(name for name, _ in tup) + ")"

    # c_1: k linear and one core slot give a core section
    witness = ""
    for tup in tuples(K - 1, 1):
        val = cochain_eval(c, [g for _, g in tup])
        if not is_core_section(W, val):
            witness = f"{label(tup)}: {T.format_section(val)}"
            break
    reports.append(failed("c1-core-value", witness) if witness else passed("c1-core-value"))

    witness = ""
    for i in range(2, K + 1):
        for tup in tuples(K - i, i):
            val = cochain_eval(c, [g for _, g in tup])
            if val:
                witness = f"{label(tup)}: {T.format_section(val)}"
                break
        if witness:
            break
    reports.append(failed("c2-vanishing", witness) if witness else passed("c2-vanishing"))

    witness = ""
    for tup in tuples(K - 1, 0):
        sym = cochain_symbol_eval(c, [g for _, g in tup])
        if not is_linear_field(W, sym):
            witness = f"{label(tup)}: {format_vector_field(sym)}"
            break
    reports.append(failed("s0-linear-symbol", witness) if witness else passed("s0-linear-symbol"))

    witness = ""
    if K >= 2:
        for tup in tuples(K - 2, 1):
            sym = cochain_symbol_eval(c, [g for _, g in tup])
            if not is_vertical_constant(W, sym):
                witness = f"{label(tup)}: {format_vector_field(sym)}"
                break
    reports.append(failed("s1-vertical-symbol", witness) if witness else passed("s1-vertical-symbol"))

    witness = ""
    for i in range(2, K):
        for tup in tuples(K - 1 - i, i):
            sym = cochain_symbol_eval(c, [g for _, g in tup])
            if sym:
                witness = f"{label(tup)}: {format_vector_field(sym)}"
                break
        if witness:
            break
    reports.append(failed("s2-vanishing-symbol", witness) if witness else passed("s2-vanishing-symbol"))
    return reports


def fat_cochain_on_total(W: SplitVB, c: DefCochain) -> DefCochain:
    """Lift a degree-0 fat cochain (a fat section) to the total algebroid."""
    if c.degree != 0:
        raise ValueError("only fat sections lift directly")
    return DefCochain.from_section(W.total, W.fat_to_total(c.section))

