"""IM derivations of VB-algebroids and linear cochains.

Contents: internal derivations, the triple characterization of IM
derivations (fat, side and core derivations), the correspondence between
linear cochains and their decompositions together with the transported
differential, the trivial-core specialization, and the coordinate PDE form
of the IM condition on the gauge VB-algebroid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .algebroid import (
    BundleDerivation,
    Connection,
    FrameAlgebroid,
    Section,
    check_flatness,
    derivation_commutator,
    format_vector_field,
    hom_action,
)
from .defcomplex import (
    DefCochain,
    cochain_eval,
    cochain_symbol_eval,
    differential,
    is_algebroid_derivation,
    perm_sign,
)
from .report import Report, failed, passed
from .symexpr import Polynomial, PolyMatrix, PolyVector
from .vb import (
    NotLinearError,
    SplitVB,
    build_trivial_core,
    classify_cochain_linearity,
    core_anchor,
    core_derivation,
    derivation_of_linear_field,
    is_vertical_constant,
    linear_field_of,
    side_derivation,
    vertical_lift,
)


@dataclass(frozen=True)
class IMTriple:
    fat: BundleDerivation
    side: BundleDerivation
    core: BundleDerivation

    def __add__(self, other: "IMTriple") -> "IMTriple":
        return IMTriple(self.fat + other.fat, self.side + other.side, self.core + other.core)

    def scale(self, f) -> "IMTriple":
        return IMTriple(self.fat.scale(f), self.side.scale(f), self.core.scale(f))

    def __str__(self):
        return f"fat={self.fat} side={self.side} core={self.core}"


def _check_shapes(W: SplitVB, t: IMTriple):
    if t.fat.rank != W.fat_rank or t.side.rank != W.n or t.core.rank != W.k:
        raise ValueError("triple does not match the VB-algebroid's ranks")
    if not (t.fat.chart == t.side.chart == t.core.chart == W.chart):
        raise ValueError("triple does not live on the base chart")


def hom_to_fat(W: SplitVB, M: PolyMatrix) -> Section:
    """A k x n matrix Hom(E, C) as a fat section."""
    comps = [Polynomial.zero(W.chart)] * W.fat_rank
    for a in range(W.k):
        for b in range(W.n):
            comps[W.hom_index(a, b)] = M[a, b]
    return PolyVector(comps, W.chart)


def hom_unit(W: SplitVB, a: int, b: int) -> PolyMatrix:
    return PolyMatrix.unit(W.k, W.n, a, b, W.chart)


# ---------------------------------------------------------------------------
# internal derivations
# ---------------------------------------------------------------------------


def internal_derivation(W: SplitVB, s: Section) -> DefCochain:
    """[s, -] on the total algebroid, with symbol the anchor of s."""
    T = W.total
    t = W.fat_to_total(s)
    values = {(i,): T.bracket(t, T.basis(i)) for i in range(T.rank)}
    return DefCochain(T, 1, values, {(): T.anchor_of(t)})


def fat_internal_derivation(W: SplitVB, s: Section) -> BundleDerivation:
    F = W.fat
    cols = [F.bracket(s, F.basis(i)) for i in range(F.rank)]
    return BundleDerivation(F.anchor_of(s), PolyMatrix.from_columns(cols, F.rank, F.chart))


def internal_triple(W: SplitVB, s: Section) -> IMTriple:
    return IMTriple(fat_internal_derivation(W, s), side_derivation(W, s), core_derivation(W, s))


def euler_triple(W: SplitVB, value=1) -> IMTriple:
    """(0, c id_E, c id_C): always satisfies the triple conditions."""
    x = W.chart
    zero_field = PolyVector.zero(len(x), x)
    return IMTriple(
        BundleDerivation.zero(W.fat_rank, x),
        BundleDerivation(zero_field, PolyMatrix.identity(W.n, x).scale(value)),
        BundleDerivation(zero_field, PolyMatrix.identity(W.k, x).scale(value)),
    )


# ---------------------------------------------------------------------------
# triple conditions
# ---------------------------------------------------------------------------


def check_im_triple(W: SplitVB, t: IMTriple) -> list:
    _check_shapes(W, t)
    reports = []
    F = W.fat

    if t.fat.symbol != t.side.symbol or t.fat.symbol != t.core.symbol:
        reports.append(failed("sigma", f"symbol mismatch: fat {format_vector_field(t.fat.symbol)}, "
                                       f"side {format_vector_field(t.side.symbol)}, "
                                       f"core {format_vector_field(t.core.symbol)}"))
    else:
        reports.append(passed("sigma"))

    witness = ""
    for a in range(W.k):
        for b in range(W.n):
            P = hom_unit(W, a, b)
            expected = hom_to_fat(W, hom_action(t.fat.symbol, t.core.matrix, P, t.side.matrix))
            got = t.fat.matrix.column(W.hom_index(a, b))
            if got != expected:
                witness = f"{F.frame[W.hom_index(a, b)]}: {F.format_section(got - expected)}"
                break
        if witness:
            break
    reports.append(failed("hom", witness) if witness else passed("hom"))

    alpha = core_anchor(W)
    res = alpha.derive(t.side.symbol) + t.side.matrix @ alpha - alpha @ t.core.matrix
    reports.append(passed("core-anchor") if res.is_zero() else failed("core-anchor", str(res)))

    witness = ""
    for i in range(W.fat_rank):
        lhs = derivation_commutator(t.side, side_derivation(W, F.basis(i)))
        rhs = side_derivation(W, t.fat.matrix.column(i))
        if lhs != rhs:
            witness = f"{F.frame[i]}: {lhs - rhs}"
            break
    reports.append(failed("psi", witness) if witness else passed("psi"))

    witness = ""
    for i in range(W.fat_rank):
        lhs = derivation_commutator(t.core, core_derivation(W, F.basis(i)))
        rhs = core_derivation(W, t.fat.matrix.column(i))
        if lhs != rhs:
            witness = f"{F.frame[i]}: {lhs - rhs}"
            break
    reports.append(failed("psi-c", witness) if witness else passed("psi-c"))

    der = is_algebroid_derivation(DefCochain.from_derivation(F, t.fat))
    reports.append(passed("fat-derivation") if der else failed("fat-derivation", der.witness))
    return reports


def extend_triple(W: SplitVB, t: IMTriple) -> DefCochain:
    """Degree-1 cochain on W acting by the fat part on linear generators and the core part on core ones.

    The symbol is the linear vector field of the side derivation.  No
    condition is checked here.
    """
    _check_shapes(W, t)
    T = W.total
    values = {}
    for i in range(W.r):
        values[(i,)] = W.fat_to_total(t.fat.matrix.column(i))
    for a in range(W.k):
        values[(W.r + a,)] = W.core_to_total(t.core.matrix.column(a))
    return DefCochain(T, 1, values, {(): linear_field_of(W, t.side)})


def horizontal_from_triple(W: SplitVB, t: IMTriple, check: bool = True) -> DefCochain:
    if check:
        bad = [r for r in check_im_triple(W, t) if not r.passed]
        if bad:
            raise ValueError(f"not an IM triple: {bad[0].check}: {bad[0].witness}")
    return extend_triple(W, t)


def triple_of_linear_cochain(W: SplitVB, c: DefCochain) -> IMTriple:
    dec = decompose_linear(W, c)
    return IMTriple(dec.c_fat.as_derivation(), dec.side(W, ()), dec.core(W, ()))


def round_trip_verdict(W: SplitVB, t: IMTriple) -> Report:
    """The reconstructed derivation exists, is linear, and is an algebroid derivation."""
    c = extend_triple(W, t)
    lin = classify_cochain_linearity(W, c)
    if not lin:
        return failed("reconstruction", f"not linear: {lin.witness}")
    try:
        back = triple_of_linear_cochain(W, c)
    except NotLinearError as exc:
        return failed("reconstruction", str(exc))
    if back != t:
        return failed("reconstruction", "triple is not recovered from its extension")
    der = is_algebroid_derivation(c)
    if not der:
        return failed("reconstruction", der.witness)
    return passed("reconstruction")


# ---------------------------------------------------------------------------
# linear cochains and their decompositions
# ---------------------------------------------------------------------------


def _lookup(table: Mapping, key, zero, negate):
    sign, sorted_key = perm_sign(key)
    if sign == 0 or sorted_key not in table:
        return zero
    val = table[sorted_key]
    return val if sign > 0 else negate(val)


@dataclass(frozen=True)
class LinearDecomposition:
    degree: int
    c_fat: DefCochain
    c_E: Mapping = field(default_factory=dict)
    c_C: Mapping = field(default_factory=dict)
    d_fat: Mapping = field(default_factory=dict)

    def side(self, W: SplitVB, key) -> BundleDerivation:
        return _lookup(self.c_E, key, BundleDerivation.zero(W.n, W.chart), lambda d: -d)

    def core(self, W: SplitVB, key) -> BundleDerivation:
        return _lookup(self.c_C, key, BundleDerivation.zero(W.k, W.chart), lambda d: -d)

    def hom(self, W: SplitVB, key) -> PolyMatrix:
        return _lookup(self.d_fat, key, PolyMatrix.zeros(W.n, W.k, W.chart), lambda d: -d)

    def is_zero(self) -> bool:
        return (self.c_fat.is_zero() and all(d.is_zero() for d in self.c_E.values())
                and all(d.is_zero() for d in self.c_C.values())
                and all(d.is_zero() for d in self.d_fat.values()))


def _clean(table: Mapping, is_zero) -> dict:
    return {k: v for k, v in table.items() if not is_zero(v)}


def make_decomposition(degree, c_fat, c_E, c_C, d_fat) -> LinearDecomposition:
    """Decomposition with zero entries dropped so equality is structural."""
    return LinearDecomposition(
        degree, c_fat,
        _clean(c_E, lambda d: d.is_zero()),
        _clean(c_C, lambda d: d.is_zero()),
        _clean(d_fat, lambda d: d.is_zero()),
    )


def decompose_linear(W: SplitVB, c: DefCochain) -> LinearDecomposition:
    k = c.degree
    F = W.fat
    x = W.chart
    if k == 0:
        return make_decomposition(0, DefCochain.from_section(F, W.total_to_fat(c.section)), {}, {}, {})
    lin = classify_cochain_linearity(W, c)
    if not lin:
        raise NotLinearError(f"cochain is not linear: {lin.witness}")
    gens = W.fat_generators()
    cores = W.core_generators()
    m = len(x)
    values = {}
    for key in combinations(range(F.rank), k):
        values[key] = W.total_to_fat(cochain_eval(c, [gens[i] for i in key]))
    symbols = {}
    c_E = {}
    c_C = {}
    for key in combinations(range(F.rank), k - 1):
        field_ = cochain_symbol_eval(c, [gens[i] for i in key])
        D = derivation_of_linear_field(W, field_)
        symbols[key] = D.symbol
        c_E[key] = D
        cols = [W.total_to_core(cochain_eval(c, [gens[i] for i in key] + [chi])) for chi in cores]
        c_C[key] = BundleDerivation(D.symbol, PolyMatrix.from_columns(cols, W.k, x) if cols
                                    else PolyMatrix.zeros(0, 0, x))
    d_fat = {}
    if k >= 2:
        for key in combinations(range(F.rank), k - 2):
            cols = []
            for chi in cores:
                field_ = cochain_symbol_eval(c, [gens[i] for i in key] + [chi])
                if not is_vertical_constant(W, field_):
                    raise NotLinearError("symbol with a core slot is not a vertical lift")
                cols.append(PolyVector([f.rechart(x) for f in field_.components[m:]], x))
            d_fat[key] = PolyMatrix.from_columns(cols, W.n, x) if cols else PolyMatrix.zeros(W.n, 0, x)
    c_fat = DefCochain(F, k, values, symbols)
    return make_decomposition(k, c_fat, c_E, c_C, d_fat)


def compose_linear(W: SplitVB, dec: LinearDecomposition) -> DefCochain:
    """The linear cochain on W with the given decomposition.

    Only the linear generators of the fat frame and the core generators are
    read; the Hom(E, C) entries follow from the Leibniz rule.
    """
    T = W.total
    k = dec.degree
    if k == 0:
        return DefCochain.from_section(T, W.fat_to_total(dec.c_fat.section))
    r = W.r
    values = {}
    symbols = {}
    for key in combinations(range(r), k):
        values[key] = W.fat_to_total(dec.c_fat.value(key))
    for key in combinations(range(r), k - 1):
        D = dec.side(W, key)
        symbols[key] = linear_field_of(W, D)
        C = dec.core(W, key)
        for a in range(W.k):
            values[key + (r + a,)] = W.core_to_total(C.matrix.column(a))
    if k >= 2:
        for key in combinations(range(r), k - 2):
            M = dec.hom(W, key)
            for a in range(W.k):
                symbols[key + (r + a,)] = vertical_lift(W, M.column(a))
    return DefCochain(T, k, values, symbols)


def check_decomposition(W: SplitVB, dec: LinearDecomposition) -> list:
    """Symbol matching and the Hom(E, C) insertion rules."""
    k = dec.degree
    F = W.fat
    reports = []
    if k == 0:
        return [passed("derivation-valued"), passed("hom-insertions")]
    witness = ""
    for key in combinations(range(F.rank), k - 1):
        s = dec.c_fat.symbol(key)
        if dec.side(W, key).symbol != s or dec.core(W, key).symbol != s:
            witness = f"({', '.join(F.frame[i] for i in key)})"
            break
    reports.append(failed("derivation-valued", witness) if witness else passed("derivation-valued"))

    witness = ""
    for a in range(W.k):
        for b in range(W.n):
            phi = W.hom_index(a, b)
            P = hom_unit(W, a, b)
            for key in combinations(range(F.rank), k - 1):
                got = dec.c_fat.value(key + (phi,))
                E_ = dec.side(W, key)
                C_ = dec.core(W, key)
                want = hom_to_fat(W, C_.matrix @ P - P @ E_.matrix)
                if got != want:
                    witness = f"c_fat at ({', '.join(F.frame[i] for i in key + (phi,))})"
                    break
            if witness:
                break
            for key in combinations(range(F.rank), k - 2) if k >= 2 else ():
                D = dec.hom(W, key)
                E_ = dec.side(W, key + (phi,))
                C_ = dec.core(W, key + (phi,))
                if not E_.symbol.is_zero() or E_.matrix != -(D @ P):
                    witness = f"c_E at ({', '.join(F.frame[i] for i in key + (phi,))})"
                elif not C_.symbol.is_zero() or C_.matrix != -(P @ D):
                    witness = f"c_C at ({', '.join(F.frame[i] for i in key + (phi,))})"
                if witness:
                    break
            if witness:
                break
            for key in combinations(range(F.rank), k - 3) if k >= 3 else ():
                if not dec.hom(W, key + (phi,)).is_zero():
                    witness = f"D at ({', '.join(F.frame[i] for i in key + (phi,))})"
                    break
            if witness:
                break
        if witness:
            break
    reports.append(failed("hom-insertions", witness) if witness else passed("hom-insertions"))
    return reports


def _tensor_expand(section: Section, fn, zero):
    """Sum of coefficient * fn(frame index) over the nonzero coefficients."""
    out = zero
    for i, coeff in enumerate(section.components):
        if coeff:
            out = out + fn(i).scale(coeff)
    return out


def decomposition_differential(W: SplitVB, dec: LinearDecomposition) -> LinearDecomposition:
    """The decomposition of d(c) computed from the decomposition of c alone."""
    F = W.fat
    x = W.chart
    k = dec.degree
    if k == 0:
        s = dec.c_fat.section
        return make_decomposition(1, differential(dec.c_fat), {(): side_derivation(W, s)},
                                  {(): core_derivation(W, s)}, {})
    zero_E = BundleDerivation.zero(W.n, x)
    zero_C = BundleDerivation.zero(W.k, x)
    zero_D = PolyMatrix.zeros(W.n, W.k, x)
    c_fat = differential(dec.c_fat)
    psi_s = [side_derivation(W, F.basis(i)) for i in range(F.rank)]
    psi_c = [core_derivation(W, F.basis(i)) for i in range(F.rank)]
    alpha = core_anchor(W)

    def transported(table_get, psi, zero, key, top):
        out = zero
        n = len(key)
        for p in range(n):
            rest = key[:p] + key[p + 1:]
            term = derivation_commutator(psi[key[p]], table_get(rest))
            out = out + term if p % 2 == 0 else out - term
        for p in range(n):
            for q in range(p + 1, n):
                br = F.frame_bracket(key[p], key[q])
                if not br:
                    continue
                rest = key[:p] + key[p + 1:q] + key[q + 1:]
                term = _tensor_expand(br, lambda i: table_get((i,) + rest), zero)
                out = out + term if (p + q) % 2 == 0 else out - term
        last = top(dec.c_fat.value(key))
        return out - last if k % 2 == 0 else out + last

    c_E = {}
    c_C = {}
    for key in combinations(range(F.rank), k):
        c_E[key] = transported(lambda kk: dec.side(W, kk), psi_s, zero_E, key,
                               lambda s: side_derivation(W, s))
        c_C[key] = transported(lambda kk: dec.core(W, kk), psi_c, zero_C, key,
                               lambda s: core_derivation(W, s))
    d_fat = {}
    for key in combinations(range(F.rank), k - 1):
        out = zero_D
        n = len(key)
        for p in range(n):
            rest = key[:p] + key[p + 1:]
            D = dec.hom(W, rest)
            term = hom_action(psi_s[key[p]].symbol, psi_s[key[p]].matrix, D, psi_c[key[p]].matrix)
            out = out + term if p % 2 == 0 else out - term
        for p in range(n):
            for q in range(p + 1, n):
                br = F.frame_bracket(key[p], key[q])
                if not br:
                    continue
                rest = key[:p] + key[p + 1:q] + key[q + 1:]
                term = _tensor_expand(br, lambda i: dec.hom(W, (i,) + rest), zero_D)
                out = out + term if (p + q) % 2 == 0 else out - term
        E_ = dec.side(W, key)
        C_ = dec.core(W, key)
        last = hom_action(E_.symbol, E_.matrix, alpha, C_.matrix)
        out = out + last if k % 2 == 0 else out - last
        d_fat[key] = out
    return make_decomposition(k + 1, c_fat, c_E, c_C, d_fat)


# ---------------------------------------------------------------------------
# trivial-core case and coordinate PDEs
# ---------------------------------------------------------------------------


def _trivial_core_conditions(A: FrameAlgebroid, nabla: Connection, delta_A: DefCochain,
                             delta_E: BundleDerivation) -> list:
    reports = []
    X = delta_A.symbol(())
    if X != delta_E.symbol:
        reports.append(failed("sigma", f"symbol mismatch: {format_vector_field(X)} vs "
                                       f"{format_vector_field(delta_E.symbol)}"))
    else:
        reports.append(passed("sigma"))
    witness = ""
    for alpha in range(A.rank):
        lhs = derivation_commutator(delta_E, nabla.derivation(alpha))
        rhs = nabla.along(delta_A.value((alpha,)))
        if lhs != rhs:
            witness = f"{A.frame[alpha]}: {lhs - rhs}"
            break
    reports.append(failed("connection", witness) if witness else passed("connection"))
    return reports


def trivial_core_im_check(A: FrameAlgebroid, nabla: Connection, delta_A: DefCochain,
                          delta_E: BundleDerivation) -> list:
    flat = check_flatness(A, nabla)
    if not flat:
        raise ValueError(f"connection is not flat: {flat.witness}")
    der = is_algebroid_derivation(delta_A)
    if not der:
        raise ValueError(f"not an algebroid derivation: {der.witness}")
    return _trivial_core_conditions(A, nabla, delta_A, delta_E)


def prop_verdict(A: FrameAlgebroid, nabla: Connection, delta_A: DefCochain,
                 delta_E: BundleDerivation) -> Report:
    """Derivation property of delta_A together with the two pair conditions."""
    der = is_algebroid_derivation(delta_A)
    if not der:
        return failed("pair-conditions", f"derivation: {der.witness}")
    for r in _trivial_core_conditions(A, nabla, delta_A, delta_E):
        if not r:
            return failed("pair-conditions", f"{r.check}: {r.witness}")
    return passed("pair-conditions")


@dataclass(frozen=True)
class IMSectionCoords:
    """Linear section of the gauge VB-algebroid: xdot = X(x), udot = U(x) u, v = V(x)."""

    X: PolyVector
    U: PolyMatrix
    V: PolyMatrix

    def pair(self, A: FrameAlgebroid):
        """The pair (delta_A, delta_E) this section encodes."""
        delta_A = DefCochain.from_derivation(A, BundleDerivation(self.X, -self.U))
        return delta_A, BundleDerivation(self.X, self.V)


def im_section_pde_check(A: FrameAlgebroid, nabla: Connection, s: IMSectionCoords) -> list:
    x = A.chart
    m, r, n = A.dim, A.rank, nabla.rank
    if len(s.X) != m or s.U.shape != (r, r) or s.V.shape != (n, n):
        raise ValueError("section coordinates do not match the algebroid and connection")
    rho = A.anchor
    G = nabla.christoffel

    def along(alpha, f):
        return rho[alpha].apply(f)

    def X_apply(f):
        return s.X.apply(f)

    reports = []
    witness = ""
    for alpha in range(r):
        for i in range(m):
            lhs = along(alpha, s.X[i])
            rhs = X_apply(rho[alpha][i])
            for beta in range(r):
                rhs = rhs + rho[beta][i] * s.U[beta, alpha]
            if lhs != rhs:
                witness = f"alpha={A.frame[alpha]}, i={x[i]}: {lhs - rhs}"
                break
        if witness:
            break
    reports.append(failed("pde1", witness) if witness else passed("pde1"))

    witness = ""
    for alpha in range(r):
        for a in range(n):
            for b in range(n):
                lhs = along(alpha, s.V[a, b])
                rhs = X_apply(G[alpha][a, b])
                for c in range(n):
                    rhs = rhs + G[alpha][c, b] * s.V[a, c] - G[alpha][a, c] * s.V[c, b]
                for beta in range(r):
                    rhs = rhs + G[beta][a, b] * s.U[beta, alpha]
                if lhs != rhs:
                    witness = f"alpha={A.frame[alpha]}, A={a + 1}, B={b + 1}: {lhs - rhs}"
                    break
            if witness:
                break
        if witness:
            break
    reports.append(failed("pde2", witness) if witness else passed("pde2"))

    witness = ""
    c = A.structure_function
    for al in range(r):
        for be, ga in combinations(range(r), 2):
            lhs = along(be, s.U[al, ga]) - along(ga, s.U[al, be])
            rhs = -X_apply(c(al, be, ga))
            for de in range(r):
                rhs = (rhs + c(al, de, be) * s.U[de, ga] - c(al, de, ga) * s.U[de, be]
                       + c(de, be, ga) * s.U[al, de])
            if lhs != rhs:
                witness = f"alpha={A.frame[al]}, beta={A.frame[be]}, gamma={A.frame[ga]}: {lhs - rhs}"
                break
        if witness:
            break
    reports.append(failed("pde3", witness) if witness else passed("pde3"))
    return reports


def coords_of_pair(A: FrameAlgebroid, delta_A: DefCochain, delta_E: BundleDerivation):
    """Section coordinates of a pair, or None when the symbols differ."""
    D = delta_A.as_derivation()
    if D.symbol != delta_E.symbol:
        return None
    return IMSectionCoords(D.symbol, -D.matrix, delta_E.matrix)


@dataclass(frozen=True)
class Candidate:
    label: str
    delta_A: DefCochain
    delta_E: BundleDerivation


def candidate_verdicts(A: FrameAlgebroid, nabla: Connection, cand: Candidate, W: SplitVB | None = None):
    """Three independent IM verdicts: PDE system, pair conditions, reconstruction."""
    if W is None:
        W = build_trivial_core(A, nabla)
    coords = coords_of_pair(A, cand.delta_A, cand.delta_E)
    if coords is None:
        pde = False
    else:
        pde = all(r.passed for r in im_section_pde_check(A, nabla, coords))
    prop = prop_verdict(A, nabla, cand.delta_A, cand.delta_E).passed
    D = cand.delta_A.as_derivation()
    x = A.chart
    triple = IMTriple(D, cand.delta_E, BundleDerivation(D.symbol, PolyMatrix.zeros(0, 0, x)))
    recon = round_trip_verdict(W, triple).passed
    return pde, prop, recon


def theorem_equivalence_suite(A: FrameAlgebroid, nabla: Connection, candidates) -> Report:
    flat = check_flatness(A, nabla)
    if not flat:
        raise ValueError(f"connection is not flat: {flat.witness}")
    W = build_trivial_core(A, nabla)
    for cand in candidates:
        verdicts = candidate_verdicts(A, nabla, cand, W)
        if len(set(verdicts)) != 1:
            pde, prop, recon = verdicts
            return failed("equivalence", f"{cand.label}: pde={pde} pair={prop} reconstruction={recon}")
    return passed("equivalence")
