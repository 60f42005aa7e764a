"""Deformation cochains of a frame algebroid and their differential.

A degree-k cochain is a multiderivation ``c`` of ``Gamma(A)`` together with
its symbol ``sigma_c``, a (k-1)-linear map into vector fields.  Both are
stored on strictly increasing frame index tuples only; every other tuple is
reached through :func:`perm_sign`.  Degree-0 cochains are sections, stored
under the empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, Sequence

from .algebroid import BundleDerivation, FrameAlgebroid, Section, format_vector_field
from .config import DEFAULT_LIMITS, Limits
from .report import Report, failed, passed
from .symexpr import PolyMatrix, PolyVector


def perm_sign(indices: Sequence[int]):
    """Sign and sorted form of an index tuple; sign 0 when an index repeats."""
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    inversions = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


@dataclass(frozen=True)
class DefCochain:
    parent: FrameAlgebroid
    degree: int
    values: Mapping = field(default_factory=dict)
    symbols: Mapping = field(default_factory=dict)

    def __post_init__(self):
        A = self.parent
        k = self.degree
        if k < 0:
            raise ValueError("negative degree")
        clean_values = {}
        for key, sec in dict(self.values).items():
            if len(key) != k:
                raise ValueError(f"value key {key} has the wrong arity for degree {k}")
            if len(sec) != A.rank or sec.variables != A.chart:
                raise ValueError("cochain values must be sections of the parent")
            sign, sorted_key = perm_sign(key)
            if sign == 0:
                if sec:
                    raise ValueError(f"nonzero value on repeated arguments {key}")
                continue
            if sign < 0:
                sec = -sec
            if sorted_key in clean_values and clean_values[sorted_key] != sec:
                raise ValueError(f"inconsistent values for {sorted_key}")
            if sec:
                clean_values[sorted_key] = sec
        clean_symbols = {}
        for key, vf in dict(self.symbols).items():
            if k == 0:
                raise ValueError("degree-0 cochains carry no symbol")
            if len(key) != k - 1:
                raise ValueError(f"symbol key {key} has the wrong arity for degree {k}")
            if len(vf) != A.dim or vf.variables != A.chart:
                raise ValueError("symbol values must be vector fields on the chart")
            sign, sorted_key = perm_sign(key)
            if sign == 0:
                if vf:
                    raise ValueError(f"nonzero symbol on repeated arguments {key}")
                continue
            if sign < 0:
                vf = -vf
            if sorted_key in clean_symbols and clean_symbols[sorted_key] != vf:
                raise ValueError(f"inconsistent symbols for {sorted_key}")
            if vf:
                clean_symbols[sorted_key] = vf
        object.__setattr__(self, "values", clean_values)
        object.__setattr__(self, "symbols", clean_symbols)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, parent: FrameAlgebroid, degree: int) -> "DefCochain":
        return cls(parent, degree, {}, {})

    @classmethod
    def from_section(cls, parent: FrameAlgebroid, section: Section) -> "DefCochain":
        return cls(parent, 0, {(): section}, {})

    @classmethod
    def from_derivation(cls, parent: FrameAlgebroid, D: BundleDerivation) -> "DefCochain":
        """A derivation of the underlying bundle as a 1-cochain."""
        if D.rank != parent.rank or D.chart != parent.chart:
            raise ValueError("derivation does not act on this algebroid")
        values = {(a,): D.matrix.column(a) for a in range(parent.rank)}
        return cls(parent, 1, values, {(): D.symbol})

    def as_derivation(self) -> BundleDerivation:
        if self.degree != 1:
            raise ValueError("only 1-cochains are bundle derivations")
        A = self.parent
        cols = [self.value((a,)) for a in range(A.rank)]
        return BundleDerivation(self.symbol(()), PolyMatrix.from_columns(cols, A.rank, A.chart))

    # -- lookup -----------------------------------------------------------

    def value(self, key: Sequence[int]) -> Section:
        sign, sorted_key = perm_sign(key)
        sec = self.values.get(sorted_key) if sign else None
        if sec is None:
            return self.parent.zero_section()
        return sec if sign > 0 else -sec

    def symbol(self, key: Sequence[int]) -> PolyVector:
        sign, sorted_key = perm_sign(key)
        vf = self.symbols.get(sorted_key) if sign else None
        if vf is None:
            return PolyVector.zero(self.parent.dim, self.parent.chart)
        return vf if sign > 0 else -vf

    @property
    def section(self) -> Section:
        if self.degree != 0:
            raise ValueError("only degree-0 cochains are sections")
        return self.value(())

    def is_zero(self) -> bool:
        return not self.values and not self.symbols

    def max_degree(self) -> int:
        return max([s.max_degree() for s in self.values.values()]
                   + [s.max_degree() for s in self.symbols.values()] + [-1])

    # -- linear structure -------------------------------------------------

    def _same(self, other: "DefCochain"):
        if self.parent != other.parent or self.degree != other.degree:
            raise ValueError("cochains of different parents or degrees")

    def __add__(self, other: "DefCochain") -> "DefCochain":
        self._same(other)
        values = dict(self.values)
        for k, v in other.values.items():
            values[k] = values[k] + v if k in values else v
        symbols = dict(self.symbols)
        for k, v in other.symbols.items():
            symbols[k] = symbols[k] + v if k in symbols else v
        return DefCochain(self.parent, self.degree, values, symbols)

    def __neg__(self):
        return DefCochain(self.parent, self.degree,
                          {k: -v for k, v in self.values.items()},
                          {k: -v for k, v in self.symbols.items()})

    def __sub__(self, other: "DefCochain") -> "DefCochain":
        return self + (-other)

    def scale(self, f) -> "DefCochain":
        return DefCochain(self.parent, self.degree,
                          {k: v.scale(f) for k, v in self.values.items()},
                          {k: v.scale(f) for k, v in self.symbols.items()})

    def __eq__(self, other):
        if not isinstance(other, DefCochain):
            return NotImplemented
        return (self.parent == other.parent and self.degree == other.degree
                and self.values == other.values and self.symbols == other.symbols)

    def __hash__(self):
        return hash((self.degree, frozenset(self.values.items()), frozenset(self.symbols.items())))

    def describe(self) -> str:
        """Canonical listing of the stored tables."""
        A = self.parent
        lines = []
        for key in sorted(self.values):
            args = ", ".join(A.frame[i] for i in key)
            lines.append(f"value [{args}] = {A.format_section(self.values[key])}")
        for key in sorted(self.symbols):
            args = ", ".join(A.frame[i] for i in key)
            lines.append(f"symbol [{args}] = " + ", ".join(str(c) for c in self.symbols[key].components))
        return "\n".join(lines)


def _nonzero_entries(section: Section):
    return [(i, c) for i, c in enumerate(section.components) if c]


def cochain_eval(c: DefCochain, args: Sequence[Section]) -> Section:
    """Value of c on arbitrary sections, by multilinearity, antisymmetry and Leibniz."""
    A = c.parent
    k = c.degree
    if len(args) != k:
        raise ValueError(f"degree {k} cochain evaluated on {len(args)} arguments")
    if k == 0:
        return c.value(())
    for a in args:
        A._check_section(a)
    entries = [_nonzero_entries(a) for a in args]
    out = A.zero_section()
    if any(not e for e in entries):
        return out
    for combo in product(*entries):
        idx = [i for i, _ in combo]
        val = c.value(idx)
        if val:
            coeff = combo[0][1]
            for _, f in combo[1:]:
                coeff = coeff * f
            out = out + val.scale(coeff)
    for i in range(k):
        rest = entries[:i] + entries[i + 1:]
        sign = -1 if (k - 1 - i) % 2 else 1
        for combo in product(*rest):
            sym = c.symbol([j for j, _ in combo])
            if not sym:
                continue
            coeff = None
            for _, f in combo:
                coeff = f if coeff is None else coeff * f
            term = sym.apply_each(args[i])
            if coeff is not None:
                term = term.scale(coeff)
            out = out + term if sign > 0 else out - term
    return out


def cochain_symbol_eval(c: DefCochain, args: Sequence[Section]) -> PolyVector:
    A = c.parent
    k = c.degree
    if k == 0:
        raise ValueError("degree-0 cochains have no symbol")
    if len(args) != k - 1:
        raise ValueError(f"symbol of a degree {k} cochain takes {k - 1} arguments")
    out = PolyVector.zero(A.dim, A.chart)
    entries = [_nonzero_entries(a) for a in args]
    for combo in product(*entries):
        sym = c.symbol([j for j, _ in combo])
        if not sym:
            continue
        coeff = None
        for _, f in combo:
            coeff = f if coeff is None else coeff * f
        out = out + (sym.scale(coeff) if coeff is not None else sym)
    return out


def _frame_args(A: FrameAlgebroid, key) -> list:
    return [A.basis(i) for i in key]


def differential(c: DefCochain, limits: Limits = DEFAULT_LIMITS) -> DefCochain:
    A = c.parent
    k = c.degree
    limits.check_degree(k + 1)
    if k == 0:
        a = c.section
        values = {(i,): A.bracket(a, A.basis(i)) for i in range(A.rank)}
        out = DefCochain(A, 1, values, {(): A.anchor_of(a)})
    else:
        values = {}
        for key in combinations(range(A.rank), k + 1):
            values[key] = _differential_value(c, key)
        symbols = {}
        for key in combinations(range(A.rank), k):
            symbols[key] = _differential_symbol(c, key)
        out = DefCochain(A, k + 1, values, symbols)
    limits.check_poly(out.max_degree(), "differential")
    return out


def _differential_value(c: DefCochain, key) -> Section:
    A = c.parent
    out = A.zero_section()
    n = len(key)
    for p in range(n):
        rest = key[:p] + key[p + 1:]
        term = A.bracket(A.basis(key[p]), c.value(rest))
        out = out + term if p % 2 == 0 else out - term
    for p in range(n):
        for q in range(p + 1, n):
            br = A.frame_bracket(key[p], key[q])
            if not br:
                continue
            rest = key[:p] + key[p + 1:q] + key[q + 1:]
            term = cochain_eval(c, [br] + _frame_args(A, rest))
            out = out + term if (p + q) % 2 == 0 else out - term
    return out


def _differential_symbol(c: DefCochain, key) -> PolyVector:
    A = c.parent
    k = c.degree
    out = PolyVector.zero(A.dim, A.chart)
    n = len(key)
    for p in range(n):
        rest = key[:p] + key[p + 1:]
        term = A.anchor[key[p]].lie_bracket(c.symbol(rest))
        out = out + term if p % 2 == 0 else out - term
    for p in range(n):
        for q in range(p + 1, n):
            br = A.frame_bracket(key[p], key[q])
            if not br:
                continue
            rest = key[:p] + key[p + 1:q] + key[q + 1:]
            term = cochain_symbol_eval(c, [br] + _frame_args(A, rest))
            out = out + term if (p + q) % 2 == 0 else out - term
    term = A.anchor_of(c.value(key))
    return out - term if k % 2 == 0 else out + term


def evaluate_differential(c: DefCochain, args: Sequence[Section]) -> Section:
    """(dc)(a_1..a_{k+1}) computed directly from the defining formula."""
    A = c.parent
    k = c.degree
    if len(args) != k + 1:
        raise ValueError(f"differential of degree {k} takes {k + 1} arguments")
    if k == 0:
        return A.bracket(c.section, args[0])
    out = A.zero_section()
    for p in range(k + 1):
        rest = list(args[:p]) + list(args[p + 1:])
        term = A.bracket(args[p], cochain_eval(c, rest))
        out = out + term if p % 2 == 0 else out - term
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            rest = list(args[:p]) + list(args[p + 1:q]) + list(args[q + 1:])
            term = cochain_eval(c, [A.bracket(args[p], args[q])] + rest)
            out = out + term if (p + q) % 2 == 0 else out - term
    return out


def is_algebroid_derivation(delta: DefCochain) -> Report:
    """Bracket rule on frame pairs and anchor compatibility on the frame."""
    if delta.degree != 1:
        raise ValueError("only 1-cochains can be algebroid derivations")
    A = delta.parent
    images = [delta.value((i,)) for i in range(A.rank)]
    for i, j in combinations(range(A.rank), 2):
        lhs = cochain_eval(delta, [A.frame_bracket(i, j)])
        rhs = A.bracket(images[i], A.basis(j)) + A.bracket(A.basis(i), images[j])
        if lhs != rhs:
            return failed("derivation", f"bracket rule at ({A.frame[i]}, {A.frame[j]}): "
                                        f"{A.format_section(lhs - rhs)}")
    X = delta.symbol(())
    for i in range(A.rank):
        lhs = A.anchor_of(images[i])
        rhs = X.lie_bracket(A.anchor[i])
        if lhs != rhs:
            return failed("derivation", f"anchor rule at {A.frame[i]}: {format_vector_field(lhs - rhs)}")
    return passed("derivation")


def bracket_with_derivation(D: BundleDerivation, c: DefCochain) -> DefCochain:
    """The bracket of a bundle derivation (degree 1) with a cochain of any degree."""
    A = c.parent
    if D.rank != A.rank or D.chart != A.chart:
        raise ValueError("derivation does not act on the parent bundle")
    k = c.degree
    if k == 0:
        return DefCochain.from_section(A, D.apply(c.section))
    images = [D.matrix.column(i) for i in range(A.rank)]
    values = {}
    for key in combinations(range(A.rank), k):
        val = D.apply(c.value(key))
        args = _frame_args(A, key)
        for i in range(k):
            if images[key[i]]:
                val = val - cochain_eval(c, args[:i] + [images[key[i]]] + args[i + 1:])
        values[key] = val
    symbols = {}
    for key in combinations(range(A.rank), k - 1):
        vf = D.symbol.lie_bracket(c.symbol(key))
        args = _frame_args(A, key)
        for i in range(k - 1):
            if images[key[i]]:
                vf = vf - cochain_symbol_eval(c, args[:i] + [images[key[i]]] + args[i + 1:])
        symbols[key] = vf
    return DefCochain(A, k, values, symbols)


def check_leibniz(c: DefCochain, args: Sequence[Section], f) -> Section:
    """Residual of c(.., f a_k) - f c(.., a_k) - sigma_c(..)(f) a_k; zero when consistent."""
    args = list(args)
    last = args[-1]
    lhs = cochain_eval(c, args[:-1] + [last.scale(f)])
    rhs = cochain_eval(c, args).scale(f) + last.scale(cochain_symbol_eval(c, args[:-1]).apply(f))
    return lhs - rhs
