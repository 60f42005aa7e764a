"""Seeded random generators for polynomials, sections, cochains and candidates."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .algebroid import BundleDerivation, Connection, FrameAlgebroid
from .defcomplex import DefCochain, differential
from .im import Candidate, IMTriple, LinearDecomposition, compose_linear, euler_triple, internal_triple
from .symexpr import Polynomial, PolyMatrix, PolyVector
from .vb import SplitVB

COEFFICIENTS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2),
                Fraction(1), Fraction(2), Fraction(3))


def monomials(nvars: int, max_degree: int) -> list:
    out = [()]
    for _ in range(nvars):
        out = [e + (d,) for e in out for d in range(max_degree + 1)]
    return [e for e in out if sum(e) <= max_degree]


def random_poly(rng: random.Random, chart, max_degree: int = 2, terms: int = 2,
                zero_chance: float = 0.0) -> Polynomial:
    chart = tuple(chart)
    if rng.random() < zero_chance:
        return Polynomial.zero(chart)
    monos = monomials(len(chart), max_degree)
    picked = {}
    for _ in range(terms):
        picked[rng.choice(monos)] = rng.choice(COEFFICIENTS)
    return Polynomial(chart, picked)


def random_constant(rng: random.Random, chart, zero_chance: float = 0.0) -> Polynomial:
    return random_poly(rng, chart, 0, 1, zero_chance)


def random_vector(rng: random.Random, length: int, chart, max_degree: int = 2,
                  zero_chance: float = 0.4) -> PolyVector:
    return PolyVector([random_poly(rng, chart, max_degree, 2, zero_chance) for _ in range(length)], chart)


def random_matrix(rng: random.Random, nrows: int, ncols: int, chart, max_degree: int = 2,
                  zero_chance: float = 0.4) -> PolyMatrix:
    rows = [[random_poly(rng, chart, max_degree, 2, zero_chance) for _ in range(ncols)] for _ in range(nrows)]
    return PolyMatrix(rows, (nrows, ncols), chart)


def random_section(rng: random.Random, A: FrameAlgebroid, max_degree: int = 2,
                   zero_chance: float = 0.4) -> PolyVector:
    return random_vector(rng, A.rank, A.chart, max_degree, zero_chance)


def random_field(rng: random.Random, chart, max_degree: int = 2, zero_chance: float = 0.4) -> PolyVector:
    return random_vector(rng, len(chart), chart, max_degree, zero_chance)


def random_derivation(rng: random.Random, n: int, chart, max_degree: int = 2,
                      zero_chance: float = 0.4) -> BundleDerivation:
    return BundleDerivation(random_field(rng, chart, max_degree, zero_chance),
                            random_matrix(rng, n, n, chart, max_degree, zero_chance))


def random_cochain(rng: random.Random, A: FrameAlgebroid, degree: int, max_degree: int = 2,
                   zero_chance: float = 0.5) -> DefCochain:
    if degree == 0:
        return DefCochain.from_section(A, random_section(rng, A, max_degree, zero_chance))
    values = {key: random_section(rng, A, max_degree, zero_chance)
              for key in combinations(range(A.rank), degree)}
    symbols = {key: random_field(rng, A.chart, max_degree, zero_chance)
               for key in combinations(range(A.rank), degree - 1)}
    return DefCochain(A, degree, values, symbols)


def random_connection_matrices(rng: random.Random, A: FrameAlgebroid, n: int, max_degree: int = 1):
    return [random_matrix(rng, n, n, A.chart, max_degree) for _ in range(A.rank)]


def random_decomposition(rng: random.Random, W: SplitVB, degree: int, max_degree: int = 1,
                         zero_chance: float = 0.5) -> LinearDecomposition:
    """Random generator data for a linear cochain: only linear-generator keys are filled."""
    F = W.fat
    x = W.chart
    if degree == 0:
        return LinearDecomposition(0, DefCochain.from_section(F, random_section(rng, F, max_degree, zero_chance)))
    values = {key: random_section(rng, F, max_degree, zero_chance)
              for key in combinations(range(W.r), degree)}
    symbols, c_E, c_C = {}, {}, {}
    for key in combinations(range(W.r), degree - 1):
        X = random_field(rng, x, max_degree, zero_chance)
        symbols[key] = X
        c_E[key] = BundleDerivation(X, random_matrix(rng, W.n, W.n, x, max_degree, zero_chance))
        c_C[key] = BundleDerivation(X, random_matrix(rng, W.k, W.k, x, max_degree, zero_chance))
    d_fat = {key: random_matrix(rng, W.n, W.k, x, max_degree, zero_chance)
             for key in combinations(range(W.r), degree - 2)} if degree >= 2 else {}
    return LinearDecomposition(degree, DefCochain(F, degree, values, symbols), c_E, c_C, d_fat)


def random_linear_cochain(rng: random.Random, W: SplitVB, degree: int, max_degree: int = 1,
                          zero_chance: float = 0.5) -> DefCochain:
    return compose_linear(W, random_decomposition(rng, W, degree, max_degree, zero_chance))


def random_im_triple(rng: random.Random, W: SplitVB, max_degree: int = 1) -> IMTriple:
    """Internal triple of a random fat section plus a constant multiple of the Euler triple."""
    s = random_section(rng, W.fat, max_degree, 0.5)
    return internal_triple(W, s) + euler_triple(W, random_constant(rng, W.chart, 0.5))


def _nonzero_matrix(rng: random.Random, nrows: int, ncols: int, chart, max_degree: int) -> PolyMatrix:
    while True:
        M = random_matrix(rng, nrows, ncols, chart, max_degree, 0.6)
        if not M.is_zero():
            return M


def perturb_triple(rng: random.Random, W: SplitVB, t: IMTriple, max_degree: int = 1) -> IMTriple:
    """Change one component of a triple by a random nonzero amount."""
    x = W.chart
    options = ["fat"]
    if W.n:
        options.append("side")
    if W.k:
        options.append("core")
    if x:
        options.append("symbol")
    what = rng.choice(options)
    if what == "symbol":
        extra = random_field(rng, x, max_degree, 0.0)
        return IMTriple(BundleDerivation(t.fat.symbol + extra, t.fat.matrix), t.side, t.core)
    if what == "fat":
        bump = _nonzero_matrix(rng, W.fat_rank, W.fat_rank, x, max_degree)
        return IMTriple(BundleDerivation(t.fat.symbol, t.fat.matrix + bump), t.side, t.core)
    if what == "side":
        bump = _nonzero_matrix(rng, W.n, W.n, x, max_degree)
        return IMTriple(t.fat, BundleDerivation(t.side.symbol, t.side.matrix + bump), t.core)
    bump = _nonzero_matrix(rng, W.k, W.k, x, max_degree)
    return IMTriple(t.fat, t.side, BundleDerivation(t.core.symbol, t.core.matrix + bump))


def internal_pair(A: FrameAlgebroid, nabla: Connection, a: PolyVector):
    """([a, -], nabla_a): the pair induced by a section of A."""
    return differential(DefCochain.from_section(A, a)), nabla.along(a)


def equivalence_candidates(rng: random.Random, A: FrameAlgebroid, nabla: Connection, count: int,
                           max_degree: int = 1) -> list:
    """Internal, scalar, randomized and deliberately broken pairs (delta_A, delta_E), in equal shares."""
    x = A.chart
    n = nabla.rank
    zero_field = PolyVector.zero(len(x), x)
    out = []
    kinds = ("internal", "scalar", "perturbed", "random", "symbol")
    for i in range(count):
        kind = kinds[i % len(kinds)]
        dA, dE = internal_pair(A, nabla, random_section(rng, A, max_degree, 0.3))
        lam = random_constant(rng, x, 0.3)
        scalar = BundleDerivation(zero_field, PolyMatrix.identity(n, x).scale(lam))
        if kind == "scalar":
            dA, dE = dA.scale(random_constant(rng, x, 0.5)), scalar
        elif kind == "internal":
            dE = dE + scalar
        elif kind == "perturbed":
            if rng.random() < 0.5 or not n:
                D = BundleDerivation(zero_field, _nonzero_matrix(rng, A.rank, A.rank, x, max_degree))
                dA = dA + DefCochain.from_derivation(A, D)
            else:
                dE = dE + BundleDerivation(zero_field, _nonzero_matrix(rng, n, n, x, max_degree))
        elif kind == "random":
            X = random_field(rng, x, max_degree, 0.5)
            dA = DefCochain.from_derivation(A, BundleDerivation(X, random_matrix(rng, A.rank, A.rank, x,
                                                                             max_degree, 0.5)))
            dE = BundleDerivation(X, random_matrix(rng, n, n, x, max_degree, 0.5))
        elif x:
            dE = BundleDerivation(dE.symbol + random_field(rng, x, max_degree, 0.0), dE.matrix)
        else:
            # over a point there is no symbol to break; shift both parts by the identity
            dA = dA + DefCochain.from_derivation(A, BundleDerivation(zero_field, PolyMatrix.identity(A.rank, x)))
            dE = dE + BundleDerivation(zero_field, PolyMatrix.identity(n, x))
        out.append(Candidate(f"{kind}-{i}", dA, dE))
    return out
