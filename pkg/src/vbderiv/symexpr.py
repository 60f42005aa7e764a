"""Exact multivariate polynomials over the rationals.

Every structure function in the package (anchors, brackets, Christoffel
symbols, cochain values) is a :class:`Polynomial` on a named coordinate chart.
Coefficients are :class:`fractions.Fraction`; there is no floating point
anywhere, so identities are checked by exact equality of canonical forms.

Also here: :class:`PolyVector` (vector fields / frame coefficients),
:class:`PolyMatrix`, and a recursive-descent parser for the expression
grammar::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' nat)?
    atom     := rational | ident | '(' expr ')'
    rational := int ('/' nat)?
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Exponent = tuple


class ChartMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Syntax or resolution error, carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class Polynomial:
    """Immutable polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for exp, coeff in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match chart {self.variables}")
                if coeff:
                    clean[tuple(exp)] = Fraction(coeff)
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> "Polynomial":
        variables = tuple(variables)
        if not value:
            return cls._raw(variables, {})
        return cls._raw(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise ChartMismatch(f"unknown variable {name!r} for chart {variables}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exp: Fraction(1)})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> set:
        """Set of partial degrees of the terms in the given variables."""
        idx = [self.variables.index(n) for n in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def is_homogeneous_in(self, names: Iterable[str], degree: int) -> bool:
        return self.degree_in(names) <= {degree}

    def homogeneous_part(self, names: Iterable[str], degree: int) -> "Polynomial":
        idx = [self.variables.index(n) for n in names]
        return Polynomial._raw(
            self.variables,
            {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == degree},
        )

    def involves(self, name: str) -> bool:
        i = self.variables.index(name)
        return any(e[i] for e in self.terms)

    # -- chart handling ---------------------------------------------------

    def rechart(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express on another chart; every variable actually used must exist there."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = []
        for i, v in enumerate(self.variables):
            pos.append(variables.index(v) if v in variables else None)
        out = {}
        n = len(variables)
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ChartMismatch(
                            f"polynomial depends on {self.variables[i]!r}, absent from chart {variables}"
                        )
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Polynomial._raw(variables, out)

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ChartMismatch(f"chart mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw(self.variables, {})
            f = Fraction(other)
            return Polynomial._raw(self.variables, {e: c * f for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial._raw(self.variables, {})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, name: str) -> "Polynomial":
        if name not in self.variables:
            raise ChartMismatch(f"unknown variable {name!r} for chart {self.variables}")
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._raw(self.variables, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != len(self.variables):
            raise ChartMismatch(f"point of length {len(point)} for chart {self.variables}")
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    # -- equality and printing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def _monomial_str(self, exp):
        parts = []
        for v, k in zip(self.variables, exp):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (exp, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(exp)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if n == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, chart={self.variables})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_neg(p: Polynomial) -> Polynomial:
    return -p


def scalar_mul(c: Scalar, p: Polynomial) -> Polynomial:
    return p * c


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.derivative(var)


def evaluate_at(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


class PolyVector:
    """Fixed-length tuple of polynomials on one chart.

    Used both for vector fields on the chart (one component per coordinate)
    and for sections written in a frame (one component per frame element).
    """

    __slots__ = ("components", "variables")

    def __init__(self, components: Iterable[Polynomial], variables: Sequence[str] | None = None):
        comps = tuple(components)
        if variables is None:
            if not comps:
                raise ValueError("empty PolyVector needs an explicit chart")
            variables = comps[0].variables
        self.variables = tuple(variables)
        for c in comps:
            if c.variables != self.variables:
                raise ChartMismatch(f"component chart {c.variables} differs from {self.variables}")
        self.components = comps

    @classmethod
    def zero(cls, length: int, variables: Sequence[str]) -> "PolyVector":
        z = Polynomial.zero(variables)
        return cls([z] * length, variables)

    @classmethod
    def basis(cls, length: int, index: int, variables: Sequence[str]) -> "PolyVector":
        z = Polynomial.zero(variables)
        one = Polynomial.constant(variables, 1)
        return cls([one if i == index else z for i in range(length)], variables)

    @classmethod
    def coordinate_field(cls, variables: Sequence[str], name: str) -> "PolyVector":
        variables = tuple(variables)
        return cls.basis(len(variables), variables.index(name), variables)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self):
        return not self.is_zero()

    def _same(self, other: "PolyVector"):
        if len(self) != len(other):
            raise ValueError(f"length mismatch {len(self)} vs {len(other)}")
        if self.variables != other.variables:
            raise ChartMismatch(f"chart mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._same(other)
        return PolyVector([a + b for a, b in zip(self.components, other.components)], self.variables)

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        self._same(other)
        return PolyVector([a - b for a, b in zip(self.components, other.components)], self.variables)

    def __neg__(self):
        return PolyVector([-a for a in self.components], self.variables)

    def scale(self, f) -> "PolyVector":
        """Multiply every component by a polynomial or scalar."""
        return PolyVector([a * f for a in self.components], self.variables)

    __mul__ = scale
    __rmul__ = scale

    def rechart(self, variables: Sequence[str]) -> "PolyVector":
        return PolyVector([c.rechart(variables) for c in self.components], variables)

    def max_degree(self) -> int:
        return max((c.degree() for c in self.components), default=-1)

    # -- vector field operations ------------------------------------------

    def apply(self, f: Polynomial) -> Polynomial:
        """Derivative of ``f`` along this vector field."""
        if len(self) != len(self.variables):
            raise ValueError("not a vector field on its chart")
        out = Polynomial.zero(self.variables)
        for comp, v in zip(self.components, self.variables):
            if comp:
                out = out + comp * f.derivative(v)
        return out

    def apply_each(self, other: "PolyVector") -> "PolyVector":
        """Derivative of every component of ``other`` along this vector field."""
        return PolyVector([self.apply(c) for c in other.components], self.variables)

    def lie_bracket(self, other: "PolyVector") -> "PolyVector":
        """Commutator of vector fields, componentwise X(Y^i) - Y(X^i)."""
        self._same(other)
        return PolyVector(
            [self.apply(b) - other.apply(a) for a, b in zip(self.components, other.components)],
            self.variables,
        )

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    def __hash__(self):
        return hash((self.variables, self.components))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"PolyVector{self}"


class PolyMatrix:
    """Dense matrix of polynomials with an explicit shape (empty shapes allowed)."""

    __slots__ = ("rows", "shape", "variables")

    def __init__(self, rows: Iterable[Iterable[Polynomial]], shape: tuple | None = None,
                 variables: Sequence[str] | None = None):
        rows = tuple(tuple(r) for r in rows)
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        if variables is None:
            variables = next((c.variables for r in rows for c in r), None)
            if variables is None:
                raise ValueError("empty PolyMatrix needs an explicit chart")
        self.variables = tuple(variables)
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ValueError(f"rows do not match shape {shape}")
        for r in rows:
            for c in r:
                if c.variables != self.variables:
                    raise ChartMismatch(f"entry chart {c.variables} differs from {self.variables}")
        self.rows = rows
        self.shape = tuple(shape)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, variables: Sequence[str]) -> "PolyMatrix":
        z = Polynomial.zero(variables)
        return cls([[z] * ncols for _ in range(nrows)], (nrows, ncols), variables)

    @classmethod
    def identity(cls, n: int, variables: Sequence[str]) -> "PolyMatrix":
        z = Polynomial.zero(variables)
        one = Polynomial.constant(variables, 1)
        return cls([[one if i == j else z for j in range(n)] for i in range(n)], (n, n), variables)

    @classmethod
    def unit(cls, nrows: int, ncols: int, i: int, j: int, variables: Sequence[str]) -> "PolyMatrix":
        z = Polynomial.zero(variables)
        one = Polynomial.constant(variables, 1)
        return cls([[one if (a, b) == (i, j) else z for b in range(ncols)] for a in range(nrows)],
                   (nrows, ncols), variables)

    @classmethod
    def from_columns(cls, columns: Sequence[PolyVector], nrows: int, variables: Sequence[str]) -> "PolyMatrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], (nrows, len(columns)), variables)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> PolyVector:
        return PolyVector([r[j] for r in self.rows], self.variables)

    def is_zero(self) -> bool:
        return all(c.is_zero() for r in self.rows for c in r)

    def _same(self, other: "PolyMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.variables != other.variables:
            raise ChartMismatch(f"chart mismatch: {self.variables} vs {other.variables}")

    def _map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(c) for c in r] for r in self.rows], self.shape, self.variables)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.shape, self.variables)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.shape, self.variables)

    def __neg__(self):
        return self._map(lambda c: -c)

    def scale(self, f) -> "PolyMatrix":
        return self._map(lambda c: c * f)

    def __matmul__(self, other):
        if isinstance(other, PolyVector):
            if self.shape[1] != len(other):
                raise ValueError(f"cannot apply {self.shape} matrix to vector of length {len(other)}")
            z = Polynomial.zero(self.variables)
            out = []
            for r in self.rows:
                acc = z
                for a, b in zip(r, other.components):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            return PolyVector(out, self.variables)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.variables != other.variables:
            raise ChartMismatch(f"chart mismatch: {self.variables} vs {other.variables}")
        z = Polynomial.zero(self.variables)
        rows = []
        for r in self.rows:
            row = []
            for j in range(other.shape[1]):
                acc = z
                for k, a in enumerate(r):
                    b = other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(rows, (self.shape[0], other.shape[1]), self.variables)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for i in range(self.shape[0])] for j in range(self.shape[1])],
                          (self.shape[1], self.shape[0]), self.variables)

    def derive(self, field: PolyVector) -> "PolyMatrix":
        """Entrywise derivative along a vector field."""
        return self._map(field.apply)

    def rechart(self, variables: Sequence[str]) -> "PolyMatrix":
        return PolyMatrix([[c.rechart(variables) for c in r] for r in self.rows], self.shape, variables)

    def max_degree(self) -> int:
        return max((c.degree() for r in self.rows for c in r), default=-1)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.variables == other.variables and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.variables, self.rows))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"PolyMatrix{self}"


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),\[\]=])"
)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    """Split text into tokens; positions are 1-based and account for newlines."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, column))
        for ch in chunk:
            if ch == "\n":
                line += 1
                column = 1
            else:
                column += 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, column))
    return tokens


class ExpressionParser:
    """Recursive-descent parser producing canonical polynomials."""

    def __init__(self, tokens: list, variables: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def accept(self, text) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            shown = self.current.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")

    def at_end(self) -> bool:
        return self.current.kind == "eof"

    def expr(self) -> Polynomial:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        value = self.term()
        if negate:
            value = -value
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            tok = self.current
            if tok.kind != "num":
                raise self.error("expected a natural number exponent")
            self.pos += 1
            base = base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.current
        if tok.kind == "num":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.accept("/"):
                den = self.current
                if den.kind != "num":
                    raise self.error("expected a natural number denominator")
                if int(den.text) == 0:
                    raise self.error("zero denominator", den)
                self.pos += 1
                value = value / int(den.text)
            return Polynomial.constant(self.variables, value)
        if tok.kind == "ident":
            if tok.text not in self.variables:
                raise self.error(f"unknown identifier {tok.text!r}")
            self.pos += 1
            return Polynomial.variable(self.variables, tok.text)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        shown = tok.text or "end of input"
        raise self.error(f"unexpected {shown!r}")


def parse_expression(text: str, chart: Sequence[str], line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``text`` as a polynomial over ``chart``."""
    parser = ExpressionParser(tokenize(text, line, column), chart)
    value = parser.expr()
    if not parser.at_end():
        raise parser.error(f"unexpected {parser.current.text!r}")
    return value


def linear_coefficients(p: Polynomial, chart: Sequence[str], basis: Sequence[str]) -> list:
    """Split a polynomial over ``chart + basis`` that is linear in ``basis``.

    Returns the coefficient of each basis symbol as a polynomial over ``chart``.
    Raises ValueError when some term is not of degree exactly one in ``basis``.
    """
    chart = tuple(chart)
    basis = tuple(basis)
    m = len(chart)
    coeffs = [dict() for _ in basis]
    for exp, c in p.terms.items():
        tail = exp[m:]
        if sum(tail) != 1:
            raise ValueError("expression is not linear in " + ", ".join(basis))
        coeffs[tail.index(1)][exp[:m]] = c
    return [Polynomial(chart, t) for t in coeffs]


def format_combination(coeffs: Sequence[Polynomial], chart: Sequence[str], basis: Sequence[str]) -> str:
    """Canonical text for the combination sum(coeffs[i] * basis[i])."""
    chart = tuple(chart)
    variables = chart + tuple(basis)
    total = Polynomial.zero(variables)
    for c, name in zip(coeffs, basis):
        if c:
            total = total + c.rechart(variables) * Polynomial.variable(variables, name)
    return str(total)
