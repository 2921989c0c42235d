"""Exact rational arithmetic: parameter polynomials and dense linear algebra over Q.

Rationals are :class:`fractions.Fraction`. Matrices are small and dense, so
everything here is plain Python lists of fractions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "monomial_key",
    "monomials_of_degree",
    "format_monomial",
    "parse_monomial",
    "ParamPoly",
    "QMatrix",
    "SubspaceBasis",
    "rref",
    "kernel_basis",
    "image_basis",
    "solve_particular",
    "LinearSolver",
]


def as_rational(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: a float has already lost exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# monomials in t_1..t_r, stored as exponent tuples


def monomial_key(exps: Sequence[int]):
    # graded lex: lower degree first, then t1 before t2 ...
    return (sum(exps), tuple(-e for e in exps))


def monomials_of_degree(r: int, m: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(r), m):
        e = [0] * r
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=monomial_key)


def format_monomial(exps: Sequence[int], names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"t{i + 1}" for i in range(len(exps))]
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, r: int, names: Sequence[str] | None = None) -> tuple[int, ...]:
    """Inverse of :func:`format_monomial`: ``"t1*t3^2"`` -> ``(1, 0, 2, 0)``."""
    if names is None:
        names = [f"t{i + 1}" for i in range(r)]
    index = {n: i for i, n in enumerate(names)}
    e = [0] * r
    text = text.strip()
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        name, _, power = factor.strip().partition("^")
        if name not in index:
            raise ValueError(f"unknown parameter {name!r} in monomial {text!r}")
        e[index[name]] += int(power) if power else 1
    return tuple(e)


# ---------------------------------------------------------------------------


class ParamPoly:
    """Polynomial in ``nvars`` commuting variables with rational coefficients.

    Terms live in a dict ``exponents -> coefficient`` that never holds zeros.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"monomial {exps} does not have {nvars} exponents")
            c = as_rational(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, nvars: int) -> ParamPoly:
        return cls(nvars)

    @classmethod
    def const(cls, c, nvars: int) -> ParamPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> ParamPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> ParamPoly:
        return cls(len(exps), {tuple(exps): c})

    def _coerce(self, other) -> ParamPoly:
        if isinstance(other, ParamPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"parameter count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        return ParamPoly.const(as_rational(other), self.nvars)

    def __add__(self, other) -> ParamPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ParamPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> ParamPoly:
        return ParamPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> ParamPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> ParamPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> ParamPoly:
        if not isinstance(other, ParamPoly):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return ParamPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ParamPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = ParamPoly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> ParamPoly:
        c = as_rational(c)
        return ParamPoly(self.nvars, {k: v * c for k, v in self.terms.items()})

    def homogeneous_part(self, m: int) -> ParamPoly:
        return ParamPoly(self.nvars, {k: v for k, v in self.terms.items() if sum(k) == m})

    def graded_parts(self) -> dict[int, ParamPoly]:
        degs = sorted({sum(k) for k in self.terms})
        return {m: self.homogeneous_part(m) for m in degs}

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def evaluate(self, values: Sequence) -> Fraction:
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [as_rational(v) for v in values]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ParamPoly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.items():
            mono = format_monomial(exps, names)
            mag = abs(c)
            if mono == "1":
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"ParamPoly({self.format()})"


# ---------------------------------------------------------------------------
# dense matrices over Q


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> QMatrix:
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("column count needed for a matrix with no rows")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> QMatrix:
        cols = len(columns)
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column has wrong length")
            for i, x in enumerate(col):
                data[i][j] = as_rational(x)
        return cls(rows, cols, tuple(tuple(r) for r in data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, x) if a and b), Fraction(0))
                     for row in self.entries)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def rref(m: QMatrix) -> tuple[int, QMatrix, list[int]]:
    """Reduced row-echelon form.

    Elimination runs on integer rows scaled to content 1, which keeps
    entry growth in check; pivots are normalized to 1 only at the end.
    Returns ``(rank, reduced, pivot_columns)``.
    """
    a = [_primitive(_integer_row(row)) for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(m.rows):
            f = a[i][c]
            if i != r and f:
                a[i] = _primitive([pv * x - f * y for x, y in zip(a[i], pr)])
        pivots.append(c)
        r += 1
    reduced = []
    for i, row in enumerate(a):
        if i < r:
            pv = row[pivots[i]]
            reduced.append(tuple(Fraction(x, pv) for x in row))
        else:
            reduced.append((Fraction(0),) * m.cols)
    return r, QMatrix(m.rows, m.cols, tuple(reduced)), pivots


@dataclass(frozen=True)
class SubspaceBasis:
    """Subspace of Q^n held as the nonzero rows of an RREF matrix."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> SubspaceBasis:
        rows = [tuple(as_rational(x) for x in v) for v in vectors]
        if not rows:
            return cls(ambient_dim, (), ())
        rank, red, piv = rref(QMatrix.from_rows(rows, cols=ambient_dim))
        return cls(ambient_dim, red.entries[:rank], tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self.vectors)

    def reduce(self, v: Sequence) -> tuple[Fraction, ...]:
        """Remainder of ``v`` after clearing all pivot coordinates."""
        w = [as_rational(x) for x in v]
        if len(w) != self.ambient_dim:
            raise ValueError("vector has wrong length")
        for row, p in zip(self.vectors, self.pivots):
            f = w[p]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def quotient_coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` modulo this subspace, on the non-pivot axes."""
        w = self.reduce(v)
        piv = set(self.pivots)
        return tuple(x for i, x in enumerate(w) if i not in piv)

    def contains_subspace(self, other: SubspaceBasis) -> bool:
        return all(self.contains(v) for v in other.vectors)

    def same_span(self, other: SubspaceBasis) -> bool:
        return self.ambient_dim == other.ambient_dim and self.vectors == other.vectors


def kernel_basis(m: QMatrix) -> SubspaceBasis:
    rank, red, piv = rref(m)
    free = [c for c in range(m.cols) if c not in set(piv)]
    vecs = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -red.entries[i][f]
        vecs.append(x)
    return SubspaceBasis.span(vecs, m.cols)


def image_basis(m: QMatrix) -> SubspaceBasis:
    return SubspaceBasis.span(m.columns(), m.rows)


def solve_particular(m: QMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``m x = b`` with every free variable set to zero.

    Returns ``None`` when ``b`` is not in the column space.
    """
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = QMatrix(
        m.rows,
        m.cols + 1,
        tuple(row + (as_rational(x),) for row, x in zip(m.entries, b)),
    )
    rank, red, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(piv):
        x[p] = red.entries[i][m.cols]
    return tuple(x)


class LinearSolver:
    """Repeated solves of ``m x = b`` for one matrix.

    Row-reduces ``[m | I]`` once; the right block is the row transform E
    with ``E m`` in RREF, so each solve is a product ``E b`` followed by a
    consistency check.  Solutions match :func:`solve_particular`.
    """

    def __init__(self, m: QMatrix):
        self.matrix = m
        ident = [[Fraction(int(i == j)) for j in range(m.rows)] for i in range(m.rows)]
        aug = QMatrix(m.rows, m.cols + m.rows,
                      tuple(tuple(row) + tuple(e) for row, e in zip(m.entries, ident)))
        _, red, piv = rref(aug)
        self.pivots = [c for c in piv if c < m.cols]
        self.rank = len(self.pivots)
        self._transform = [{j: x for j, x in enumerate(row[m.cols:]) if x}
                           for row in red.entries]

    def _row_times(self, i: int, b: Sequence[Fraction]) -> Fraction:
        return sum((x * b[j] for j, x in self._transform[i].items() if b[j]), Fraction(0))

    def solve(self, b: Sequence) -> tuple[Fraction, ...] | None:
        m = self.matrix
        if len(b) != m.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
        b = [as_rational(x) for x in b]
        if any(self._row_times(i, b) for i in range(self.rank, m.rows)):
            return None
        x = [Fraction(0)] * m.cols
        for i, p in enumerate(self.pivots):
            x[p] = self._row_times(i, b)
        return tuple(x)
