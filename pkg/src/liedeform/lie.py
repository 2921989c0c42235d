"""Finite-dimensional Lie algebras, gl(n) matrices and linear maps between algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import QMatrix, as_rational, format_rational, rref, solve_particular

__all__ = [
    "LieError",
    "NotClosedError",
    "JacobiError",
    "GlElement",
    "commutator",
    "elementary",
    "LieAlgebra",
    "gl",
    "LinearEmbedding",
    "Violation",
    "algebra_from_matrices",
    "check_homomorphism",
    "zero_map",
]


class LieError(ValueError):
    pass


class NotClosedError(LieError):
    """Raised when a span of matrices is not closed under the commutator."""

    def __init__(self, i: int, j: int, labels: Sequence[str] | None = None):
        self.pair = (i, j)
        a, b = (labels[i], labels[j]) if labels else (str(i), str(j))
        super().__init__(f"span not closed under the bracket: [{a}, {b}] lies outside it")


class JacobiError(LieError):
    pass


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GlElement:
    """An n x n rational matrix, viewed as an element of gl(n)."""

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> GlElement:
        n = len(rows)
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if any(len(row) != n for row in data):
            raise ValueError("matrix must be square")
        return cls(n, data)

    @classmethod
    def zero(cls, n: int) -> GlElement:
        return cls(n, tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def from_coords(cls, coords: Sequence, n: int) -> GlElement:
        """Inverse of :meth:`coords` (row-major e11, e12, ..., enn)."""
        c = [as_rational(x) for x in coords]
        return cls(n, tuple(tuple(c[i * n:(i + 1) * n]) for i in range(n)))

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.entries for x in row)

    def _check(self, other: GlElement):
        if self.n != other.n:
            raise ValueError(f"size mismatch: gl({self.n}) vs gl({other.n})")

    def __add__(self, other: GlElement) -> GlElement:
        self._check(other)
        return GlElement(self.n, tuple(tuple(a + b for a, b in zip(r, s))
                                       for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: GlElement) -> GlElement:
        return self + other.scale(-1)

    def __neg__(self) -> GlElement:
        return self.scale(-1)

    def scale(self, c) -> GlElement:
        c = as_rational(c)
        return GlElement(self.n, tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other: GlElement) -> GlElement:
        self._check(other)
        cols = list(zip(*other.entries))
        return GlElement(self.n, tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
            for row in self.entries))

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __repr__(self):
        rows = ["[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.entries]
        return f"GlElement([{', '.join(rows)}])"


def commutator(a: GlElement, b: GlElement) -> GlElement:
    return a @ b - b @ a


def elementary(i: int, j: int, n: int) -> GlElement:
    """The matrix unit e_ij (1-based indices)."""
    rows = [[0] * n for _ in range(n)]
    rows[i - 1][j - 1] = 1
    return GlElement.from_rows(rows)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A Lie algebra given by structure constants in a fixed ordered basis.

    ``structure[(i, j)]`` is a tuple of ``(k, c)`` pairs with
    ``[b_i, b_j] = sum c b_k``; only pairs with ``i < j`` and a nonzero
    bracket are stored, the rest follows by antisymmetry.  ``matrices`` is
    an optional faithful matrix realization of the basis, used for display
    and for evaluating maps into gl(n).
    """

    dim: int
    labels: tuple[str, ...]
    structure: dict = field(default_factory=dict)
    matrices: tuple[GlElement, ...] | None = None

    @classmethod
    def from_constants(cls, labels: Sequence[str], brackets: dict, matrices=None,
                       check: bool = True) -> LieAlgebra:
        """Build from ``{(i, j): coords}``; antisymmetry fills in ``(j, i)``."""
        dim = len(labels)
        table: dict = {}
        for (i, j), coords in brackets.items():
            coords = [as_rational(x) for x in coords]
            if len(coords) != dim:
                raise LieError(f"bracket [{labels[i]}, {labels[j]}] has wrong length")
            if i == j:
                if any(coords):
                    raise LieError(f"[{labels[i]}, {labels[i]}] must vanish")
                continue
            if i > j:
                i, j, coords = j, i, [-x for x in coords]
            if (i, j) in table and table[(i, j)] != tuple(coords):
                raise LieError(f"inconsistent brackets for ({labels[i]}, {labels[j]})")
            table[(i, j)] = tuple(coords)
        structure = {
            key: tuple((k, c) for k, c in enumerate(v) if c)
            for key, v in sorted(table.items()) if any(v)
        }
        alg = cls(dim, tuple(labels), structure,
                  tuple(matrices) if matrices is not None else None)
        if check:
            bad = alg.jacobi_violations()
            if bad:
                i, j, k = bad[0]
                raise JacobiError(
                    f"Jacobi identity fails on ({labels[i]}, {labels[j]}, {labels[k]})")
        return alg

    def constant(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for kk, c in self.structure.get((i, j), ()):
            if kk == k:
                return sign * c
        return Fraction(0)

    def basis_bracket(self, i: int, j: int) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.structure.get((i, j), ()):
            out[k] = sign * c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                if i == j:
                    continue
                if i < j:
                    terms, s = self.structure.get((i, j), ()), a * b
                else:
                    terms, s = self.structure.get((j, i), ()), -a * b
                for k, c in terms:
                    out[k] += s * c
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.structure

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        basis = [tuple(Fraction(int(i == k)) for k in range(self.dim)) for i in range(self.dim)]
        for i, j, k in itertools.combinations(range(self.dim), 3):
            total = [Fraction(0)] * self.dim
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                v = self.bracket(self.basis_bracket(a, b), basis[c])
                total = [s + t for s, t in zip(total, v)]
            if any(total):
                bad.append((i, j, k))
        return bad

    def to_matrix(self, coords: Sequence) -> GlElement:
        if self.matrices is None:
            raise LieError("algebra has no matrix realization")
        out = GlElement.zero(self.matrices[0].n)
        for c, m in zip(coords, self.matrices):
            if c:
                out = out + m.scale(c)
        return out

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, labels={list(self.labels)})"


_GL_CACHE: dict[int, LieAlgebra] = {}


def gl(n: int) -> LieAlgebra:
    """gl(n) in the row-major basis e11, e12, ..., enn."""
    if n in _GL_CACHE:
        return _GL_CACHE[n]
    idx = lambda i, j: i * n + j  # noqa: E731
    labels = [f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1}_{j + 1}"
              for i in range(n) for j in range(n)]
    brackets = {}
    for (i, j), (k, l) in itertools.product(itertools.product(range(n), repeat=2), repeat=2):
        a, b = idx(i, j), idx(k, l)
        if a >= b:
            continue
        v = [0] * (n * n)
        # [e_ij, e_kl] = d_jk e_il - d_li e_kj
        if j == k:
            v[idx(i, l)] += 1
        if l == i:
            v[idx(k, j)] -= 1
        if any(v):
            brackets[(a, b)] = v
    mats = [GlElement.from_coords([int(t == s) for t in range(n * n)], n)
            for s in range(n * n)]
    alg = LieAlgebra.from_constants(labels, brackets, mats, check=False)
    _GL_CACHE[n] = alg
    return alg


def algebra_from_matrices(gens: Sequence[GlElement], labels: Sequence[str] | None = None
                          ) -> tuple[LieAlgebra, LinearEmbedding]:
    """Structure constants of the span of ``gens`` plus its inclusion into gl(n).

    The generators must be linearly independent and their span closed
    under the commutator.
    """
    if not gens:
        raise LieError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise LieError("generators have different sizes")
    if labels is None:
        labels = [f"b{i + 1}" for i in range(len(gens))]
    if len(labels) != len(gens):
        raise LieError("one label per generator required")
    span = QMatrix.from_columns([g.coords() for g in gens], n * n)
    rank, _, _ = rref(span)
    if rank < len(gens):
        raise LieError("generators are linearly dependent")
    brackets = {}
    for i, j in itertools.combinations(range(len(gens)), 2):
        c = commutator(gens[i], gens[j])
        coords = solve_particular(span, c.coords())
        if coords is None:
            raise NotClosedError(i, j, labels)
        brackets[(i, j)] = coords
    alg = LieAlgebra.from_constants(labels, brackets, gens)
    emb = LinearEmbedding(alg, gl(n), tuple(g.coords() for g in gens))
    return alg, emb


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    lhs: tuple[Fraction, ...]  # rho([x_i, x_j])
    rhs: tuple[Fraction, ...]  # [rho(x_i), rho(x_j)]


@dataclass(frozen=True, eq=False)
class LinearEmbedding:
    """A linear map source -> target given by the images of the source basis.

    Despite the name the map need not be injective; the zero map is allowed.
    """

    source: LieAlgebra
    target: LieAlgebra
    images: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.source.dim:
            raise LieError("need one image per source basis vector")
        object.__setattr__(self, "images", tuple(
            tuple(as_rational(x) for x in v) for v in self.images))
        if any(len(v) != self.target.dim for v in self.images):
            raise LieError("image has wrong length for the target algebra")

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.target.dim
        for a, img in zip(x, self.images):
            if a:
                for k, v in enumerate(img):
                    if v:
                        out[k] += a * v
        return tuple(out)


def zero_map(source: LieAlgebra, target: LieAlgebra) -> LinearEmbedding:
    return LinearEmbedding(source, target, tuple((0,) * target.dim for _ in range(source.dim)))


def check_homomorphism(rho: LinearEmbedding) -> tuple[bool, list[Violation]]:
    """Test rho([x, y]) == [rho(x), rho(y)] on every pair of basis vectors."""
    bad = []
    h, g = rho.source, rho.target
    for i, j in itertools.combinations(range(h.dim), 2):
        lhs = rho(h.basis_bracket(i, j))
        rhs = g.bracket(rho.images[i], rho.images[j])
        if lhs != rhs:
            bad.append(Violation(i, j, lhs, rhs))
    return not bad, bad
