"""Chevalley-Eilenberg cochains of h with values in g (h acting through ad o rho).

Sign convention: the differential here is the negative of the textbook one,

    delta^0(A)(x)   = [A, rho(x)]
    delta^1(m)(x,y) = m([x,y]) - [rho(x), m(y)] + [rho(y), m(x)]

and delta^2 is the textbook degree-2 formula negated, so that
``delta^{p+1} o delta^p = 0`` still holds.  Kernels and images are unaffected.

A p-cochain is stored as a coordinate vector over the basis
``(wedge of duals) x (basis of g)`` where the wedges ``x_i* ^ x_j* ^ ...``
(``i < j < ...``) are in lexicographic order and the g index runs fastest.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exact import (
    LinearSolver,
    QMatrix,
    SubspaceBasis,
    as_rational,
    format_rational,
    image_basis,
    kernel_basis,
    solve_particular,
)
from .lie import LieAlgebra, LinearEmbedding

__all__ = [
    "Cochain",
    "CohomologyReport",
    "delta",
    "delta_matrix",
    "cocycles",
    "coboundaries",
    "cohomology",
    "coboundary_preimage",
    "parse_cochain",
    "wedges",
]

MAX_DEGREE = 2


@functools.lru_cache(maxsize=None)
def wedges(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(n), p))


@functools.lru_cache(maxsize=None)
def _wedge_index(n: int, p: int) -> dict:
    return {w: i for i, w in enumerate(wedges(n, p))}


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the permutation sorting ``idx``; ``(0, None)`` on a repeat."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class Cochain:
    """An alternating p-linear map h x ... x h -> g in coordinates."""

    __slots__ = ("degree", "source", "target", "coords")

    def __init__(self, degree: int, source: LieAlgebra, target: LieAlgebra, coords=None):
        size = comb(source.dim, degree) * target.dim
        if coords is None:
            coords = (Fraction(0),) * size
        coords = tuple(as_rational(x) for x in coords)
        if len(coords) != size:
            raise ValueError(f"a {degree}-cochain needs {size} coordinates, got {len(coords)}")
        self.degree = degree
        self.source = source
        self.target = target
        self.coords = coords

    @classmethod
    def zero(cls, degree: int, source: LieAlgebra, target: LieAlgebra) -> Cochain:
        return cls(degree, source, target)

    @classmethod
    def basis_element(cls, degree: int, source: LieAlgebra, target: LieAlgebra,
                      wedge: Sequence[int], k: int) -> Cochain:
        coords = [0] * (comb(source.dim, degree) * target.dim)
        sign, w = _sort_sign(wedge)
        if sign:
            coords[_wedge_index(source.dim, degree)[w] * target.dim + k] = sign
        return cls(degree, source, target, coords)

    @classmethod
    def from_values(cls, source: LieAlgebra, target: LieAlgebra, values: Sequence) -> Cochain:
        """1-cochain from the list of images of the basis of h."""
        return cls(1, source, target, [x for v in values for x in v])

    # vector space structure -------------------------------------------------

    def _compatible(self, other: Cochain):
        if (self.degree != other.degree or self.source.labels != other.source.labels
                or self.target.labels != other.target.labels):
            raise ValueError("incompatible cochains")

    def __add__(self, other: Cochain) -> Cochain:
        self._compatible(other)
        return Cochain(self.degree, self.source, self.target,
                       [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: Cochain) -> Cochain:
        return self + other.scale(-1)

    def __neg__(self) -> Cochain:
        return self.scale(-1)

    def scale(self, c) -> Cochain:
        c = as_rational(c)
        return Cochain(self.degree, self.source, self.target, [c * a for a in self.coords])

    def __mul__(self, c) -> Cochain:
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.coords == other.coords
                and self.source.labels == other.source.labels
                and self.target.labels == other.target.labels)

    def __hash__(self):
        return hash((self.degree, self.coords))

    # evaluation -------------------------------------------------------------

    def value(self, *args: int) -> tuple[Fraction, ...]:
        """Value on a tuple of basis indices of h; alternating in the arguments."""
        if len(args) != self.degree:
            raise ValueError(f"{self.degree}-cochain takes {self.degree} arguments")
        g = self.target.dim
        sign, w = _sort_sign(args)
        if not sign:
            return (Fraction(0),) * g
        i = _wedge_index(self.source.dim, self.degree)[w]
        block = self.coords[i * g:(i + 1) * g]
        return block if sign > 0 else tuple(-x for x in block)

    def __call__(self, *vectors: Sequence) -> tuple[Fraction, ...]:
        """Multilinear evaluation on coordinate vectors of h."""
        out = [Fraction(0)] * self.target.dim
        supports = [[(i, a) for i, a in enumerate(v) if a] for v in vectors]
        for combo in itertools.product(*supports):
            idx = [i for i, _ in combo]
            coef = Fraction(1)
            for _, a in combo:
                coef *= a
            val = self.value(*idx)
            for k, x in enumerate(val):
                if x:
                    out[k] += coef * x
        return tuple(out)

    # display ----------------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int, Fraction]]:
        g = self.target.dim
        ws = wedges(self.source.dim, self.degree)
        return [(ws[i // g], i % g, c) for i, c in enumerate(self.coords) if c]

    def render(self, ascii: bool = False) -> str:
        wedge_sym, tensor_sym = ("^", "@") if ascii else ("∧", "⊗")
        parts = []
        for w, k, c in self.terms():
            duals = wedge_sym.join(f"{self.source.labels[i]}*" for i in w)
            basis = f"{duals}{tensor_sym}{self.target.labels[k]}" if duals else self.target.labels[k]
            mag = abs(c)
            body = basis if mag == 1 else f"{format_rational(mag)} {basis}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Cochain[{self.degree}]({self.render()})"

    def __str__(self):
        return self.render()


# ---------------------------------------------------------------------------
# parsing the rendered notation back into cochains

_COEF = re.compile(r"^\s*(\d+(?:/\d+)?)?\s*\*?\s*(.*)$", re.S)


def _split_signed(text: str) -> list[tuple[int, str]]:
    """Split at top-level + and - signs (not inside parentheses)."""
    out, depth, cur, sign = [], 0, "", 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-−":
            if cur.strip():
                out.append((sign, cur))
                sign = 1
            cur = ""
            if ch != "+":
                sign = -sign
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur))
    return out


def _coef_and_rest(text: str) -> tuple[Fraction, str]:
    m = _COEF.match(text)
    c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    return c, m.group(2).strip()


def parse_cochain(text: str, source: LieAlgebra, target: LieAlgebra,
                  degree: int | None = None) -> Cochain:
    """Parse notation such as ``"Z*⊗(2e22 + e11) + Y*⊗e21"``.

    Accepts ``⊗``/``@`` for the tensor sign and ``∧``/``^`` for the wedge.
    Target labels may omit a leading ``e`` (``X*⊗21``).  A bare ``"0"``
    needs ``degree``.
    """
    text = text.replace("⊗", "@").replace("∧", "^").replace("⋆", "*").replace("−", "-")
    src = {lab: i for i, lab in enumerate(source.labels)}
    tgt = {lab: i for i, lab in enumerate(target.labels)}

    def target_index(lab: str) -> int:
        lab = lab.strip()
        if lab in tgt:
            return tgt[lab]
        if "e" + lab in tgt:
            return tgt["e" + lab]
        raise ValueError(f"unknown target basis label {lab!r}")

    result = None
    for sign, term in _split_signed(text):
        coef, body = _coef_and_rest(term)
        coef *= sign
        if body == "0" or (body == "" and coef == 0):
            continue
        if body == "":
            raise ValueError(f"term {term.strip()!r} has no basis element")
        if "@" in body:
            duals_txt, targ_txt = body.split("@", 1)
            duals = [d.strip().rstrip("*").strip() for d in duals_txt.split("^")]
            try:
                wedge = [src[d] for d in duals]
            except KeyError as exc:
                raise ValueError(f"unknown source label in {term.strip()!r}") from exc
        else:
            wedge, targ_txt = [], body
        p = len(wedge)
        if degree is not None and p != degree:
            raise ValueError(f"term {term.strip()!r} has degree {p}, expected {degree}")
        degree = p
        targ_txt = targ_txt.strip()
        if targ_txt.startswith("(") and targ_txt.endswith(")"):
            pieces = [(s * c, rest) for s, piece in _split_signed(targ_txt[1:-1])
                      for c, rest in [_coef_and_rest(piece)]]
        else:
            pieces = [(Fraction(1), targ_txt)]
        for c, lab in pieces:
            b = Cochain.basis_element(p, source, target, wedge, target_index(lab))
            b = b.scale(coef * c)
            result = b if result is None else result + b
    if result is None:
        if degree is None:
            raise ValueError("cannot infer the degree of a zero cochain")
        return Cochain.zero(degree, source, target)
    return result


# ---------------------------------------------------------------------------
# differentials


def _check_rho(rho: LinearEmbedding, c: Cochain):
    if c.source.labels != rho.source.labels or c.target.labels != rho.target.labels:
        raise ValueError("cochain does not match the homomorphism's source/target")


def _delta_direct(p: int, rho: LinearEmbedding, c: Cochain) -> Cochain:
    h, g = rho.source, rho.target
    out = Cochain.zero(p + 1, h, g)
    coords = list(out.coords)
    gd = g.dim
    for wi, xs in enumerate(wedges(h.dim, p + 1)):
        total = [Fraction(0)] * gd
        # textbook d: sum_i (-1)^i x_i . c(..^i..) + sum_{i<j} (-1)^{i+j} c([x_i,x_j], ...)
        for i, xi in enumerate(xs):
            rest = xs[:i] + xs[i + 1:]
            v = g.bracket(rho.images[xi], c.value(*rest))
            s = -1 if i % 2 else 1
            total = [t + s * a for t, a in zip(total, v)]
        for i, j in itertools.combinations(range(len(xs)), 2):
            br = h.basis_bracket(xs[i], xs[j])
            if not any(br):
                continue
            rest = [xs[k] for k in range(len(xs)) if k not in (i, j)]
            units = [[int(k == r) for k in range(h.dim)] for r in rest]
            v = c(br, *units)
            s = -1 if (i + j) % 2 else 1
            total = [t + s * a for t, a in zip(total, v)]
        coords[wi * gd:(wi + 1) * gd] = [-t for t in total]
    return Cochain(p + 1, h, g, coords)


def delta(p: int, rho: LinearEmbedding, c: Cochain) -> Cochain:
    """The differential on p-cochains, p in {0, 1, 2}."""
    if p not in range(MAX_DEGREE + 1):
        raise ValueError(f"differential only available in degrees 0..{MAX_DEGREE}, got {p}")
    if c.degree != p:
        raise ValueError(f"expected a {p}-cochain, got degree {c.degree}")
    _check_rho(rho, c)
    return _delta_direct(p, rho, c)


@functools.lru_cache(maxsize=64)
def delta_matrix(p: int, rho: LinearEmbedding) -> QMatrix:
    """Matrix of ``delta(p, rho, .)``; column j is the image of the j-th basis cochain."""
    if p not in range(MAX_DEGREE + 1):
        raise ValueError(f"differential only available in degrees 0..{MAX_DEGREE}, got {p}")
    h, g = rho.source, rho.target
    n_dom = comb(h.dim, p) * g.dim
    n_cod = comb(h.dim, p + 1) * g.dim
    cols = []
    for j in range(n_dom):
        e = [0] * n_dom
        e[j] = 1
        cols.append(_delta_direct(p, rho, Cochain(p, h, g, e)).coords)
    if not cols:
        return QMatrix.zeros(n_cod, 0)
    return QMatrix.from_columns(cols, n_cod)


@functools.lru_cache(maxsize=64)
def _solver(p: int, rho: LinearEmbedding) -> LinearSolver:
    return LinearSolver(delta_matrix(p, rho))


def cocycles(p: int, rho: LinearEmbedding) -> SubspaceBasis:
    return kernel_basis(delta_matrix(p, rho))


def coboundaries(p: int, rho: LinearEmbedding) -> SubspaceBasis:
    if p < 1:
        raise ValueError("coboundaries start in degree 1")
    return image_basis(delta_matrix(p - 1, rho))


@dataclass(frozen=True, eq=False)
class CohomologyReport:
    degree: int
    rho: LinearEmbedding
    cocycle_basis: SubspaceBasis
    coboundary_basis: SubspaceBasis
    representatives: tuple[Cochain, ...]

    @property
    def dims(self) -> tuple[int, int, int]:
        z, b = self.cocycle_basis.dim, self.coboundary_basis.dim
        return z, b, z - b

    def is_cocycle(self, c: Cochain) -> bool:
        return self.cocycle_basis.contains(c.coords)

    def is_coboundary(self, c: Cochain) -> bool:
        return self.coboundary_basis.contains(c.coords)

    def class_coords(self, c: Cochain) -> tuple[Fraction, ...]:
        """Coordinates of the class of cocycle ``c`` on the representatives."""
        if not self.is_cocycle(c):
            raise ValueError(f"{c.render()} is not a cocycle")
        cols = [r.coords for r in self.representatives] + list(self.coboundary_basis.vectors)
        if not cols:
            return ()
        x = solve_particular(QMatrix.from_columns(cols, len(c.coords)), c.coords)
        return x[:len(self.representatives)]

    def to_json(self) -> dict:
        h, g = self.rho.source, self.rho.target

        def vec(v):
            return [format_rational(x) for x in v]

        def render(v):
            return Cochain(self.degree, h, g, v).render()

        z, b, hd = self.dims
        return {
            "degree": self.degree,
            "dims": {"Z": z, "B": b, "H": hd},
            "cocycle_basis": [{"coords": vec(v), "render": render(v)}
                              for v in self.cocycle_basis.vectors],
            "coboundary_basis": [{"coords": vec(v), "render": render(v)}
                                 for v in self.coboundary_basis.vectors],
            "representatives": [{"coords": vec(r.coords), "render": r.render()}
                                for r in self.representatives],
        }


def cohomology(p: int, rho: LinearEmbedding) -> CohomologyReport:
    """Cocycles, coboundaries and a set of class representatives in degree p.

    Representatives are the cocycle basis vectors (in RREF order) that are
    not in the span of the coboundaries and the previously chosen ones,
    each reduced modulo the coboundaries.
    """
    z = cocycles(p, rho)
    b = coboundaries(p, rho)
    reps = []
    current = b
    for v in z.vectors:
        if current.contains(v):
            continue
        reps.append(Cochain(p, rho.source, rho.target, b.reduce(v)))
        current = SubspaceBasis.span(list(current.vectors) + [v], z.ambient_dim)
    return CohomologyReport(p, rho, z, b, tuple(reps))


def coboundary_preimage(c: Cochain, rho: LinearEmbedding) -> Cochain | None:
    """A cochain m with delta(m) = c, free coordinates zero; ``None`` if c is no coboundary."""
    if c.degree < 1:
        raise ValueError("only cochains of degree >= 1 can be coboundaries")
    _check_rho(rho, c)
    x = _solver(c.degree - 1, rho).solve(c.coords)
    if x is None:
        return None
    return Cochain(c.degree - 1, rho.source, rho.target, x)
