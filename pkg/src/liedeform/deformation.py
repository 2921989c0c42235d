"""Polynomial deformations of a Lie algebra homomorphism rho0: h -> g.

A deformation ``rho(t) = rho0 + sum_gamma t^gamma rho^gamma`` is stored one
1-cochain per parameter monomial ``gamma``.  It is a homomorphism for all t
exactly when the Maurer-Cartan residual

    delta(phi) - 1/2 [[phi, phi]],      phi = rho(t) - rho0,

vanishes as a polynomial, where ``[[a, b]](x, y) = [a(x), b(y)] - [a(y), b(x)]``.
The integrator solves the degree-m part of that equation one monomial at a
time: ``delta(rho^gamma) = 1/2 sum_{alpha+beta=gamma} [[rho^alpha, rho^beta]]``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .cohomology import (
    Cochain,
    CohomologyReport,
    coboundaries,
    coboundary_preimage,
    delta,
    parse_cochain,
)
from .exact import (
    ParamPoly,
    as_rational,
    format_monomial,
    format_rational,
    monomial_key,
    parse_monomial,
)
from .lie import GlElement, LinearEmbedding

log = logging.getLogger(__name__)

__all__ = [
    "DeformationError",
    "GuardExceeded",
    "InconsistentRHS",
    "NotACocycle",
    "DeformationSeries",
    "TwoCochainPoly",
    "ObstructionReport",
    "OrderRecord",
    "cup",
    "mc_rhs",
    "mc_residual",
    "extend_order",
    "integrate",
    "gauge",
    "order_difference_class",
    "apply",
    "generic_image",
    "specialize",
    "monomial_from_label",
]

Monomial = tuple


class DeformationError(Exception):
    pass


class GuardExceeded(DeformationError):
    """Integration would need a nonzero term beyond the configured maximum order."""

    def __init__(self, order: int, guard: int):
        self.order = order
        self.guard = guard
        super().__init__(f"order {order} has a nonzero right-hand side but max order is {guard}")


class InconsistentRHS(DeformationError):
    """The order-m right-hand side is not a 2-cocycle; the input series was not a solution."""


class NotACocycle(DeformationError):
    def __init__(self, monomial: Monomial, difference: Cochain, image: Cochain):
        self.monomial = monomial
        self.difference = difference
        self.image = image
        super().__init__(
            f"difference at {format_monomial(monomial)} is {difference.render()}, "
            f"whose differential {image.render()} is nonzero")


def monomial_from_label(label: str | Sequence[int], r: int) -> Monomial:
    """``"133"`` or ``"331"`` or ``(3, 1, 3)`` -> exponent tuple (1-based digit labels)."""
    digits = [int(ch) for ch in label] if isinstance(label, str) else list(label)
    e = [0] * r
    for d in digits:
        if not 1 <= d <= r:
            raise ValueError(f"parameter index {d} out of range 1..{r}")
        e[d - 1] += 1
    return tuple(e)


def _add_into(store: dict, key, c: Cochain):
    if key in store:
        c = store[key] + c
    if c.is_zero():
        store.pop(key, None)
    else:
        store[key] = c


# ---------------------------------------------------------------------------


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Nijenhuis-Richardson product of two 1-cochains: [a(x), b(y)] - [a(y), b(x)]."""
    if a.degree != 1 or b.degree != 1:
        raise ValueError("cup product takes two 1-cochains")
    if a.source.labels != b.source.labels or a.target.labels != b.target.labels:
        raise ValueError("cup product of cochains with different source/target")
    h, g = a.source, a.target
    coords = []
    for i, j in itertools.combinations(range(h.dim), 2):
        u = g.bracket(a.value(i), b.value(j))
        v = g.bracket(a.value(j), b.value(i))
        coords.extend(x - y for x, y in zip(u, v))
    return Cochain(2, h, g, coords)


@dataclass(frozen=True)
class OrderRecord:
    """What happened at one order of the integration."""

    order: int
    rhs_support: tuple[Monomial, ...]
    rhs_is_cocycle: bool
    new_terms: tuple[Monomial, ...]


@dataclass(frozen=True, eq=False)
class DeformationSeries:
    rho0: LinearEmbedding
    r: int
    terms: Mapping[Monomial, Cochain] = field(default_factory=dict)
    orders: tuple[OrderRecord, ...] = ()

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            mono = tuple(mono)
            if len(mono) != self.r or sum(mono) < 1:
                raise ValueError(f"bad monomial {mono} for {self.r} parameters")
            if c.degree != 1:
                raise ValueError("deformation terms are 1-cochains")
            if not c.is_zero():
                clean[mono] = c
        object.__setattr__(self, "terms",
                           dict(sorted(clean.items(), key=lambda kv: monomial_key(kv[0]))))

    @classmethod
    def from_labels(cls, rho0: LinearEmbedding, r: int, labelled: Mapping) -> DeformationSeries:
        """Build from labels like ``{"1": c1, "13": c13, "133": c133}``."""
        terms: dict = {}
        for lab, c in labelled.items():
            _add_into(terms, monomial_from_label(lab, r), c)
        return cls(rho0, r, terms)

    @property
    def max_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def homogeneous(self, m: int) -> dict[Monomial, Cochain]:
        return {k: v for k, v in self.terms.items() if sum(k) == m}

    def term(self, mono: Sequence[int]) -> Cochain:
        h, g = self.rho0.source, self.rho0.target
        return self.terms.get(tuple(mono), Cochain.zero(1, h, g))

    def truncated(self, degree: int) -> DeformationSeries:
        return DeformationSeries(self.rho0, self.r,
                                 {k: v for k, v in self.terms.items() if sum(k) <= degree},
                                 self.orders)

    def same_terms(self, other: DeformationSeries) -> bool:
        return self.r == other.r and self.terms == other.terms

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "parameters": self.r,
            "max_degree": self.max_degree,
            "terms": {
                format_monomial(m, names): {
                    "render": c.render(),
                    "coords": [format_rational(x) for x in c.coords],
                }
                for m, c in self.terms.items()
            },
        }

    @classmethod
    def from_json(cls, obj: Mapping, rho0: LinearEmbedding) -> DeformationSeries:
        r = int(obj["parameters"])
        h, g = rho0.source, rho0.target
        terms: dict = {}
        for key, val in obj["terms"].items():
            mono = parse_monomial(key, r)
            if isinstance(val, str):
                c = parse_cochain(val, h, g, degree=1)
            elif "coords" in val:
                c = Cochain(1, h, g, val["coords"])
            else:
                c = parse_cochain(val["render"], h, g, degree=1)
            _add_into(terms, mono, c)
        return cls(rho0, r, terms)

    def render(self, names: Sequence[str] | None = None) -> str:
        lines = []
        for m, c in self.terms.items():
            lines.append(f"  [{format_monomial(m, names)}]  {c.render()}")
        return "\n".join(lines) if lines else "  (no terms beyond rho0)"


class TwoCochainPoly:
    """Polynomial with 2-cochain coefficients; zero coefficients are dropped."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[Monomial, Cochain] | None = None):
        self.r = r
        store: dict = {}
        for k, v in (terms or {}).items():
            _add_into(store, tuple(k), v)
        self.terms = dict(sorted(store.items(), key=lambda kv: monomial_key(kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def __getitem__(self, mono) -> Cochain | None:
        return self.terms.get(tuple(mono))

    def coefficient(self, mono, source, target) -> Cochain:
        return self.terms.get(tuple(mono)) or Cochain.zero(2, source, target)

    def truncated(self, degree: int) -> TwoCochainPoly:
        return TwoCochainPoly(self.r, {k: v for k, v in self.terms.items() if sum(k) <= degree})

    def homogeneous(self, m: int) -> TwoCochainPoly:
        return TwoCochainPoly(self.r, {k: v for k, v in self.terms.items() if sum(k) == m})

    def __eq__(self, other):
        if not isinstance(other, TwoCochainPoly):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = ", ".join(f"{format_monomial(k)}: {v.render()}" for k, v in self.terms.items())
        return f"TwoCochainPoly({{{body}}})"


@dataclass(frozen=True)
class ObstructionReport:
    """The order-m equation at ``monomial`` has no solution.

    ``class_coords`` are the coordinates of the right-hand side modulo the
    image of the differential (one per 2-cochain axis not used as a pivot
    of that image).
    """

    order: int
    monomial: Monomial
    class_coords: tuple[Fraction, ...]
    rhs: Cochain

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "monomial": format_monomial(self.monomial),
            "rhs": self.rhs.render(),
            "class_coords": [format_rational(x) for x in self.class_coords],
        }


# ---------------------------------------------------------------------------
# Maurer-Cartan


def _cup_sum(items: Sequence[tuple[Monomial, Cochain]], degree_filter):
    """sum over ordered pairs of [[c1, c2]] t^(m1+m2); the cup is symmetric,
    so each unordered pair is computed once and doubled."""
    out: dict = {}
    for a, b in itertools.combinations_with_replacement(range(len(items)), 2):
        (m1, c1), (m2, c2) = items[a], items[b]
        gamma = tuple(x + y for x, y in zip(m1, m2))
        if degree_filter(sum(gamma)):
            c = cup(c1, c2)
            _add_into(out, gamma, c if a == b else c.scale(2))
    return out


def mc_rhs(d: DeformationSeries, m: int) -> TwoCochainPoly:
    """Degree-m part of 1/2 sum_{i+j=m} [[rho_i, rho_j]], summed over ordered pairs."""
    items = [(k, v) for k, v in d.terms.items() if sum(k) < m]
    raw = _cup_sum(items, lambda deg: deg == m)
    return TwoCochainPoly(d.r, {k: v.scale(Fraction(1, 2)) for k, v in raw.items()})


def mc_residual(d: DeformationSeries) -> TwoCochainPoly:
    """delta(phi) - 1/2 [[phi, phi]] as a polynomial with 2-cochain coefficients.

    At t this equals rho(t)([x, y]) - [rho(t)(x), rho(t)(y)].
    """
    items = list(d.terms.items())
    out: dict = {}
    for k, v in items:
        _add_into(out, k, delta(1, d.rho0, v))
    for k, v in _cup_sum(items, lambda deg: True).items():
        _add_into(out, k, v.scale(Fraction(-1, 2)))
    return TwoCochainPoly(d.r, out)


def _quotient_coords(c: Cochain, rho: LinearEmbedding) -> tuple[Fraction, ...]:
    return coboundaries(2, rho).quotient_coords(c.coords)


def extend_order(d: DeformationSeries, m: int, *, check_cocycle: bool = True
                 ) -> DeformationSeries | ObstructionReport:
    """Solve the order-m equation, monomial by monomial.

    Returns the extended series, or an :class:`ObstructionReport` for the
    first monomial (graded-lex order) whose right-hand side is not a
    coboundary.  Raises :class:`InconsistentRHS` when a right-hand side
    fails to be a 2-cocycle.
    """
    if m < 2:
        raise ValueError("orders below 2 are the input cocycles")
    if d.max_degree >= m:
        raise ValueError(f"series already has terms of degree >= {m}")
    rho = d.rho0
    rhs = mc_rhs(d, m)
    if check_cocycle:
        for mono, c in rhs:
            if not delta(2, rho, c).is_zero():
                raise InconsistentRHS(
                    f"order {m} right-hand side at {format_monomial(mono)} is not a 2-cocycle")
    new_terms = dict(d.terms)
    solved = []
    for mono, c in rhs:
        pre = coboundary_preimage(c, rho)
        if pre is None:
            log.info("obstruction at order %d, monomial %s", m, format_monomial(mono))
            return ObstructionReport(m, mono, _quotient_coords(c, rho), c)
        if not pre.is_zero():
            new_terms[mono] = pre
            solved.append(mono)
    record = OrderRecord(m, tuple(k for k, _ in rhs), check_cocycle, tuple(solved))
    return DeformationSeries(rho, d.r, new_terms, d.orders + (record,))


def integrate(rho0: LinearEmbedding, cocycles: Sequence[Cochain], max_order: int = 10
              ) -> DeformationSeries | ObstructionReport:
    """Integrate the given 1-cocycles (one parameter each) to a polynomial deformation.

    Stops once the order m exceeds twice the largest nonzero degree D: every
    later right-hand side is then a sum of cups of vanishing terms.
    Raises :class:`GuardExceeded` if an order above ``max_order`` would
    need a nonzero right-hand side.
    """
    r = len(cocycles)
    for i, c in enumerate(cocycles):
        if not delta(1, rho0, c).is_zero():
            raise ValueError(f"input {i + 1} ({c.render()}) is not a 1-cocycle")
    first = {tuple(int(j == i) for j in range(r)): c for i, c in enumerate(cocycles)}
    d = DeformationSeries(rho0, r, first)
    m = 2
    while m <= 2 * d.max_degree:
        if m > max_order:
            if not mc_rhs(d, m).is_zero():
                raise GuardExceeded(m, max_order)
            m += 1
            continue
        step = extend_order(d, m)
        if isinstance(step, ObstructionReport):
            return step
        d = step
        log.debug("order %d: %d new terms", m, len(d.orders[-1].new_terms))
        m += 1
    return d


# ---------------------------------------------------------------------------
# gauge transformations


def _g_vector(x, rho0: LinearEmbedding) -> tuple[Fraction, ...]:
    if isinstance(x, GlElement):
        return x.coords()
    v = tuple(as_rational(a) for a in x)
    if len(v) != rho0.target.dim:
        raise ValueError("gauge generator has wrong length")
    return v


def gauge(d: DeformationSeries, gens: Sequence[tuple[Sequence[int], object]],
          working_degree: int) -> DeformationSeries:
    """Conjugate by exp(ad B(t)), B(t) = sum t^alpha A_alpha, truncated at ``working_degree``.

    ``gens`` pairs a monomial (degree >= 1) with an element of g, given as
    a :class:`GlElement` or a coordinate vector.
    """
    rho0 = d.rho0
    h, g = rho0.source, rho0.target
    b_terms = []
    for mono, a in gens:
        mono = tuple(mono)
        if len(mono) != d.r or sum(mono) < 1:
            raise ValueError(f"gauge monomial {mono} must have degree >= 1")
        b_terms.append((mono, _g_vector(a, rho0)))
    if not b_terms:
        return d.truncated(working_degree)

    zero = d.r * (0,)
    out_values: dict = {}
    for i in range(h.dim):
        # rho(t)(x_i) as {monomial: g-vector}
        series = {zero: rho0.images[i]}
        for mono, c in d.terms.items():
            if sum(mono) <= working_degree:
                series[mono] = c.value(i)
        total = dict(series)
        power = series
        for k in range(1, working_degree + 1):
            nxt: dict = {}
            for (mb, a), (mv, v) in itertools.product(b_terms, power.items()):
                gamma = tuple(x + y for x, y in zip(mb, mv))
                if sum(gamma) > working_degree:
                    continue
                w = g.bracket(a, v)
                acc = nxt.get(gamma, (Fraction(0),) * g.dim)
                nxt[gamma] = tuple(s + t for s, t in zip(acc, w))
            power = nxt
            if not power:
                break
            inv = Fraction(1, factorial(k))
            for gamma, v in power.items():
                acc = total.get(gamma, (Fraction(0),) * g.dim)
                total[gamma] = tuple(s + inv * t for s, t in zip(acc, v))
        out_values[i] = total

    monos = {m for vals in out_values.values() for m in vals if sum(m) >= 1}
    terms = {}
    for mono in monos:
        vals = [out_values[i].get(mono, (Fraction(0),) * g.dim) for i in range(h.dim)]
        terms[mono] = Cochain.from_values(h, g, vals)
    return DeformationSeries(rho0, d.r, terms)


# ---------------------------------------------------------------------------


def order_difference_class(d1: DeformationSeries, d2: DeformationSeries, m: int,
                           report: CohomologyReport) -> dict[Monomial, tuple[Fraction, ...]]:
    """H^1 class of rho1^gamma - rho2^gamma for every degree-m monomial.

    Raises :class:`NotACocycle` if a difference is not a 1-cocycle, i.e.
    the two series cannot both solve the order-m equation.
    """
    if d1.r != d2.r:
        raise ValueError("series have different parameter counts")
    monos = sorted(set(d1.homogeneous(m)) | set(d2.homogeneous(m)), key=monomial_key)
    out = {}
    for mono in monos:
        diff = d1.term(mono) - d2.term(mono)
        image = delta(1, d1.rho0, diff)
        if not image.is_zero():
            raise NotACocycle(mono, diff, image)
        out[mono] = report.class_coords(diff)
    return out


# ---------------------------------------------------------------------------
# evaluation


def specialize(d: DeformationSeries, values: Sequence) -> LinearEmbedding:
    """rho(t) at a rational parameter point, as a plain linear map."""
    if len(values) != d.r:
        raise ValueError(f"need {d.r} parameter values")
    vals = [as_rational(v) for v in values]
    rho0 = d.rho0
    images = [list(v) for v in rho0.images]
    for mono, c in d.terms.items():
        w = Fraction(1)
        for v, e in zip(vals, mono):
            w *= v**e
        if not w:
            continue
        for i in range(rho0.source.dim):
            for k, x in enumerate(c.value(i)):
                if x:
                    images[i][k] += w * x
    return LinearEmbedding(rho0.source, rho0.target, tuple(tuple(v) for v in images))


def generic_image(d: DeformationSeries, element: Sequence) -> list[ParamPoly]:
    """rho(t)(element) as g-coordinates that are polynomials in t.

    Entries of ``element`` may be rationals or :class:`ParamPoly` in
    ``N >= r`` variables; the first r variables are the parameters t.
    """
    polys = [e for e in element if isinstance(e, ParamPoly)]
    nv = polys[0].nvars if polys else d.r
    if nv < d.r:
        raise ValueError("element polynomials need at least r variables")
    coef = [e if isinstance(e, ParamPoly) else ParamPoly.const(e, nv) for e in element]
    rho0 = d.rho0
    out = [ParamPoly.zero(nv) for _ in range(rho0.target.dim)]
    pieces = [((0,) * d.r, None)] + list(d.terms.items())
    for mono, c in pieces:
        tmono = ParamPoly.monomial(tuple(mono) + (0,) * (nv - d.r))
        for i in range(rho0.source.dim):
            if coef[i].is_zero():
                continue
            img = rho0.images[i] if c is None else c.value(i)
            for k, x in enumerate(img):
                if x:
                    out[k] = out[k] + coef[i] * tmono * x
    return out


def apply(d: DeformationSeries, element: Sequence, params: Sequence | None = None):
    """Matrix of rho(t)(element) for a gl(n)-valued deformation.

    With ``params=None`` entries are :class:`ParamPoly`; otherwise the
    parameters are substituted and a :class:`GlElement` is returned.
    """
    target = d.rho0.target
    if target.matrices is None:
        raise ValueError("target algebra has no matrix realization")
    n = target.matrices[0].n
    if params is not None:
        if any(isinstance(e, ParamPoly) for e in element):
            raise ValueError("substitute parameters only for rational elements")
        return target.to_matrix(specialize(d, params)(element))
    coords = generic_image(d, element)
    nv = coords[0].nvars if coords else d.r
    grid = [[ParamPoly.zero(nv) for _ in range(n)] for _ in range(n)]
    for k, p in enumerate(coords):
        if p.is_zero():
            continue
        mat = target.matrices[k]
        for i in range(n):
            for j in range(n):
                if mat.entries[i][j]:
                    grid[i][j] = grid[i][j] + p * mat.entries[i][j]
    return grid
