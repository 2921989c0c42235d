"""Acceptance criteria for the built-in h1 -> gl(3) instance.

Each criterion is checked exactly (rational arithmetic, no tolerance).
Sub-checks are collected per criterion; the pytest terminal summary and
``python3 tests/test_acceptance.py`` print one PASS/FAIL line each.
"""
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from liedeform.cohomology import Cochain, delta  # noqa: E402
from liedeform.deformation import (  # noqa: E402
    ObstructionReport,
    cup,
    gauge,
    integrate,
    mc_residual,
    mc_rhs,
    specialize,
)
from liedeform.exact import QMatrix, SubspaceBasis, image_basis, kernel_basis, rref  # noqa: E402
from liedeform.lie import GlElement  # noqa: E402
from liedeform.reference import (  # noqa: E402
    DELTA0_IMAGES,
    DELTA0_INDEPENDENT,
    DELTA1_IMAGES,
    DELTA1_RELATIONS,
    DELTA1_ZERO,
    factor2_variant,
    load_reference,
    generic_matrix_comparison,
)

from conftest import H1_MATRICES, as_matrix, h1_coords, mat_bracket  # noqa: E402

SEED = 20240601

# criterion number -> list of (sub-check name, ok, detail)
RESULTS: dict[int, list] = {}
TIMINGS: dict[int, float] = {}


def _record(n, name, ok, detail=""):
    RESULTS.setdefault(n, []).append((name, bool(ok), detail))
    return bool(ok)


def criterion_line(n):
    subs = RESULTS.get(n, [])
    ok = bool(subs) and all(s[1] for s in subs)
    failed = [f"{s[0]}{' (' + s[2] + ')' if s[2] else ''}" for s in subs if not s[1]]
    tail = f"  failed: {'; '.join(failed)}" if failed else f"  ({len(subs)} checks)"
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}{tail}"


_ref = None
_series = None


def ref():
    global _ref
    if _ref is None:
        _ref = load_reference()
    return _ref


def series():
    global _series
    if _series is None:
        r = ref()
        _series = integrate(r.rho, r.generators(), max_order=10)
    return _series


def b1(key):
    return ref().basis1(key)


# ---------------------------------------------------------------------------


def check_1():
    z, b, h = ref().report.dims
    _record(1, "dim Z1 = 11", z == 11, f"got {z}")
    _record(1, "dim B1 = 7", b == 7, f"got {b}")
    _record(1, "dim H1 = 4", h == 4, f"got {h}")


def check_2():
    r = ref()
    lem = r.z1_listed()
    _record(2, "e1..e11 are cocycles", all(delta(1, r.rho, e).is_zero() for e in lem))
    span = SubspaceBasis.span([e.coords for e in lem], 27)
    z = r.report.cocycle_basis
    _record(2, "span(e) in Z1", all(z.contains(e.coords) for e in lem))
    _record(2, "Z1 in span(e)", all(span.contains(v) for v in z.vectors))
    _record(2, "e1..e11 independent", span.dim == 11, f"rank {span.dim}")


def check_3():
    r = ref()
    keys = list(DELTA1_IMAGES)
    first14 = keys[:14]
    for group, ks in (("first 14 images", first14), ("remaining images", keys[14:])):
        bad = [k for k in ks if delta(1, r.rho, b1(k)) != r.parse(DELTA1_IMAGES[k], degree=2)]
        _record(3, group, not bad, f"mismatch {bad}")
    ind = SubspaceBasis.span([delta(1, r.rho, b1(k)).coords for k in first14], 27)
    _record(3, "first 14 independent", ind.dim == 14, f"rank {ind.dim}")
    _record(3, "four zero images", all(delta(1, r.rho, b1(k)).is_zero() for k in DELTA1_ZERO))
    h, g = r.rho.source, r.rho.target
    for lhs, combo in DELTA1_RELATIONS.items():
        total = Cochain.zero(2, h, g)
        for k, c in combo.items():
            total = total + delta(1, r.rho, b1(k)).scale(c)
        _record(3, f"relation d{lhs}", delta(1, r.rho, b1(lhs)) == total)


def check_4():
    r = ref()
    d0 = {k: delta(0, r.rho, r.parse(f"e{k}", degree=0)) for k in DELTA0_IMAGES}
    listed = SubspaceBasis.span([d0[k].coords for k in DELTA0_INDEPENDENT], 27)
    _record(4, "7 listed coboundaries independent", listed.dim == 7, f"rank {listed.dim}")
    _record(4, "d31 = 0", d0["31"].is_zero())
    # asserted exactly as printed
    holds = d0["33"] == d0["22"] - d0["11"]
    detail = ""
    if not holds:
        alt = d0["33"] == -d0["11"] - d0["22"]
        detail = (f"d33 = {d0['33'].render()}, -d11 + d22 = {(d0['22'] - d0['11']).render()}"
                  + ("; d33 = -d11 - d22 holds instead" if alt else ""))
    _record(4, "d33 = -d11 + d22", holds, detail)
    lem = r.z1_listed()
    quot = SubspaceBasis.span(list(r.report.coboundary_basis.vectors)
                              + [e.coords for e in lem[:4]], 27)
    _record(4, "e1..e4 independent modulo B1", quot.dim == 11, f"rank {quot.dim}")


def check_5():
    r = ref()
    rep, gens, lem = r.report, r.generators(), r.z1_listed()
    _record(5, "generators are cocycles", all(rep.is_cocycle(c) for c in gens))
    _record(5, "no generator is a coboundary", not any(rep.is_coboundary(c) for c in gens))
    classes = SubspaceBasis.span([rep.class_coords(c) for c in gens], 4)
    _record(5, "classes form a basis of H1", classes.dim == 4 == rep.dims[2])
    _record(5, "rho3 = 2 e4", gens[2].coords == lem[3].scale(2).coords)
    _record(5, "rho4 = e3", gens[3].coords == lem[2].coords)


def check_6():
    r = ref()
    gens = r.generators()
    table = {(0, 1): "X*∧Z*⊗e31", (0, 2): "2 X*∧Z*⊗e32 + X*∧Y*⊗e31", (2, 2): "2 Z*∧Y*⊗e21"}
    for i in range(4):
        for j in range(i, 4):
            want = r.parse(table.get((i, j), "0"), degree=2)
            got = cup(gens[i], gens[j])
            _record(6, f"cup(rho{i + 1},rho{j + 1})", got == want, f"got {got.render()}")


def check_7():
    d = series()
    if isinstance(d, ObstructionReport):
        _record(7, "no obstruction", False, str(d.to_json()))
        return
    support = {m for m in d.terms}
    want = {(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, 1, 0, 0), (1, 0, 1, 0), (0, 0, 2, 0), (1, 0, 2, 0)}
    _record(7, "no obstruction at any order", True)
    _record(7, "degrees 1..3", {sum(m) for m in support} == {1, 2, 3})
    _record(7, "monomial support", support == want, f"got {sorted(support)}")
    _record(7, "terminated past 2*D", d.orders[-1].order == 2 * d.max_degree,
            f"last order {d.orders[-1].order}")


def check_8():
    d = series()
    _record(8, "residual is the zero polynomial", mc_residual(d).is_zero())
    # independent oracle: matrix commutators of rho(t) at random points
    rng = random.Random(SEED)
    bad = 0
    for _ in range(20):
        t = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4)]
        rt = specialize(d, t)
        mats = [as_matrix(v) for v in rt.images]
        for i in range(3):
            for j in range(i + 1, 3):
                br = h1_coords(mat_bracket(H1_MATRICES[i], H1_MATRICES[j]))
                lhs = sum((c * m for c, m in zip(br, mats)), np.zeros((3, 3), dtype=object))
                bad += not (lhs == mat_bracket(mats[i], mats[j])).all()
    _record(8, "20 random points are homomorphisms", bad == 0, f"{bad} failing brackets")


def check_9():
    r = ref()
    cmp = generic_matrix_comparison(series())
    entries = cmp["agree"] + cmp["differ"]
    _record(9, "all 9 entries classified",
            sorted(e["entry"] for e in entries) == [f"({i},{j})" for i in (1, 2, 3) for j in (1, 2, 3)])
    _record(9, "agree entries coincide", all(e["printed"] == e["computed"] for e in cmp["agree"]))
    _record(9, "differ entries differ", all(e["printed"] != e["computed"] for e in cmp["differ"]))
    f2 = factor2_variant(r)
    _record(9, "factor-2 variant resolved",
            f2["verdict"] in ("unit-factor", "doubled-factor") and not f2["both_solutions"],
            str(f2))
    _record(9, "resolution agrees with integrator",
            series().same_terms(r.unit_series() if f2["verdict"] == "unit-factor"
                                else r.doubled_series()))
    print(f"factor-2 variant: {f2['verdict']}; matrix entries differing: "
          f"{[(e['entry'], e['printed'], e['computed']) for e in cmp['differ']]}")


def _random_cochain(rng, rho, degree):
    from math import comb
    n = comb(rho.source.dim, degree) * rho.target.dim
    return Cochain(degree, rho.source, rho.target,
                   [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if rng.random() < 0.5 else 0
                    for _ in range(n)])


def _random_matrix(rng):
    rows, cols = rng.randint(1, 30), rng.randint(1, 30)
    if rng.random() < 0.5:
        return QMatrix(rows, cols, tuple(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                                               for _ in range(cols)) for _ in range(rows)))
    # product of thin factors: rank at most k
    k = rng.randint(0, min(rows, cols))
    a = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)] for _ in range(rows)]
    b = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)] for _ in range(k)]
    return QMatrix(rows, cols, tuple(tuple(sum((a[i][s] * b[s][j] for s in range(k)), Fraction(0))
                                           for j in range(cols)) for i in range(rows)))


def check_10():
    r = ref()
    rho = r.rho
    rng = random.Random(SEED)
    bad = sum(not delta(p + 1, rho, delta(p, rho, _random_cochain(rng, rho, p))).is_zero()
              for p in (0, 1) for _ in range(100))
    _record(10, "delta delta = 0 on 2 x 100 random cochains", bad == 0, f"{bad} failures")
    bad = 0
    for _ in range(100):
        a, b = _random_cochain(rng, rho, 1), _random_cochain(rng, rho, 1)
        bad += cup(a, b) != cup(b, a)
    _record(10, "cup symmetry on 100 random pairs", bad == 0, f"{bad} failures")
    d = series()
    orders = [o.order for o in d.orders]
    ok = all(delta(2, rho, c).is_zero()
             for m in orders for _, c in mc_rhs(d.truncated(m - 1), m))
    _record(10, "delta2(rhs) = 0 at every order", ok and all(o.rhs_is_cocycle for o in d.orders),
            f"orders {orders}")
    bad = 0
    work = 3
    for _ in range(10):
        mono = [0, 0, 0, 0]
        for _ in range(rng.randint(1, 2)):
            mono[rng.randrange(4)] += 1
        a = GlElement.from_coords([rng.randint(-2, 2) for _ in range(9)], 3)
        g = gauge(d, [(tuple(mono), a)], work)
        bad += not mc_residual(g).truncated(work).is_zero()
    _record(10, "gauge keeps residual zero (10 generators)", bad == 0, f"{bad} failures")
    bad = 0
    for _ in range(50):
        m = _random_matrix(rng)
        rank, _, _ = rref(m)
        ker = kernel_basis(m)
        img = image_basis(m)
        killed = all(not any(m.apply(v)) for v in ker.vectors)
        bad += not (rank + ker.dim == m.cols and img.dim == rank and killed)
    _record(10, "rank-nullity on 50 random matrices up to 30x30", bad == 0, f"{bad} failures")


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 11)}


def run_criterion(n):
    RESULTS.pop(n, None)
    start = time.perf_counter()
    CHECKS[n]()
    TIMINGS[n] = time.perf_counter() - start
    return RESULTS[n]


@pytest.mark.parametrize("n", list(CHECKS))
def test_criterion(n):
    subs = run_criterion(n)
    print(criterion_line(n))
    failed = [s for s in subs if not s[1]]
    assert not failed, criterion_line(n)


def test_criterion_4_other_parts():
    """The parts of criterion 4 that do not depend on the printed d33 relation."""
    if 4 not in RESULTS:
        run_criterion(4)
    others = [s for s in RESULTS[4] if s[0] != "d33 = -d11 + d22"]
    assert len(others) == 3 and all(s[1] for s in others)


def test_total_time_budget():
    if len(TIMINGS) < len(CHECKS):
        pytest.skip("run the full acceptance module to measure the budget")
    assert sum(TIMINGS.values()) < 5.0, TIMINGS


def main():
    for n in CHECKS:
        run_criterion(n)
        print(criterion_line(n))
    print(f"total time: {sum(TIMINGS.values()):.2f}s")
    return 0 if all(all(s[1] for s in RESULTS[n]) for n in CHECKS) else 1


if __name__ == "__main__":
    sys.exit(main())
