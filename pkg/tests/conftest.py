from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from liedeform.cohomology import Cochain
from liedeform.reference import load_reference


@pytest.fixture(scope="session")
def ref():
    return load_reference()


@pytest.fixture(scope="session")
def rho(ref):
    return ref.rho


@pytest.fixture(scope="session")
def P(ref):
    """Parse cochain notation against the built-in instance."""
    return ref.parse


@pytest.fixture(scope="session")
def gens(ref):
    return ref.generators()


# ---------------------------------------------------------------------------
# matrix oracles: plain numpy object arrays, no structure constants involved


def as_matrix(coords, n=3):
    return np.array([Fraction(x) for x in coords], dtype=object).reshape(n, n)


def mat_bracket(a, b):
    return a.dot(b) - b.dot(a)


H1_MATRICES = [as_matrix([0, 0, 0, 1, 0, 0, 0, 0, 0]),
               as_matrix([0, 0, 0, 0, 0, 0, 1, 0, 0]),
               as_matrix([0, 0, 0, 0, 0, 0, 0, 1, 0])]


def h1_coords(m):
    # h1 basis X=e21, Y=e31, Z=e32 are matrix units: read coordinates off
    return (m[1, 0], m[2, 0], m[2, 1])


def oracle_values(c: Cochain):
    """The three matrices m(X), m(Y), m(Z) of a 1-cochain on h1."""
    return [as_matrix(c.coords[9 * i:9 * (i + 1)]) for i in range(3)]


def oracle_delta1(c: Cochain):
    """delta^1 m(x,y) = m([x,y]) - [rho x, m y] + [rho y, m x], by matrix algebra.

    Returns {(i, j): 3x3 matrix} for i < j.
    """
    vals = oracle_values(c)
    out = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        br = h1_coords(mat_bracket(H1_MATRICES[i], H1_MATRICES[j]))
        m_br = sum((k * v for k, v in zip(br, vals)), np.zeros((3, 3), dtype=object))
        out[(i, j)] = (m_br - mat_bracket(H1_MATRICES[i], vals[j])
                       + mat_bracket(H1_MATRICES[j], vals[i]))
    return out


def oracle_cup(a: Cochain, b: Cochain):
    va, vb = oracle_values(a), oracle_values(b)
    return {(i, j): mat_bracket(va[i], vb[j]) - mat_bracket(va[j], vb[i])
            for i, j in ((0, 1), (0, 2), (1, 2))}


def two_cochain_matrices(c: Cochain):
    return {w: as_matrix(c.coords[9 * k:9 * (k + 1)])
            for k, w in enumerate(((0, 1), (0, 2), (1, 2)))}


def same_matrices(d1, d2):
    return all((d1[k] == d2[k]).all() for k in d1)


# ---------------------------------------------------------------------------
# hypothesis strategies

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def cochains(rho, degree):
    from math import comb

    size = comb(rho.source.dim, degree) * rho.target.dim
    return st.lists(small_rationals, min_size=size, max_size=size).map(
        lambda xs: Cochain(degree, rho.source, rho.target, xs))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.criterion_line(n))
