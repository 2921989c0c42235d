import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liedeform.exact import solve_particular, QMatrix
from liedeform.instances import (
    InputError,
    algebra_from_json,
    algebra_to_json,
    homomorphism_from_json,
    load_instance,
)
from liedeform.lie import (
    GlElement,
    JacobiError,
    LieAlgebra,
    LinearEmbedding,
    NotClosedError,
    algebra_from_matrices,
    check_homomorphism,
    commutator,
    elementary,
    gl,
    zero_map,
)

from conftest import small_rationals

e = lambda i, j: elementary(i, j, 3)  # noqa: E731


def unit_np(i, j):
    m = np.zeros((3, 3), dtype=int)
    m[i - 1, j - 1] = 1
    return m


def test_commutator_x_z():
    # oracle: integer matrix product e_ij e_kl = d_jk e_il
    want = unit_np(2, 1) @ unit_np(3, 2) - unit_np(3, 2) @ unit_np(2, 1)
    got = commutator(e(2, 1), e(3, 2))
    assert np.array_equal(np.array(got.entries, dtype=int), want)
    assert got == e(3, 1).scale(-1)


def test_commutator_x_y_vanishes():
    assert commutator(e(2, 1), e(3, 1)).is_zero()


def test_commutator_self():
    a = GlElement.from_rows([[1, 2, 0], [Fraction(1, 3), 0, 5], [0, -1, 4]])
    assert commutator(a, a).is_zero()


def test_commutator_size_mismatch():
    with pytest.raises(ValueError):
        commutator(e(1, 1), elementary(1, 1, 2))


def test_heisenberg_from_matrices():
    h, inc = algebra_from_matrices([e(2, 1), e(3, 1), e(3, 2)], ["X", "Y", "Z"])
    assert h.dim == 3
    # [X, Z] = -Y is the only nonzero bracket
    assert h.structure == {(0, 2): ((1, Fraction(-1)),)}
    assert h.basis_bracket(2, 0) == (0, 1, 0)
    assert check_homomorphism(inc)[0]


def test_heisenberg_constants_from_scratch(rho):
    h = rho.source
    mats = [unit_np(2, 1), unit_np(3, 1), unit_np(3, 2)]
    flat = QMatrix.from_columns([m.flatten().tolist() for m in mats], 9)
    for i, j in itertools.product(range(3), repeat=2):
        br = (mats[i] @ mats[j] - mats[j] @ mats[i]).flatten().tolist()
        assert solve_particular(flat, br) == h.basis_bracket(i, j)


def test_one_dim_abelian():
    a, inc = algebra_from_matrices([e(1, 1)])
    assert a.dim == 1 and a.is_abelian()


def test_not_closed():
    with pytest.raises(NotClosedError) as info:
        algebra_from_matrices([e(1, 2), e(2, 1)], ["A", "B"])
    assert info.value.pair == (0, 1)
    assert "[A, B]" in str(info.value)


def test_dependent_generators():
    with pytest.raises(ValueError):
        algebra_from_matrices([e(1, 2), e(1, 2).scale(2)])


def test_zero_map_is_homomorphism(rho):
    ok, bad = check_homomorphism(zero_map(rho.source, rho.target))
    assert ok and not bad


def test_bad_map_reports_violation(rho):
    h, g = rho.source, rho.target
    f = LinearEmbedding(h, g, (e(1, 2).coords(), (0,) * 9, e(2, 1).coords()))
    ok, bad = check_homomorphism(f)
    assert not ok
    assert [(v.i, v.j) for v in bad] == [(0, 2)]
    # rho([X,Z]) = rho(-Y) = 0 but [e12, e21] = e11 - e22
    assert bad[0].lhs == (0,) * 9
    assert bad[0].rhs == (e(1, 1) - e(2, 2)).coords()


def test_gl_brackets_match_matrices():
    g = gl(3)
    for a, b in itertools.product(range(9), repeat=2):
        want = commutator(g.matrices[a], g.matrices[b]).coords()
        assert g.basis_bracket(a, b) == want


def test_gl_jacobi():
    assert gl(3).jacobi_violations() == []
    assert gl(2).labels == ("e11", "e12", "e21", "e22")


def test_jacobi_failure_detected():
    # [a,b]=c, [b,c]=a, [c,a]=a breaks Jacobi
    with pytest.raises(JacobiError):
        LieAlgebra.from_constants(["a", "b", "c"], {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0],
                                                    (2, 0): [1, 0, 0]})


def test_antisymmetry_consistency():
    alg = LieAlgebra.from_constants(["x", "y"], {(1, 0): [0, -1]})
    assert alg.basis_bracket(0, 1) == (0, 1)
    assert alg.constant(1, 0, 1) == -1


matrices3 = st.lists(small_rationals, min_size=9, max_size=9).map(lambda c: GlElement.from_coords(c, 3))


@settings(max_examples=30)
@given(matrices3, matrices3, matrices3)
def test_commutator_jacobi(a, b, c):
    total = (commutator(commutator(a, b), c) + commutator(commutator(b, c), a)
             + commutator(commutator(c, a), b))
    assert total.is_zero()


@settings(max_examples=30)
@given(matrices3, matrices3)
def test_structure_bracket_matches_matrix(a, b):
    g = gl(3)
    assert g.bracket(a.coords(), b.coords()) == commutator(a, b).coords()


# ---------------------------------------------------------------------------
# JSON input


def test_structure_constant_json_roundtrip(rho):
    obj = algebra_to_json(rho.source)
    assert obj == {"dim": 3, "labels": ["X", "Y", "Z"],
                   "brackets": [{"i": 0, "j": 2, "coeffs": {"Y": "-1"}}]}
    alg, inc = algebra_from_json(json.loads(json.dumps(obj)))
    assert inc is None
    assert alg.structure == rho.source.structure


def test_bracket_json_with_labels_and_fractions():
    alg, _ = algebra_from_json({"dim": 2, "labels": ["x", "y"],
                                "brackets": [{"i": "x", "j": "y", "coeffs": {"y": "1/2"}}]})
    assert alg.basis_bracket(0, 1) == (0, Fraction(1, 2))


def test_matrix_generator_json():
    alg, inc = algebra_from_json({"n": 2, "generators": [[[1, 0], [0, -1]], [[0, 1], [0, 0]],
                                                         [[0, 0], [1, 0]]]})
    assert alg.dim == 3 and inc.target.dim == 4
    assert check_homomorphism(inc)[0]


def test_homomorphism_json_with_images():
    inst = homomorphism_from_json({
        "source": {"dim": 1, "labels": ["x"]},
        "target": {"gl": 1},
        "images": [["0"]],
    })
    assert inst.rho.images == ((0,),)
    assert inst.cocycles is None


def test_builtin_instance(rho):
    inst = load_instance("builtin:heisenberg-gl3")
    assert inst.rho.source.labels == ("X", "Y", "Z")
    assert inst.rho.images == rho.images
    assert len(inst.cocycles) == 4


@pytest.mark.parametrize("bad", [
    {"source": {"dim": 1}},
    {"source": {"n": 3, "generators": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]],
                                       [[0, 0, 0], [1, 0, 0], [0, 0, 0]]]},
     "target": {"gl": 3}},
    {"source": {"dim": 1}, "target": {"gl": 1}},
    {"source": {"dim": 1}, "target": {"gl": 1}, "images": [[0.5]]},
])
def test_malformed_homomorphisms(bad):
    with pytest.raises(ValueError):
        homomorphism_from_json(bad)


def test_unknown_builtin():
    with pytest.raises(InputError):
        load_instance("builtin:nope")


def test_bad_json_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_instance(p)
