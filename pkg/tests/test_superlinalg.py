from fractions import Fraction

import gmpy2
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superquot.superlinalg import (
    QQ,
    Echelon,
    Field,
    ModP,
    SuperLinearMap,
    SuperVectorSpace,
    kernel_image_coker,
    nullspace,
    rank,
    solve_membership,
    tensor_with_koszul,
)

small = st.integers(-3, 3)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def as_vectors(rows):
    return [{j: QQ(x) for j, x in enumerate(row) if x} for row in rows]


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(as_vectors(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_relations(rows):
    vecs = as_vectors(rows)
    rels = nullspace(vecs)
    assert len(rels) == len(rows) - sympy.Matrix(rows).rank()
    for rel in rels:
        total = {}
        for i, c in rel.items():
            for j, x in vecs[i].items():
                total[j] = total.get(j, 0) + c * x
        assert not any(total.values())


@settings(max_examples=40, deadline=None)
@given(matrices, st.lists(small, min_size=5, max_size=5))
def test_solve_membership(rows, coeffs):
    vecs = as_vectors(rows)
    target = {}
    for c, v in zip(coeffs, vecs):
        for j, x in v.items():
            target[j] = target.get(j, 0) + c * x
    target = {j: x for j, x in target.items() if x}
    sol = solve_membership(target, vecs)
    assert sol is not None
    back = {}
    for c, v in zip(sol, vecs):
        for j, x in v.items():
            back[j] = back.get(j, 0) + c * x
    assert {j: x for j, x in back.items() if x} == target


def test_echelon_outside_span():
    ech = Echelon()
    ech.add({0: QQ(1), 1: QQ(1)})
    assert ech.contains({0: QQ(2), 1: QQ(2)})
    assert not ech.contains({0: QQ(1)})
    assert ech.add({0: QQ(3), 1: QQ(3)}, tag="x") == {"x": 1}
    assert ech.rank == 1


def test_modp_arithmetic():
    F = Field(7)
    a, b = F(3), F(5)
    assert a * b == F(1)
    assert a / b == F(2)
    assert F(Fraction(1, 3)) * 3 == F.one
    assert -a == F(4)
    assert a ** 6 == F.one
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        Field(9)


def test_qq_is_exact():
    x = QQ("1/3")
    assert x * 3 == 1
    assert isinstance(x, type(gmpy2.mpq()))
    with pytest.raises(TypeError):
        QQ(ModP(1, 5))


def test_rank_mod_p_differs():
    rows = [[1, 2], [3, 1]]  # det = -5
    F = Field(5)
    vecs = [{j: F(x) for j, x in enumerate(r)} for r in rows]
    assert rank(vecs) == 1
    assert rank(as_vectors(rows)) == 2


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_braiding_is_involution(ve, vo, we, wo):
    V = SuperVectorSpace.from_dims(ve, vo, "v")
    W = SuperVectorSpace.from_dims(we, wo, "w")
    _, _, c = tensor_with_koszul(V, W)
    _, _, c2 = tensor_with_koszul(W, V)
    if len(V) and len(W):
        assert (c2 @ c).is_identity()


def test_braiding_sign_on_odd_pair():
    V = SuperVectorSpace(("x",), (1,))
    _, _, c = tensor_with_koszul(V, V)
    assert c.matrix == {(0, 0): -1}


def test_homogeneity_enforced():
    V = SuperVectorSpace(("e", "f"), (0, 1))
    with pytest.raises(ValueError):
        SuperLinearMap(V, V, {(1, 0): 1}, 0)
    odd = SuperLinearMap(V, V, {(1, 0): 1, (0, 1): 1}, 1)
    assert (odd @ odd).is_identity()


def test_kernel_image_coker_dims():
    V = SuperVectorSpace.from_dims(2, 1)
    W = SuperVectorSpace.from_dims(1, 2)
    f = SuperLinearMap(V, W, {(0, 0): 1, (0, 1): 2, (1, 2): 1}, 0)
    ker, img, cok = kernel_image_coker(f)
    assert (len(ker), len(img), len(cok)) == (1, 2, 1)
