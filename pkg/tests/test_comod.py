import pytest

from superquot.comod import (
    SuperComodule,
    colinear_retraction,
    cotensor_product,
    finite_subcoalgebra,
    regular_comodule_algebra,
    sigma_retraction,
    subcomodule_coaction,
)
from superquot.quotient import quotient_comodule_algebra


@pytest.fixture
def gm(corpus):
    return corpus.hopf_algebra("Gm")


def _weights(D, right=True):
    t, ti = D.P.gen("t"), D.P.gen("t^-1")
    return SuperComodule(["v+", "v-"], [0, 0], D, {0: {0: t}, 1: {1: ti}}, "right" if right else "left")


def test_weight_comodule_laws(gm):
    assert _weights(gm).check().ok
    assert SuperComodule(["v"], [0], gm, {0: {0: gm.P.parse("t^2")}}).check().ok
    # counit 1 but not grouplike
    broken = SuperComodule(["v"], [0], gm, {0: {0: gm.P.parse("t + 1 - t^-1")}})
    assert broken.check().witness["law"] == "coassociativity"
    bad_counit = SuperComodule(["v"], [0], gm, {0: {0: gm.P.parse("2*t")}})
    assert bad_counit.check().witness["law"] == "counit"


def test_cotensor_picks_matching_weights(gm):
    M = _weights(gm)
    L = SuperComodule(["w"], [0], gm, {0: {0: gm.P.gen("t")}}, "left")
    basis = cotensor_product(M, L)
    assert len(basis) == 1
    assert set(basis[0]) == {(0, 0)}


def test_parity_of_coefficients_checked(corpus):
    D = corpus.hopf_algebra("GmSplit")
    with pytest.raises(ValueError):
        SuperComodule(["v"], [0], D, {0: {0: D.P.gen("y")}})


def test_finite_subcoalgebra_of_matrix_entries(corpus):
    D = corpus.hopf_algebra("GL2")
    hull = finite_subcoalgebra(D, [D.P.gen("a")])
    assert hull.dim == 4
    assert hull.contains(D.P.parse("b + c"))
    assert not hull.contains(D.P.one)
    dm = hull.delta_matrix()
    assert sum(len(r) for r in dm.values()) == 8


def oracle_mu2_coinvariants(n):
    # t^k is invariant under mu_2 exactly when k is even
    return sum(1 for k in range(-n, n + 1) if k % 2 == 0)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_mu2_coinvariant_layers(corpus, n):
    CA = quotient_comodule_algebra(corpus.pair("Gm", "Mu2"))
    assert len(CA.coinvariant_layer(n)) == oracle_mu2_coinvariants(n)


def test_comodule_algebra_axioms(corpus):
    for parent, name in [("Gm", "Mu2"), ("GL11", "Borel"), ("GL2", "GL2Borel")]:
        assert quotient_comodule_algebra(corpus.pair(parent, name)).check(2).ok, name


def test_split_subcomodule_has_retraction(gm):
    V = _weights(gm)
    assert subcomodule_coaction(V, [{0: 1}]) is not None
    assert subcomodule_coaction(V, [{0: 1, 1: 1}]) is None
    s, v = colinear_retraction(V, [{0: 1}])
    assert v.status == "Proven"
    assert s == {0: {0: 1}, 1: {}}


def test_nonsplit_extension_has_no_retraction(corpus):
    D = corpus.pair("Ga11", "Ga11Even").D
    one, x = D.P.one, D.P.gen("x")
    V = SuperComodule(["v0", "v1"], [0, 0], D, {0: {0: one}, 1: {1: one, 0: x}})
    assert V.check().ok
    s, v = colinear_retraction(V, [{0: 1}])
    assert s is None and v.status == "Disproven"


def test_sigma_on_regular_comodule(gm):
    CA = regular_comodule_algebra(gm)
    sigma, v = sigma_retraction(CA, 3)
    assert v.ok
    for m in CA.A.layer_monomials(3):
        x = CA.A.monomial(m)
        assert sigma(CA.rho(x)) == x
