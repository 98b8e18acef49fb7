import pytest
from hypothesis import given, settings, strategies as st

from superquot.hopf import identity_map
from superquot.quotient import (
    QuotientError,
    build_quotient,
    check_affinity,
    check_splitting,
    compute_B1,
    compute_z,
    is_normal,
    kappa_iso,
    prepare_pair,
    quotient_comodule_algebra,
    theta_retraction,
)

coeffs = st.lists(st.integers(-4, 4), min_size=6, max_size=6)


@pytest.mark.parametrize("kill", ["a - 2", "b - g", "a - d"])
def test_non_hopf_ideal_rejected(corpus, kill):
    H = corpus.hopf_algebra("GL11")
    with pytest.raises(QuotientError) as exc:
        prepare_pair(H, [H.P.parse(kill)])
    assert exc.value.witness["generator"] == kill


def test_odd_kernel_dimensions(corpus):
    dims = {name: compute_z(corpus.pair(sb.parent, name)).dim for name, sb in corpus.subs.items()}
    assert dims == {"Borel": 1, "GL11all": 0, "GL11e": 2, "GL2Borel": 0, "Ga11Even": 1,
                    "Mu2": 0, "Mu2e": 1, "Torus": 2}
    assert compute_z(corpus.pair("GL11", "Borel")).names == ["g"]


def test_normality(corpus):
    assert is_normal(corpus.pair("GL11", "GL11e")) is None
    assert is_normal(corpus.pair("Gm", "Mu2")) is None
    assert is_normal(corpus.pair("GL2", "GL2Borel")) is not None


def _element(A, cs):
    monos = A.layer_monomials(2)[:len(cs)]
    out = A.zero
    for c, m in zip(cs, monos):
        out = out + A.monomial(m) * c
    return out


@settings(max_examples=25, deadline=None)
@given(coeffs, coeffs)
def test_kappa_round_trip_random(corpus, c1, c2):
    S = corpus.pair("GL11", "Borel")
    Z = compute_z(S)
    k = kappa_iso(S.C.P, identity_map(S.C.P), Z.W_C)
    v = {i: _element(S.C.P, c) for i, c in enumerate([c1, c2])}
    v = {i: a for i, a in v.items() if a}
    assert k.inverse(k.forward(v)) == v
    assert k.forward(k.inverse(v)) == v


def test_kappa_needs_even_algebra(corpus):
    S = corpus.pair("GL11", "Borel")
    with pytest.raises(ValueError):
        kappa_iso(S.H.P, identity_map(S.H.P), compute_z(S).W_C)


@pytest.mark.parametrize("parent,name,route", [("GL11", "Borel", "costable"), ("GL11", "Torus", "identity"),
                                               ("GmSplit", "Mu2e", "identity")])
def test_theta_routes(corpus, parent, name, route):
    S = corpus.pair(parent, name)
    th, v = theta_retraction(S, 3)
    assert th.route == route and v.ok
    th2, v2 = theta_retraction(S, 2, route="sigma")
    assert th2.route == "sigma" and v2.ok


def test_theta_identity_on_z(corpus):
    S = corpus.pair("GL11", "Borel")
    th, _ = theta_retraction(S, 2)
    Z = compute_z(S)
    A = quotient_comodule_algebra(S).A
    for m in A.layer_monomials(2):
        a = A.monomial(m)
        assert th({i: a * c for i, c in Z.basis[0].items()}) == {0: a}


def test_b1_borel(corpus):
    S = corpus.pair("GL11", "Borel")
    B1 = compute_B1(S, compute_z(S), 4)
    assert B1.cotensor_agrees and B1.free and B1.rank == 1


def test_quotient_refuses_non_affine(corpus):
    S = corpus.pair("GL2", "GL2Borel")
    assert check_affinity(S, 3).status == "Disproven"
    with pytest.raises(QuotientError):
        build_quotient(S, 3)
    Q = build_quotient(S, 3, override=True)
    assert Q.verdicts["affinity"] == "Disproven (overridden)"
    assert Q.layer_dims == {0: 1, 1: 1, 2: 1, 3: 1}


def test_quotient_presentation_of_gmsplit(corpus):
    Q = build_quotient(corpus.pair("GmSplit", "Mu2e"), 4)
    P = Q.presentation
    assert [g.name for g in P.even] == ["s1", "s2"]
    assert [g.name for g in P.odd] == ["e1"]
    assert P.parse("s1*s2") == P.one
    assert Q.witnesses["B1_generators"] == ["t(x)y"]


@pytest.mark.parametrize("parent,name,expected", [
    ("GL11", "Borel", {"a": "Proven", "b": "Proven", "c": "Disproven", "split": "Proven"}),
    ("GmSplit", "Mu2e", {"a": "Proven", "b": "Proven", "c": "Proven", "split": "Proven"}),
])
def test_splitting(corpus, parent, name, expected):
    assert {k: v.status for k, v in check_splitting(corpus.pair(parent, name), 3).items()} == expected


def test_affinity_monotone(corpus):
    S = corpus.pair("GmSplit", "Mu2e")
    assert [check_affinity(S, b).status for b in range(1, 7)] == ["Proven"] * 6
