import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superquot.superlinalg import Field
from superquot.superpoly import (
    AlgebraMap,
    NotInvertible,
    SuperPresentation,
    invert,
    localize_at,
    normal_form,
    tensor,
)

EXT = SuperPresentation(["x"], ["a", "b", "c"], name="ext")


def hilbert_counts_sympy(gens, rels, n):
    """Standard monomials of degree <= n for a grevlex basis (order-free for degree filtrations)."""
    syms = sympy.symbols(gens)
    G = sympy.groebner([sympy.sympify(r, locals=dict(zip(gens, syms))) for r in rels], *syms, order="grevlex")
    leads = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    count = 0
    for exps in itertools.product(range(n + 1), repeat=len(gens)):
        if sum(exps) > n:
            continue
        if not any(all(e >= l for e, l in zip(exps, lead)) for lead in leads):
            count += 1
    return count


@pytest.mark.parametrize("rels", [
    ["x**2 - y", "x*y - 1"],
    ["x*y - z", "y**2 - x*z"],
    ["x**3 - y**2", "x*z"],
    ["x + y + z - 1", "x*y*z"],
])
def test_layers_match_sympy(rels):
    gens = ["x", "y", "z"]
    P = SuperPresentation(gens, [], [r.replace("**", "^") for r in rels])
    for n in range(6):
        assert len(P.layer_monomials(n)) == hilbert_counts_sympy(gens, rels, n), n


def test_membership_matches_sympy():
    P = SuperPresentation(["x", "y"], [], ["x^2 - y", "y^2 - 1"])
    x, y = sympy.symbols("x y")
    G = sympy.groebner([x**2 - y, y**2 - 1], x, y, order="grevlex")
    for f in ["x^4 - 1", "x^3 - x*y", "x^2 - 1", "x*y^3 - x*y", "y - x"]:
        ours = not normal_form(f, P)
        theirs = G.contains(sympy.sympify(f.replace("^", "**")))
        assert ours == theirs, f


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "c", "x"]), min_size=2, max_size=5))
def test_sign_rule(word):
    # product of generators equals sign * sorted product; repeated odd gives zero
    P = EXT
    prod = P.one
    for w in word:
        prod = prod * P.gen(w)
    odd = [w for w in word if w != "x"]
    if len(set(odd)) < len(odd):
        assert not prod
        return
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    sorted_prod = P.one
    for w in sorted(word):
        sorted_prod = sorted_prod * P.gen(w)
    assert prod == sorted_prod * (-1) ** inversions


def test_odd_squares_vanish():
    a, b = EXT.gen("a"), EXT.gen("b")
    assert not a * a
    assert a * b == -(b * a)
    assert not (a + b) * (a + b)


def test_laurent_inverse():
    P = SuperPresentation([("t", 1, True)], ["y"])
    t, ti = P.gen("t"), P.gen("t^-1")
    assert t * ti == P.one
    assert (t ** 3) * (ti ** 2) == t
    assert P.parse("t^-2") == ti * ti


def test_invert_with_nilpotent():
    P = SuperPresentation([("t", 1, True)], ["y", "w"])
    u = P.parse("t + y*w")
    v = invert(u)
    assert u * v == P.one
    assert v == P.parse("t^-1 - t^-2*y*w")


def test_invert_fails_on_nonunit():
    P = SuperPresentation(["x"], [])
    with pytest.raises(NotInvertible):
        invert(P.parse("1 + x"))


def test_localize_at():
    P = SuperPresentation(["x"], ["y"])
    Px, can = localize_at(P, "x")
    assert Px.gen("u") * can(P.gen("x")) == Px.one
    assert can(P.parse("x*y")) == Px.parse("x*y")


def test_algebra_map_respects_signs():
    P = SuperPresentation([], ["a", "b"])
    swap = AlgebraMap(P, P, {"a": "b", "b": "a"})
    assert swap(P.parse("a*b")) == P.parse("-a*b")


def test_parity_mismatch_rejected():
    P = SuperPresentation(["x"], ["y"])
    with pytest.raises(ValueError):
        AlgebraMap(P, P, {"x": "y", "y": "y"})
    with pytest.raises(ValueError):
        SuperPresentation(["x"], ["y"], ["x + y"])


def test_tensor_koszul_sign():
    P = SuperPresentation([], ["a"])
    T = tensor(P, P)
    a1, a2 = T.embed(0, P.gen("a")), T.embed(1, P.gen("a"))
    assert a2 * a1 == -(a1 * a2)
    assert T.pure(P.gen("a"), P.gen("a")) == a1 * a2


def test_prime_field_relations():
    P = SuperPresentation(["x"], [], ["3*x - 1"], field=Field(5))
    assert P.parse("x") == P.parse("2")
