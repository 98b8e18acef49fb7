import pytest

from superquot._expr import ParseError
from superquot.cli import build_hopf, parse_presentation
from superquot.hopf import (
    associated_hopf_algebra,
    cotangent_data,
    gr_hopf_smash,
    is_graded,
    lie_superalgebra,
    validate_hopf,
)
from superquot.superlinalg import Field

NOT_COASSOC = """
hopf Bad {
  even t inv;
  odd y;
  coproduct { t = t(x)t + y(x)y; y = y(x)1 + 1(x)y; }
  counit { t = 1; y = 0; }
  antipode { t = t^-1; y = -y; }
}
"""


def _hopf(text, name, fld=None):
    blk = parse_presentation(text).hopf[name]
    return build_hopf(blk, fld) if fld else build_hopf(blk)


@pytest.mark.parametrize("name", ["GL11", "GL2", "Ga01", "Ga11", "Gm", "GmSplit"])
def test_corpus_hopf_laws(corpus, name):
    assert validate_hopf(corpus.hopf_algebra(name), 3).ok


def test_corpus_over_prime_field():
    from superquot.cli import load_corpus

    reg = load_corpus(Field(7))
    assert validate_hopf(reg.hopf_algebra("GL11"), 3).ok


def test_auto_antipode_gmsplit(corpus):
    H = corpus.hopf_algebra("GmSplit")
    assert str(H.S(H.P.gen("t"))) == "t^-1"
    assert str(H.S(H.P.gen("y"))) == "-t^-1*y"


def test_coassociativity_failure_has_witness():
    H = _hopf(NOT_COASSOC, "Bad")
    v = validate_hopf(H, 3)
    assert v.status == "fail"
    assert v.witness


def test_counit_must_be_even():
    text = ("hopf X {\n  even t inv;\n  odd y;\n  coproduct { t = t(x)t; y = y(x)1 + 1(x)y; }\n"
            "  counit { t = 1; y = 1; }\n  antipode auto;\n}\n")
    with pytest.raises(ParseError) as exc:
        _hopf(text, "X")
    assert (exc.value.line, exc.value.col) == (5, 19)
    assert "odd generator y" in exc.value.message


def test_gl11_lie_superalgebra(corpus):
    L = lie_superalgebra(corpus.hopf_algebra("GL11"))
    assert L.dims == (2, 2)
    assert all(L.checks.values())
    assert {k: int(v) for k, v in L.bracket[("b*", "g*")].items()} == {"a*": -1, "d*": -1}
    assert {k: int(v) for k, v in L.bracket[("a*", "b*")].items()} == {"b*": 1}


def test_cotangent_of_gl11(corpus):
    cd = cotangent_data(corpus.hopf_algebra("GL11"))
    assert list(cd.odd_basis) == ["b", "g"]
    assert [str(x) for x in cd.coaction[0].values()] == ["a^-1*d"]


def test_associated_hopf_algebra(corpus):
    H = corpus.hopf_algebra("GL11")
    C, q = associated_hopf_algebra(H)
    assert C.P.no == 0
    assert str(q(H.P.parse("a*b + d"))) == "d"
    assert validate_hopf(C, 3).ok


@pytest.mark.parametrize("name,graded", [("GL11", False), ("GL2", True), ("Ga01", True),
                                          ("Ga11", False), ("Gm", True), ("GmSplit", True)])
def test_is_graded(corpus, name, graded):
    assert is_graded(corpus.hopf_algebra(name)).ok == graded


@pytest.mark.parametrize("name", ["GL11", "Ga11", "GmSplit"])
def test_gr_is_graded_hopf(corpus, name):
    G = gr_hopf_smash(corpus.hopf_algebra(name))
    assert is_graded(G).ok
    assert validate_hopf(G, 3).ok
    assert lie_superalgebra(G).dims == lie_superalgebra(corpus.hopf_algebra(name)).dims
