"""
When is a quotient affine?
==========================

The bounded Galois test separates mu_2 in Gm, which gives an affine
quotient, from the Borel subgroup of GL_2, whose quotient is the
projective line.
"""

from superquot import check_galois
from superquot.cli import load_corpus
from superquot.quotient import quotient_comodule_algebra

corpus = load_corpus()

S = corpus.pair("Gm", "Mu2")
g = check_galois(quotient_comodule_algebra(S), 4, hopf=S.C)
print("Gm / mu_2:", g.status)
print("  alpha witness:", g.alpha)
for row in g.beta:
    print("  degree", row["degree"], "rank", row["rank"], "of", row["domain"])

B = corpus.pair("GL2", "GL2Borel")
g = check_galois(quotient_comodule_algebra(B), 4, hopf=B.C)
print("GL2 / Borel:", g.status)
# a (x) c - c (x) a dies under beta: both map to ac (x) a
print("  obstruction:", g.obstruction)

# verdicts do not flip as the bound grows
for bound in range(2, 7):
    print(bound, check_galois(quotient_comodule_algebra(B), bound, hopf=B.C).status)
