"""
The GL(1|1) family
==================

One supergroup, four subgroups: Borel, torus, trivial, and the whole group.
The odd dimension of each quotient is read off from ``z``.
"""

from superquot import build_quotient, compute_z, is_graded, lie_superalgebra
from superquot.cli import load_corpus

corpus = load_corpus()
G = corpus.hopf_algebra("GL11")

# GL(1|1) is not graded: the odd generators bracket into the torus
L = lie_superalgebra(G)
print("[b*, g*] =", {k: str(v) for k, v in L.bracket[("b*", "g*")].items()})
print("graded:", is_graded(G).ok)

for name in ["Borel", "Torus", "GL11e", "GL11all"]:
    S = corpus.pair("GL11", name)
    Q = build_quotient(S, 4)
    print(f"{name:8s} dim z = {compute_z(S).dim}  layers {Q.layer_dims}  total {Q.total_dim}")

# over the torus the quotient is an exterior algebra on two odd generators
Q = build_quotient(corpus.pair("GL11", "Torus"), 4)
print("ranks by odd degree:", Q.binomial_ranks)
