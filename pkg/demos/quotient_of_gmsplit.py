"""
A first quotient: GmSplit by the square roots of unity
======================================================

GmSplit is the multiplicative group with one odd coordinate ``y``.
Killing ``t^2 - 1`` and ``y`` gives the subgroup mu_2 with no odd part.
"""

from superquot import build_quotient, check_affinity, compute_z
from superquot.cli import load_corpus

corpus = load_corpus()
S = corpus.pair("GmSplit", "Mu2e")

# the odd conormal directions: everything in W survives, since mu_2 has none
Z = compute_z(S)
print("z =", Z.names)

# the quotient exists as an affine superscheme
print("affinity:", check_affinity(S, 4).status)

# its even part is generated by t^2 and t^-2, its odd part by t (x) y
Q = build_quotient(S, 4)
print("B generators:", [str(b) for b in Q.B_generators])
print("relations:", Q.B_relations)
print("B1 generators:", Q.witnesses["B1_generators"], "free:", Q.B1.free)

# dimensions of the coinvariants layer by layer (weight <= n)
for n, d in Q.layer_dims.items():
    print(f"  layer <= {n}: {d}")

# the same run through the command line front end
from superquot.cli import render, run_command

doc, code = run_command(["quotient", "GmSplit", "Mu2e", "--bound", "4"])
print(render(doc, "text"))
