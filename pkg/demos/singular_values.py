"""Singular values of A, B, A+B for 3x2 matrices, and the link with Horn(5)."""

import numpy as np

from horncones import hat_pq, horn_member, horn_system, sing_system
from horncones.oracle import equivalence_check, random_matrix, singular_values
from horncones.polyhedra import relation_text

p, q = 3, 2
system = sing_system(p, q)
print(f"sing({p},{q}): {len(system)} inequalities")
for rel in system.relations[:5]:
    print("  ", relation_text(rel))

rng = np.random.default_rng(2)
A, B = random_matrix(p, q, rng), random_matrix(p, q, rng)
pt = {"x": singular_values(A), "y": singular_values(B), "z": singular_values(A + B)}
print("\nsigma(A), sigma(B), sigma(A+B):", *(np.round(v, 3) for v in pt.values()))
print("member:", system.member({k: list(v) for k, v in pt.items()}, "float", 1e-9).member)

# a triple of singular spectra lies in sing(p, q) iff the symmetrized
# vectors (s, 0, ..., 0, -s reversed) lie in Horn(p + q)
pt = {"x": [3, 1], "y": [2, 2], "z": [4, 1]}
hats = [list(hat_pq(pt[k], p, q)) for k in "xyz"]
print("\n", pt, "->", system.member(pt).member, "; hats in Horn(5):", horn_member(*hats))

rep = equivalence_check(system, "sing-horn", horn_system(p + q), trials=5000, seed=0)
print(f"exact comparison on {rep['trials']} points: {rep['separation_count']} separations")
