"""Generate Horn(3), test a few points, and sample realizable spectra."""

import numpy as np

from horncones import ConeId, horn_member, horn_system, to_text
from horncones.oracle import eigenvalues_hermitian, random_hermitian, soundness_check

system = horn_system(3)
print(to_text(system))
print(f"{len(system.inequalities())} inequalities, {len(system.equalities())} equality\n")

print("(2,1,0) + (1,1,0) -> (3,2,0):", horn_member([2, 1, 0], [1, 1, 0], [3, 2, 0]))
print("(2,1,0) + (1,1,0) -> (4,1,-2):", horn_member([2, 1, 0], [1, 1, 0], [4, 1, -2]))

rng = np.random.default_rng(0)
X, Y = random_hermitian(3, rng), random_hermitian(3, rng)
x, y, z = (eigenvalues_hermitian(M) for M in (X, Y, X + Y))
res = system.member({"x": list(x), "y": list(y), "z": list(z)}, "float", 1e-9)
print("\nspectra of X, Y, X+Y:", np.round(x, 3), np.round(y, 3), np.round(z, 3), "member:", res.member)

rep = soundness_check(ConeId.make("horn", n=3), trials=500, seed=1)
print(f"500 random samples: {rep['violation_count']} violations, largest deficit {rep['max_violation']:.1e}")
