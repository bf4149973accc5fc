"""J from Eisenstein series, then the product over roots that reproduces J(p) - J(q)."""

from __future__ import annotations

from monsterlie.moonshine import monster_multiplicity, verify_denominator_identity
from monsterlie.qseries import eisenstein_e4, eta_quotient, j_series

# J = E4^3 / Delta - 744, with Delta = eta^24
e4 = eisenstein_e4(4)
delta = eta_quotient({1: 24}, 6)
print("E4    =", [e4[n] for n in range(4)])
print("Delta =", [delta[n] for n in range(1, 6)])

j = j_series(6)
for n in range(-1, 6):
    print(f"  c({n:2d}) = {j[n]}")

# root multiplicities depend only on the product mn
print("mult(1,1), mult(2,1), mult(1,2):", monster_multiplicity(1, 1), monster_multiplicity(2, 1),
      monster_multiplicity(1, 2))

rep = verify_denominator_identity("1A", 5, 5)
print(rep.identity, "-> residual terms:", rep.residual_terms(), "pass:", rep.passed)

# change a single exponent and the residual shows up
bad = lambda m, n: monster_multiplicity(m, int(n)) + (1 if (m, n) == (1, 2) else 0)
rep = verify_denominator_identity("1A", 3, 3, bad)
print("perturbed c(1,2): first residual terms", rep.residual_terms()[:3])
