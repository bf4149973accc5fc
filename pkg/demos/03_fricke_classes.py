"""Classes 2A and 2B: their series, transforms under tau -> -1/tau, and multiplicities."""

from __future__ import annotations

from fractions import Fraction

from monsterlie.cartan import BorcherdsCartanMatrix, rank_truncated, validate_borcherds_conditions
from monsterlie.moonshine import (
    fricke_transform,
    mckay_thompson,
    multiplicity_2B_row0,
    root_multiplicity,
    verify_2b_inverse_identity,
    verify_fricke_p0_consistency,
    verify_theta_identity,
)
from monsterlie.qseries import UncertifiedRegionError


def show(s) -> str:
    return " + ".join(f"{c}*q^({e})" for e, c in s.terms()) + f" + O(q^{s.truncation})"


print("T_2A + 104:", show((mckay_thompson("2A", 4) + 104)))
print("T_2A(-1/tau):", show(fricke_transform("2A", 2)))
for k in range(1, 5):
    n = Fraction(k, 2)
    print(f"  2A c(1,{n}) = {root_multiplicity('2A', 1, n)}")
try:
    root_multiplicity("2A", 2, 1)
except UncertifiedRegionError as exc:
    print("  2A c(2,1):", exc)

a = BorcherdsCartanMatrix("2A")
print("2A Cartan conditions:", validate_borcherds_conditions(a, 5, 3).to_dict(), "rank", rank_truncated(a, 5, 3))
print("2A p^0 row check:", verify_fricke_p0_consistency("2A", 3).passed)

print("T_2B:", show(mckay_thompson("2B", 3)))
print("T_2B(-1/tau):", show(fricke_transform("2B", 2)))
print("theta identity:", verify_theta_identity(5).passed, " inverse identity:", verify_2b_inverse_identity(5).passed)
print("2B c(m,0), m = 1..10:", [multiplicity_2B_row0(m) for m in range(1, 11)])
