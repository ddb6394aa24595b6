"""Partial complementarity against mutual unbiasedness on C^2 and C^3.

Run: python demos/03_complementarity.py
"""

from copyables import fixtures
from copyables.complementarity import (
    JointlyEpic,
    completely_complementary,
    mu_implies_pc_audit,
)

comp, had, circ = fixtures.standard_mubs_c2()
rot = fixtures.rotation()

for name, d in [("hadamard", had), ("circular", circ), ("rotation 3/5,4/5", rot)]:
    a = mu_implies_pc_audit(comp, d)
    print(f"computational vs {name}: MU={a.mutually_unbiased} PC={a.partially_complementary}")

for reading in JointlyEpic:
    cc = completely_complementary([comp, had, circ], reading)
    print(f"three MUBs, {reading.value}: {cc.completely_complementary} {cc.detail}")

# In C^3 the rank-two copyables are never unbiased, so even the Fourier
# basis is not mutually unbiased with the computational one in this sense.
a = mu_implies_pc_audit(fixtures.computational(3), fixtures.fourier(3))
print(f"C^3 computational vs fourier: MU={a.mutually_unbiased} PC={a.partially_complementary}")
