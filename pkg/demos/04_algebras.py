"""Commutative subalgebras, commutants and families of disjoint kernels.

Run: python demos/04_algebras.py
"""

from fractions import Fraction

from copyables import fixtures
from copyables.fdhilb import Projection
from copyables.matrix import Matrix
from copyables.vnalg import (
    boolean_from_algebra,
    commutant,
    fdcaker_family_check,
    pc_algebras,
    structure_algebra,
)

diag = structure_algebra(fixtures.computational(3))
print(diag, "commutant:", commutant(diag), "double commutant fixes it:",
      commutant(commutant(diag)).same_span(diag))
print("projections in the diagonal algebra:", len(boolean_from_algebra(diag)))

a, b = structure_algebra(fixtures.computational(2)), structure_algebra(fixtures.hadamard())
print("diagonal vs hadamard algebras meet in the scalars:", pc_algebras(a, b))

half = Fraction(1, 2)
p0 = Projection(Matrix([[1, 0], [0, 0]]))
for other in (Projection(Matrix([[0, 0], [0, 1]])), Projection(Matrix([[half, half], [half, half]]))):
    r = fdcaker_family_check([p0, other])
    print("family", p0.label(), other.label(), "->", "accepted" if r.accepted else f"rejected: {r.reason}")
