"""Copyable kernels of the computational basis and what restriction does to them.

Run: python demos/01_copyable_kernels.py
"""

from copyables import fixtures
from copyables.copyability import copyable_lattice, restrict_delta
from copyables.fdhilb import Projection, verify_classical_structure
from copyables.lattice import atoms, hasse, is_boolean
from copyables.matrix import Matrix

delta = fixtures.computational(3)
print("axioms:", verify_classical_structure(delta).as_dict())

fam = copyable_lattice(delta)
print(f"{fam.size} copyable kernels on C^3:")
for k in fam.lattice:
    print("  ", k.label())
print("Boolean:", is_boolean(fam.lattice)[0], "atoms:", len(atoms(fam.lattice)))

# A line off the basis is refuted, not silently dropped.
line = Projection.onto([Matrix([[1], [1], [0]])])
print("span(1,1,0) copyable:", line in copyable_lattice(delta, probes=[line]).lattice)

# Restricting to a copyable plane gives back the copier of C^2.
plane = Projection(Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
r = restrict_delta(plane, delta)
print("restriction equals the C^2 copier:", r.structure.delta == fixtures.computational(2).delta)

print(hasse(fam.lattice, "Cube"))
