"""Classical structures in sets and relations: groups copy almost nothing.

Run: python demos/02_relations.py
"""

from copyables import fixtures
from copyables.copyability import copyable_lattice
from copyables.fdhilb import ClassicalStructure
from copyables.finrel import AbelianGroupoid, all_pers, per_copyable

for g in fixtures.small_abelian_groups(2, 6):
    lat = copyable_lattice(ClassicalStructure.from_groupoid(g)).lattice
    print(f"group of order {g.n}: copyable subsets", [k.label() for k in lat])

# Disjoint unions behave differently: whole components are copyable.
g = AbelianGroupoid.disjoint_union(AbelianGroupoid.cyclic(2), AbelianGroupoid.cyclic(1))
lat = copyable_lattice(ClassicalStructure.from_groupoid(g)).lattice
print("Z2 + Z1:", [k.label() for k in lat])

# Partial equivalence relations are copyable exactly when they are congruences.
z4 = AbelianGroupoid.cyclic(4)
for q in all_pers(4):
    if per_copyable(q, z4):
        print("copyable PER on Z4:", q.pairs())
