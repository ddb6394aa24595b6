import itertools
from fractions import Fraction

import numpy as np
import pytest

from copyables import fixtures
from copyables.complementarity import partially_complementary
from copyables.copyability import copyable_lattice, is_copyable_kernel
from copyables.fdhilb import Projection
from copyables.lattice import KSubLattice, atoms, sublattice_closure
from copyables.matrix import Matrix
from copyables.suite import block_projections, householder, rational_orthonormal_basis, set_partitions
from copyables.vnalg import (
    MatrixAlgebra,
    NotAnAlgebra,
    NotBoolean,
    ProjectionFamily,
    UnsupportedAlgebra,
    algebra_closure,
    algebra_from_boolean,
    boolean_from_algebra,
    commutant,
    fdca_cocone_check,
    fdcaker_family_check,
    full_algebra,
    intersection_dim,
    is_commutative,
    pc_algebras,
    round_trip_check,
    scalars,
    structure_algebra,
)

half = Fraction(1, 2)
E00 = Matrix([[1, 0], [0, 0]])
NIL = Matrix([[0, 1], [0, 0]])
DIAG2 = algebra_closure([E00])


def proj(*rows):
    return Projection(Matrix(list(rows)))


def test_closure_examples():
    assert algebra_closure([], dim=2).span_dim == 1
    assert DIAG2.span_dim == 2
    assert algebra_closure([NIL]).span_dim == 4


def test_construction_certifies_closure():
    with pytest.raises(NotAnAlgebra):
        MatrixAlgebra(2, [E00])  # no identity
    with pytest.raises(NotAnAlgebra):
        MatrixAlgebra(2, [Matrix.identity(2), NIL])  # not star closed
    with pytest.raises(NotAnAlgebra):
        MatrixAlgebra(3, [Matrix.identity(3), Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
                          Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])])  # products escape


def test_commutant_examples():
    assert commutant(scalars(2)).span_dim == 4
    assert commutant(full_algebra(2)).span_dim == 1
    assert commutant(DIAG2).same_span(DIAG2)


def test_is_commutative_examples():
    assert is_commutative(scalars(3))
    assert is_commutative(DIAG2)
    assert not is_commutative(full_algebra(2))


def test_algebra_from_boolean_examples():
    assert algebra_from_boolean(KSubLattice([Projection.zero_of(2), Projection.top_of(2)])).span_dim == 1
    assert algebra_from_boolean(sublattice_closure([Projection(E00)])).same_span(DIAG2)
    cube = copyable_lattice(fixtures.computational(3)).lattice
    a = algebra_from_boolean(cube)
    assert a.span_dim == 3 and is_commutative(a)


def test_algebra_from_boolean_rejects_non_boolean():
    q = proj([half, half], [half, half])
    with pytest.raises(NotBoolean) as e:
        algebra_from_boolean(sublattice_closure([Projection(E00), q]))
    assert e.value.witness is not None


def test_boolean_from_algebra_examples():
    assert len(boolean_from_algebra(algebra_closure([], dim=2, provenance=[]))) == 2
    assert len(boolean_from_algebra(algebra_closure([E00], provenance=[Projection(E00)]))) == 4
    assert len(boolean_from_algebra(structure_algebra(fixtures.computational(3)))) == 8


def test_boolean_from_algebra_needs_provenance():
    with pytest.raises(UnsupportedAlgebra):
        boolean_from_algebra(DIAG2)


def test_round_trip_examples():
    two = KSubLattice([Projection.zero_of(2), Projection.top_of(2)])
    assert round_trip_check(two)
    assert round_trip_check(copyable_lattice(fixtures.computational(3)).lattice)
    assert round_trip_check(structure_algebra(fixtures.computational(2)))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_round_trip_on_rational_families(d):
    rng = np.random.default_rng(d)
    basis = rational_orthonormal_basis(rng, d)
    for blocks in list(set_partitions(list(range(d))))[:6]:
        lat = sublattice_closure(block_projections(basis, blocks))
        assert len(lat) == 2 ** len(blocks)
        assert round_trip_check(lat)
        assert round_trip_check(algebra_from_boolean(lat))


def test_householder_is_rational_orthogonal():
    h = householder([1, 2, 2])
    assert h @ h.dag() == Matrix.identity(3)
    assert h.a[0, 0] == Fraction(7, 9)


def test_pc_algebra_examples():
    assert not pc_algebras(DIAG2, DIAG2)
    had = structure_algebra(fixtures.hadamard())
    assert pc_algebras(DIAG2, had)
    assert intersection_dim(DIAG2, had) == 1
    assert pc_algebras(scalars(2), DIAG2) and pc_algebras(scalars(2), full_algebra(2))


FIXTURE_ALGEBRAS = {
    "scalars": scalars(3),
    "M3": full_algebra(3),
    "diagonal": structure_algebra(fixtures.computational(3)),
    "M2 + C": algebra_closure([Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])]),
    "fourier": structure_algebra(fixtures.fourier(3)),
}


@pytest.mark.parametrize("name", FIXTURE_ALGEBRAS)
def test_double_commutant(name):
    a = FIXTURE_ALGEBRAS[name]
    assert commutant(commutant(a)).same_span(a)


def test_level_bridge_on_fixtures():
    ds = [fixtures.computational(2), fixtures.hadamard(), fixtures.circular(), fixtures.rotation()]
    for d1, d2 in itertools.combinations_with_replacement(ds, 2):
        assert pc_algebras(structure_algebra(d1), structure_algebra(d2)) == \
            partially_complementary(d1, d2).partially_complementary


# families of kernels ---------------------------------------------------------------


def test_family_check_examples():
    p0, p1 = Projection(E00), proj([0, 0], [0, 1])
    r = fdcaker_family_check(ProjectionFamily([p0, p1]))
    assert r.accepted
    assert r.delta.delta == fixtures.computational(2).delta
    assert r.algebra.same_span(DIAG2)
    r = fdcaker_family_check([p0, proj([half, half], [half, half])])
    assert not r.accepted and r.witness is not None
    r = fdcaker_family_check([Projection.top_of(2)])
    assert r.accepted and r.algebra.span_dim == 1


def test_family_check_rejects_overlaps_and_zero():
    p = proj([1, 0, 0], [0, 1, 0], [0, 0, 0])
    q = proj([0, 0, 0], [0, 1, 0], [0, 0, 1])
    assert fdcaker_family_check([p, q]).reason == "members have nonzero meet"
    assert fdcaker_family_check([p, Projection.zero_of(3)]).reason == "zero member"


def test_family_with_irrational_range_falls_back_to_approx():
    p0 = proj([1, 0, 0], [0, 0, 0], [0, 0, 0])
    p1 = proj([0, 0, 0], [0, half, half], [0, half, half])
    r = fdcaker_family_check([p0, p1])
    assert r.accepted and r.delta.backend == "approx"
    assert all(v.copyable for v in r.copyable)


def test_commutative_algebras_and_families_correspond():
    # Each fixture commutative algebra's atoms form an accepted family whose
    # constructed algebra is the original one.
    algs = [structure_algebra(fixtures.computational(3)),
            structure_algebra(fixtures.rotation()),
            algebra_closure([Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])],
                            provenance=[proj([1, 0, 0], [0, 0, 0], [0, 0, 0])])]
    for a in algs:
        lat = boolean_from_algebra(a)
        r = fdcaker_family_check(atoms(lat))
        assert r.accepted
        assert r.algebra.same_span(a)
        d = r.delta
        for x in lat:
            xp = x if x.backend == d.backend else x.to_approx()
            assert is_copyable_kernel(xp, d)


# cocones ---------------------------------------------------------------------------


def test_cocone_examples():
    comp2, comp3 = fixtures.computational(2), fixtures.computational(3)
    assert fdca_cocone_check([(comp2, Matrix.identity(2))], comp2).accepted
    f1 = Matrix([[1, 0], [0, 1], [0, 0]])
    f2 = Matrix([[0], [0], [1]])
    assert fdca_cocone_check([(comp2, f1), (fixtures.computational(1), f2)], comp3).accepted
    h = Matrix([[1, 1], [1, -1]]).to_approx() * (2 ** -0.5)
    r = fdca_cocone_check([(comp2, h)], comp2)
    assert not r.accepted and r.bad_embeddings == [0]


def test_cocone_rejects_overlapping_images():
    comp2 = fixtures.computational(2)
    r = fdca_cocone_check([(comp2, Matrix.identity(2)), (comp2, Matrix.identity(2))], comp2)
    assert not r.accepted and r.overlapping_pairs == [(0, 1)]
