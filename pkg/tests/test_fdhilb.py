import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from copyables import fixtures
from copyables.fdhilb import (
    ClassicalStructure,
    NotAProjection,
    OrthonormalBasis,
    Projection,
    cokernel,
    computational_basis,
    copier,
    inclusion,
    involution,
    kernel,
    make_delta,
    ortho,
    vector_copyable_phase,
    verify_classical_structure,
    verify_hstar,
)
from copyables.matrix import APPROX, I, Matrix, ShapeError, gauss
from strategies import exact_matrices

half = Fraction(1, 2)
ANTI = Matrix([[half, -half], [-half, half]])


def test_kernel_examples():
    assert kernel(Matrix.zeros(2, 2)).p == Matrix.identity(2)
    assert kernel(Matrix.identity(2)).p == Matrix.zeros(2, 2)
    assert kernel(Matrix([[1, 1], [0, 0]])).p == ANTI


def test_cokernel_examples():
    assert cokernel(Matrix.zeros(2, 2)).p == Matrix.identity(2)
    assert cokernel(Matrix.identity(2)).p == Matrix.zeros(2, 2)
    assert cokernel(Matrix([[1, 0], [1, 0]])).p == ANTI


def test_ortho_examples():
    assert ortho(Projection(Matrix.zeros(2, 2))).p == Matrix.identity(2)
    assert ortho(Projection(Matrix([[1, 0], [0, 0]]))).p == Matrix([[0, 0], [0, 1]])


@given(exact_matrices(max_dim=3))
def test_ortho_involution(f):
    p = kernel(f)
    assert ortho(ortho(p)).same(p)


def test_projection_invariants_enforced():
    with pytest.raises(NotAProjection):
        Projection(Matrix([[1, 1], [0, 0]]))
    with pytest.raises(NotAProjection):
        Projection(Matrix([[2, 0], [0, 0]]))


def test_non_orthonormal_basis_rejected():
    with pytest.raises(ValueError):
        OrthonormalBasis([Matrix([[1], [1]]), Matrix([[1], [0]])])


# make_delta --------------------------------------------------------------------


def test_computational_copier_entries():
    d = make_delta(computational_basis(2))
    a = d.delta.a
    assert a[0, 0] == 1 and a[3, 1] == 1
    assert sum(1 for x in a.flat if x) == 2


def test_rotation_delta_is_exact():
    d = fixtures.rotation()
    assert d.backend == "exact"
    assert all(isinstance(x, Fraction) for x in d.delta.a.flat)
    assert verify_classical_structure(d).ok


def test_hadamard_delta_is_approx_and_dagger_monic():
    d = fixtures.hadamard()
    assert d.backend == APPROX
    assert (d.delta.dag() @ d.delta).equals(Matrix.identity(2, APPROX), 1e-9)


@pytest.mark.parametrize(
    "d",
    [fixtures.computational(2), fixtures.computational(3), fixtures.hadamard(), fixtures.circular(),
     fixtures.rotation(), fixtures.fourier(3)],
    ids=lambda d: d.name,
)
def test_fixture_structures_pass_all_axioms(d):
    rep = verify_classical_structure(d)
    assert rep.ok and rep.frobenius, rep.failed()


def test_negated_column_is_still_a_copier():
    # Negating a column of the copier yields the copier of the basis {-e0, e1}.
    a = np.array(copier(2).a)
    a[:, 0] = -a[:, 0]
    rep = verify_classical_structure(ClassicalStructure(Matrix(a)))
    assert rep.ok
    assert make_delta(OrthonormalBasis([Matrix([[-1], [0]]), Matrix([[0], [1]])])).delta == Matrix(a)


def test_asymmetric_column_breaks_commutativity_only_where_expected():
    # delta(e0) = e0 (x) e1 keeps delta dagger monic but is not commutative.
    d = ClassicalStructure(Matrix([[0, 0], [1, 0], [0, 0], [0, 1]]))
    rep = verify_classical_structure(d)
    assert rep.dagger_monic
    assert not rep.commutative
    assert not rep.ok


def test_random_delta_fails_dagger_monic():
    rng = np.random.default_rng(0)
    for _ in range(20):
        d = ClassicalStructure(Matrix(rng.normal(size=(4, 2)) + 0j))
        assert not verify_classical_structure(d).dagger_monic


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        ClassicalStructure(Matrix.zeros(3, 2))


# involution and H* -------------------------------------------------------------


def test_involution_examples():
    comp = fixtures.computational(2)
    x = Matrix([[Fraction(3)], [Fraction(-1, 2)]])
    assert involution(x, comp) == x
    assert involution(Matrix([[I], [0]]), comp) == Matrix([[gauss(0, -1)], [0]])
    had = fixtures.hadamard()
    xs = involution(Matrix([[1j], [0j]]), had)
    assert xs.equals(Matrix([[-1j], [0j]]), 1e-9)


def test_involution_solved_without_provenance():
    bare = ClassicalStructure(fixtures.computational(2).delta)
    assert involution(Matrix([[I], [1]]), bare) == Matrix([[gauss(0, -1)], [1]])


def test_verify_hstar_examples():
    comp = fixtures.computational(2)
    assert verify_hstar(Matrix([[1], [0]]), comp)
    for d in (fixtures.rotation(), fixtures.hadamard(), fixtures.circular()):
        assert all(verify_hstar(v, d) for v in d.basis)
    x = Matrix([[I], [0]])
    assert not verify_hstar(x, comp, xstar=x)


def test_vector_copyable_phase():
    comp = fixtures.computational(2)
    assert vector_copyable_phase(Matrix([[1], [0]]), comp) == 1
    assert vector_copyable_phase(Matrix([[I], [0]]), comp) == gauss(0, -1)
    s = 1 / math.sqrt(2)
    assert vector_copyable_phase(Matrix([[s], [s]]), comp.to_approx()) is None
    with pytest.raises(ValueError):
        vector_copyable_phase(Matrix([[2], [0]]), comp)


def test_inclusion_is_dagger_monic_onto_range():
    for P in (Projection(ANTI), Projection(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]]))):
        k = inclusion(P)
        assert (k.dag() @ k).equals(k.identity_like(k.cols), 1e-9)
        pp = P.p if k.backend == P.backend else P.p.to_approx()
        assert (k @ k.dag()).equals(pp, 1e-9)


def test_projection_lattice_ops():
    e0 = Projection(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    line = Projection.onto([Matrix([[1], [1], [0]])])
    assert e0.join(line).rank == 2
    assert e0.meet(line).is_zero()
    assert not e0.is_orthogonal(line)
    assert e0.leq(e0.join(line))


# kernels and tensors ------------------------------------------------------------


@given(exact_matrices(max_dim=3), exact_matrices(max_dim=3))
def test_kernel_tensor_coherence(f, g):
    lhs = kernel(f).kron(kernel(g))
    rhs = kernel(f.kron(Matrix.identity(g.cols))).meet(kernel(Matrix.identity(f.cols).kron(g)))
    assert lhs.same(rhs)


@given(exact_matrices(max_dim=3))
def test_kernel_of_square_tensor_is_the_join(f):
    # ker(f (x) f) collects vectors killed on either leg, so it is a join.
    n = Matrix.identity(f.cols)
    left, right = kernel(f.kron(n)), kernel(n.kron(f))
    assert kernel(f.kron(f)).same(left.join(right))
    assert kernel(f).kron(kernel(f)).same(left.meet(right))


def test_kernel_of_square_tensor_exceeds_tensor_of_kernels():
    f = Matrix([[1, 0], [0, 0]])
    assert kernel(f.kron(f)).rank == 3
    assert kernel(f).kron(kernel(f)).rank == 1
