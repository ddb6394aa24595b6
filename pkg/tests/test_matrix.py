import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from copyables.matrix import (
    APPROX,
    BackendError,
    Gaussian,
    I,
    Matrix,
    ShapeError,
    compose,
    dagger,
    equals,
    format_exact,
    gauss,
    inverse,
    null_space_projection,
    parse_exact,
    rank,
    solve,
    tensor,
)
from strategies import exact_matrices

half = Fraction(1, 2)


def diag(*xs):
    n = len(xs)
    return Matrix([[xs[i] if i == j else 0 for j in range(n)] for i in range(n)])


# scalars ---------------------------------------------------------------------


def test_rationals_normalized():
    z = gauss(Fraction(2, 4), Fraction(-6, -3))
    assert z.real == Fraction(1, 2) and z.real.denominator == 2
    assert z.imag == 2


def test_gauss_with_zero_imaginary_part_is_a_fraction():
    assert isinstance(gauss(3, 0), Fraction)
    assert isinstance(gauss(3, 1), Gaussian)


def test_float_mixing_raises():
    with pytest.raises(BackendError):
        I * 0.5


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/2+3/4 i", gauss(half, Fraction(3, 4))),
        ("-i", gauss(0, -1)),
        ("7", Fraction(7)),
        ("2/3 i", gauss(0, Fraction(2, 3))),
        ("-1-i", gauss(-1, -1)),
    ],
)
def test_parse_exact(text, value):
    assert parse_exact(text) == value


@pytest.mark.parametrize("text", ["", "i i", "1/0x", "abc"])
def test_parse_exact_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_exact(text)


@given(st.integers(-9, 9), st.integers(1, 9), st.integers(-9, 9), st.integers(1, 9))
def test_format_parse_round_trip(a, b, c, d):
    z = gauss(Fraction(a, b), Fraction(c, d))
    assert parse_exact(format_exact(z)) == z


# dagger, tensor, compose --------------------------------------------------------


def test_dagger_examples():
    assert dagger(Matrix([[0, 1], [0, 0]])) == Matrix([[0, 0], [1, 0]])
    assert dagger(Matrix([[I]])) == Matrix([[gauss(0, -1)]])


@given(exact_matrices(rows=3, cols=3))
def test_dagger_involution(m):
    assert dagger(dagger(m)) == m


def test_tensor_examples():
    assert tensor(Matrix.identity(2), Matrix.identity(2)) == Matrix.identity(4)
    assert tensor(Matrix([[2]]), Matrix([[3]])) == Matrix([[6]])
    assert tensor(diag(1, 0), diag(0, 1)) == diag(0, 1, 0, 0)


def test_tensor_backend_mismatch():
    with pytest.raises(BackendError):
        tensor(Matrix.identity(2), Matrix.identity(2, APPROX))


@given(*[exact_matrices(rows=2, cols=2)] * 4)
def test_tensor_bifunctor(g, g2, f, f2):
    assert compose(g, f).kron(compose(g2, f2)) == compose(g.kron(g2), f.kron(f2))


def test_compose_examples():
    f = Matrix([[1, 2], [3, 4]])
    assert compose(Matrix.identity(2), f) == f
    assert compose(Matrix.zeros(2, 2), f) == Matrix.zeros(2, 2)
    assert compose(Matrix([[1, 1]]), Matrix([[1], [1]])) == Matrix([[2]])


def test_compose_errors():
    with pytest.raises(ShapeError):
        compose(Matrix.identity(2), Matrix.identity(3))
    with pytest.raises(BackendError):
        compose(Matrix.identity(2), Matrix.identity(2, APPROX))


def test_equals():
    m = Matrix([[1, I]])
    assert equals(m, m)
    with pytest.raises(BackendError):
        Matrix([[Fraction(1, 3), 0.3333]])
    a = Matrix([[1.0, 0.0]])
    b = Matrix([[1.0 + 1e-12, 0.0]])
    assert equals(a, b, 1e-9)
    assert not equals(a, Matrix([[1.0 + 1e-6, 0.0]]), 1e-9)
    with pytest.raises(ShapeError):
        equals(a, Matrix([[1.0], [0.0]]))


def test_exact_arithmetic_is_repeatable():
    m = Matrix([[Fraction(1, 3), I], [2, Fraction(-5, 7)]])
    outs = [(m @ m.dag() @ m).tolist() for _ in range(3)]
    assert outs[0] == outs[1] == outs[2]


# linear algebra ---------------------------------------------------------------


def test_null_space_projection_examples():
    assert null_space_projection(Matrix.zeros(2, 2)) == Matrix.identity(2)
    assert null_space_projection(Matrix.identity(2)) == Matrix.zeros(2, 2)
    p = null_space_projection(Matrix([[1, 1], [0, 0]]))
    assert p == Matrix([[half, -half], [-half, half]])


GRID = [Fraction(x) for x in (-1, 0, 1, 2)] + [half]


@given(exact_matrices(max_dim=3, entries=st.integers(-2, 2)))
def test_null_space_projection_against_grid(f):
    p = null_space_projection(f)
    assert p == p.dag() and p @ p == p
    assert (f @ p).is_zero()
    for v in itertools.product(GRID, repeat=f.cols):
        v = Matrix([[x] for x in v])
        assert (f @ v).is_zero() == (p @ v == v)


def test_rank_and_solve():
    a = Matrix([[1, 2], [2, 4]])
    assert rank(a) == 1
    assert solve(a, Matrix([[1], [2]])) is not None
    assert solve(a, Matrix([[1], [0]])) is None
    assert inverse(Matrix([[2, 0], [0, I]])) == Matrix([[half, 0], [0, gauss(0, -1)]])


def test_approx_rank_is_scale_invariant():
    a = Matrix(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-12]]) * 1e6)
    assert rank(a) == 1
    assert rank(Matrix(np.eye(3) * 1e-8)) == 3
