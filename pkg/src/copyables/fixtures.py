"""Standard bases, structures and groupoids used by demos, the CLI and tests."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .fdhilb import OrthonormalBasis, computational_basis, make_delta
from .finrel import AbelianGroupoid, abelian_groups
from .matrix import APPROX, EXACT, Matrix


def computational(d, backend=EXACT):
    return make_delta(computational_basis(d, backend), name=f"computational C^{d}")


def hadamard_basis():
    s = 1 / math.sqrt(2)
    return OrthonormalBasis([Matrix([[s], [s]]), Matrix([[s], [-s]])])


def circular_basis():
    s = 1 / math.sqrt(2)
    return OrthonormalBasis([Matrix([[s + 0j], [1j * s]]), Matrix([[s + 0j], [-1j * s]])])


def rotation_basis(a=Fraction(3, 5), b=Fraction(4, 5)):
    """Exact basis {(a, b), (-b, a)} for a rational point on the unit circle."""
    a, b = Fraction(a), Fraction(b)
    if a * a + b * b != 1:
        raise ValueError("(a, b) must lie on the unit circle")
    return OrthonormalBasis([Matrix([[a], [b]]), Matrix([[-b], [a]])])


def fourier_basis(d):
    w = cmath.exp(2j * cmath.pi / d)
    s = 1 / math.sqrt(d)
    return OrthonormalBasis(
        [Matrix([[s * w ** (j * k)] for j in range(d)], APPROX) for k in range(d)]
    )


def hadamard():
    return make_delta(hadamard_basis(), name="hadamard C^2")


def circular():
    return make_delta(circular_basis(), name="circular C^2")


def rotation(a=Fraction(3, 5), b=Fraction(4, 5)):
    return make_delta(rotation_basis(a, b), name=f"rotation ({a},{b})")


def fourier(d):
    return make_delta(fourier_basis(d), name=f"fourier C^{d}")


def standard_mubs_c2():
    """Computational, Hadamard and circular structures on C^2."""
    return [computational(2), hadamard(), circular()]


def small_abelian_groups(lo=2, hi=6):
    return [g for n in range(lo, hi + 1) for g in abelian_groups(n)]


def small_groupoids(max_size=4):
    """Groups and disjoint unions of groups on at most ``max_size`` elements."""
    out = []
    parts = {
        1: [[1]],
        2: [[2], [1, 1]],
        3: [[3], [2, 1], [1, 1, 1]],
        4: [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]],
    }
    for n in range(1, max_size + 1):
        for part in parts[n]:
            if len(part) == 1:
                out.extend(abelian_groups(n))
            else:
                out.append(AbelianGroupoid.disjoint_union(*[AbelianGroupoid.cyclic(k) for k in part]))
    return out
