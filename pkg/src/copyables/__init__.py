"""Copyable kernels of classical structures, in Hilbert spaces and in relations.

Two numeric backends share one API: ``exact`` (rationals and Gaussian
rationals) and ``approx`` (complex128 with a tolerance).
"""

from .complementarity import (
    JointlyEpic,
    UnbiasedScope,
    completely_complementary,
    is_unbiased,
    mu_implies_pc_audit,
    mutually_unbiased,
    partially_complementary,
)
from .copyability import (
    check_cs_morphism,
    copyable_lattice,
    cs_kernel,
    is_copyable_endo,
    is_copyable_kernel,
    restrict_delta,
)
from .fdhilb import (
    ClassicalStructure,
    OrthonormalBasis,
    Projection,
    cokernel,
    computational_basis,
    kernel,
    make_delta,
    verify_classical_structure,
    verify_hstar,
)
from .finrel import AbelianGroupoid, Relation, Subset, all_pers, per_copyable, rel_kernel
from .lattice import (
    KSubLattice,
    atoms,
    hasse,
    is_boolean,
    is_distributive,
    orthomodular_check,
    sublattice_closure,
)
from .matrix import APPROX, EXACT, BackendError, Matrix, ShapeError, gauss
from .vnalg import (
    MatrixAlgebra,
    algebra_closure,
    algebra_from_boolean,
    boolean_from_algebra,
    commutant,
    fdca_cocone_check,
    fdcaker_family_check,
    is_commutative,
    pc_algebras,
    round_trip_check,
)

__version__ = "0.1.0"
