"""Copyability of endomorphisms and kernels along a classical structure.

An endomorphism ``p`` is copyable along ``delta`` when
``delta . p == (p (x) p) . delta``; a kernel is copyable when its projection
is.  Everything here works for both models: Hilbert-space structures carry
``Matrix`` data, relational ones carry ``Relation`` data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .fdhilb import (
    ClassicalStructure,
    OrthonormalBasis,
    Projection,
    inclusion,
    kernel,
    verify_classical_structure,
)
from .finrel import Subset, all_subsets
from .lattice import KSubLattice, is_boolean, sublattice_closure
from .matrix import Matrix, ShapeError

DEFAULT_MAX_DIM = 12


class NotCopyableError(ValueError):
    pass


@dataclass
class CopyabilityVerdict:
    copyable: bool
    lhs: object
    rhs: object
    deviation: float = 0.0

    def __bool__(self):
        return self.copyable


def _payload(P):
    if isinstance(P, Projection):
        return P.p
    if isinstance(P, Subset):
        return P.as_relation()
    raise TypeError(f"not a kernel subobject: {P!r}")


def is_copyable_endo(p, d):
    """Compare delta . p with (p (x) p) . delta."""
    if p.rows != p.cols or p.cols != d.dim:
        raise ShapeError(f"endomorphism of shape {p.shape} on an object of dim {d.dim}")
    lhs = d.delta @ p
    rhs = p.kron(p) @ d.delta
    return CopyabilityVerdict(lhs.equals(rhs, d.eps), lhs, rhs, lhs.max_deviation(rhs))


def is_copyable_kernel(P, d):
    if P.ambient[1] != d.dim:
        raise ShapeError("kernel and classical structure live on different objects")
    return is_copyable_endo(_payload(P), d)


# ---------------------------------------------------------------------------
# Restriction to a copyable kernel


@dataclass
class Restriction:
    """delta_k on the domain of a copyable dagger monic k."""

    structure: ClassicalStructure
    inclusion: Matrix
    squares: dict


def restrict_delta(P, d, allow_approx=True):
    """The unique fill-in delta_k = (k^dag (x) k^dag) . delta . k.

    Both commuting squares ``delta k = (k (x) k) delta_k`` and
    ``delta_k k^dag = (k^dag (x) k^dag) delta`` are checked and reported.
    """
    if d.model != "hilb":
        raise TypeError("restriction is implemented for Hilbert-space structures")
    v = is_copyable_kernel(P, d)
    if not v.copyable:
        raise NotCopyableError("kernel is not copyable; no fill-in exists")
    k = inclusion(P, d.basis, allow_approx=allow_approx)
    if k.backend != d.delta.backend:
        d = d.to_approx()
    kd = k.dag()
    dk = kd.kron(kd) @ d.delta @ k
    squares = {
        "right": (d.delta @ k).equals(k.kron(k) @ dk, d.eps),
        "left": (dk @ kd).equals(kd.kron(kd) @ d.delta, d.eps),
    }
    basis = None
    if d.basis is not None and k.cols:
        pp = P.p if P.backend == d.delta.backend else P.p.to_approx()
        inside = [v for v in d.basis if (pp @ v).equals(v, d.eps)]
        if len(inside) == k.cols:
            basis = OrthonormalBasis([kd @ v for v in inside], d.eps)
    cs = ClassicalStructure(dk, basis, eps=d.eps, name=f"{d.name}|k" if d.name else "")
    return Restriction(cs, k, squares)


# ---------------------------------------------------------------------------
# The Boolean algebra of copyable kernels


@dataclass
class CopyableFamily:
    """Certified copyable kernels plus refuted probes.

    ``lattice`` holds the certified family.  In Hilbert spaces the family is
    the candidate set predicted from the basis; membership is machine
    certified, completeness is not.
    """

    lattice: KSubLattice
    certified: list
    refuted_probes: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    boolean: bool = True
    boolean_witness: object = None

    @property
    def size(self):
        return len(self.lattice)


def subset_sum_projections(basis):
    """All 2^dim projections onto spans of subsets of an orthonormal basis."""
    ones = basis.rank_one_projections()
    n = len(ones)
    zero = Projection(ones[0].p.zeros_like(n, n), check=False)
    out = []
    for r in range(n + 1):
        for combo in combinations(range(n), r):
            acc = zero.p
            for i in combo:
                acc = acc + ones[i].p
            out.append(Projection(acc, basis.eps, check=False))
    return out


def copyable_lattice(d, probes=(), max_dim=DEFAULT_MAX_DIM):
    if d.dim > max_dim:
        raise ValueError(f"dimension {d.dim} exceeds the enumeration bound {max_dim}")
    certified, refuted, anomalies = [], [], []
    if d.model == "rel":
        for s in all_subsets(d.dim):
            if is_copyable_kernel(s, d).copyable:
                certified.append(s)
        lat = KSubLattice(certified)
    elif d.basis is not None:
        family = subset_sum_projections(d.basis)
        for P in family:
            if is_copyable_kernel(P, d).copyable:
                certified.append(P)
            else:
                anomalies.append(("candidate not copyable", P))
        lat = KSubLattice(certified)
        for q in probes:
            if q in lat:
                continue
            if is_copyable_kernel(q, d).copyable:
                anomalies.append(("probe outside family is copyable", q))
            else:
                refuted.append(q)
    elif probes:
        for q in probes:
            (certified if is_copyable_kernel(q, d).copyable else refuted).append(q)
        top = Projection.top_of(d.dim, d.backend)
        lat = sublattice_closure(certified, top=top)
        for x in lat:
            if not is_copyable_kernel(x, d).copyable:
                anomalies.append(("closure element not copyable", x))
    else:
        raise ValueError("structure has no basis provenance and no probes were given")
    ok, witness = is_boolean(lat)
    return CopyableFamily(lat, certified, refuted, anomalies, ok, witness)


# ---------------------------------------------------------------------------
# Morphisms of classical structures


@dataclass
class CSMorphismCheck:
    ok: bool
    comonoid: bool
    monoid: bool

    def __bool__(self):
        return self.ok

    @property
    def failed(self):
        return [n for n, v in (("comonoid", self.comonoid), ("monoid", self.monoid)) if not v]


def check_cs_morphism(f, dx, dy):
    """delta_Y f = (f (x) f) delta_X  and  delta_Y^dag (f (x) f) = f delta_X^dag."""
    if f.cols != dx.dim or f.rows != dy.dim:
        raise ShapeError(f"morphism of shape {f.shape} between dims {dx.dim} -> {dy.dim}")
    if dx.model == "hilb" and len({f.backend, dx.backend, dy.backend}) > 1:
        f, dx, dy = f.to_approx(), dx.to_approx(), dy.to_approx()
    eps = max(dx.eps, dy.eps)
    ff = f.kron(f)
    comonoid = (dy.delta @ f).equals(ff @ dx.delta, eps)
    monoid = (dy.delta.dag() @ ff).equals(f @ dx.delta.dag(), eps)
    return CSMorphismCheck(comonoid and monoid, comonoid, monoid)


@dataclass
class CSKernel:
    kernel: object
    verdict: CopyabilityVerdict
    inclusion: object
    certificates: dict


def cs_kernel(f, dx, dy):
    """Kernel of a CS-morphism, certified copyable along its source."""
    chk = check_cs_morphism(f, dx, dy)
    if not chk.ok:
        raise ValueError(f"not a morphism of classical structures ({', '.join(chk.failed)} fails)")
    if dx.model == "rel":
        from .finrel import rel_kernel

        K = rel_kernel(f)
        return CSKernel(K, is_copyable_kernel(K, dx), K.as_relation(), {})
    K = kernel(f, dx.eps)
    verdict = is_copyable_kernel(K, dx)
    k = inclusion(K, dx.basis)
    d = dx if k.backend == dx.delta.backend else dx.to_approx()
    kd = k.dag()
    phi = kd.kron(kd) @ d.delta @ k
    psi = kd @ d.delta.dag() @ k.kron(k)
    certs = {
        "comultiplication_factors": (d.delta @ k).equals(k.kron(k) @ phi, d.eps),
        "multiplication_factors": (d.delta.dag() @ k.kron(k)).equals(k @ psi, d.eps),
        "psi_is_phi_dagger": psi.equals(phi.dag(), d.eps),
    }
    return CSKernel(K, verdict, k, certs)


__all__ = [
    "CSKernel",
    "CSMorphismCheck",
    "CopyabilityVerdict",
    "CopyableFamily",
    "NotCopyableError",
    "Restriction",
    "check_cs_morphism",
    "copyable_lattice",
    "cs_kernel",
    "is_copyable_endo",
    "is_copyable_kernel",
    "restrict_delta",
    "subset_sum_projections",
    "verify_classical_structure",
]
