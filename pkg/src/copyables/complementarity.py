"""Partial complementarity, unbiasedness and complete complementarity."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .copyability import copyable_lattice, is_copyable_kernel
from .fdhilb import Projection
from .lattice import KSubLattice, atoms, sublattice_closure
from .matrix import Matrix, rank


class UnbiasedScope(enum.Enum):
    """Which copyable kernels the unbiasedness quantifier ranges over."""

    ATOMS = "atoms"
    NONZERO = "nonzero"
    NONTRIVIAL = "nontrivial"
    ALL = "all"


class JointlyEpic(enum.Enum):
    INFO_COMPLETE = "info-complete"
    LATTICE_GEN = "lattice-gen"


def _aligned(*ds):
    """Structures on a common backend (approx if any member is approx)."""
    models = {d.model for d in ds}
    if len(models) > 1:
        raise TypeError("structures come from different models")
    dims = {d.dim for d in ds}
    if len(dims) > 1:
        raise ValueError(f"structures live on different objects: dims {sorted(dims)}")
    if models == {"hilb"} and len({d.backend for d in ds}) > 1:
        return [d.to_approx() for d in ds]
    return list(ds)


def _trivial(x):
    return x.is_zero() or x.is_top()


@dataclass
class ComplementarityReport:
    partially_complementary: bool
    intersection: KSubLattice
    mutually_unbiased: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    paths_agree: bool = True

    def to_json(self):
        from .serialize import ksub_to_json

        return {
            "partially_complementary": self.partially_complementary,
            "intersection": [ksub_to_json(x) for x in self.intersection],
            "mutually_unbiased": {k.value: v for k, v in self.mutually_unbiased.items()},
            "witnesses": [ksub_to_json(x) for x in self.witnesses],
            "paths_agree": self.paths_agree,
        }


def partially_complementary(d1, d2, scopes=()):
    """No nontrivial kernel is copyable along both structures.

    Decided twice: by intersecting the two copyable lattices, and by
    re-testing each nontrivial copyable of one structure against the other.
    ``paths_agree`` records that both routes concur.
    """
    d1, d2 = _aligned(d1, d2)
    l1 = copyable_lattice(d1).lattice
    l2 = copyable_lattice(d2).lattice
    shared = [x for x in l1 if x in l2]
    by_set = all(_trivial(x) for x in shared)
    cross = [x for x in l1 if not _trivial(x) and is_copyable_kernel(x, d2).copyable]
    cross += [x for x in l2 if not _trivial(x) and is_copyable_kernel(x, d1).copyable]
    by_pairs = not cross
    witnesses = [x for x in shared if not _trivial(x)]
    report = ComplementarityReport(
        by_set, KSubLattice(shared), witnesses=witnesses, paths_agree=by_set == by_pairs
    )
    for s in scopes:
        report.mutually_unbiased[UnbiasedScope(s)] = mutually_unbiased(d1, d2, s)
    return report


def _scoped(lat, scope):
    scope = UnbiasedScope(scope)
    if scope is UnbiasedScope.ATOMS:
        return atoms(lat)
    if scope is UnbiasedScope.NONZERO:
        return [x for x in lat if not x.is_zero()]
    if scope is UnbiasedScope.NONTRIVIAL:
        return [x for x in lat if not _trivial(x)]
    return list(lat)


def _bias_form(x, l):
    """P(x^dag l) up to unitary equivalence.

    For a vector or map x this is x^dag P_l x.  For a kernel given by its
    projection P_x the inclusion k satisfies k k^dag = P_x, and
    k^dag P_l k = k^dag P_l' k  iff  P_x P_l P_x = P_x P_l' P_x.
    """
    pl = l.p
    if isinstance(x, Projection):
        px = x.p
        if px.backend != pl.backend:
            px, pl = px.to_approx(), pl.to_approx()
        return px @ pl @ px
    if x.backend != pl.backend:
        x, pl = x.to_approx(), pl.to_approx()
    return x.dag() @ pl @ x


def unbiased_witness(x, d, scope=UnbiasedScope.ATOMS, lattice=None):
    """None if x is unbiased relative to d, else a pair (k, l) of differing kernels."""
    if d.model != "hilb":
        raise TypeError("unbiasedness is implemented for Hilbert-space structures")
    lat = lattice if lattice is not None else copyable_lattice(d).lattice
    ks = _scoped(lat, scope)
    if not ks:
        return None
    first = _bias_form(x, ks[0])
    for k in ks[1:]:
        if not _bias_form(x, k).equals(first, d.eps):
            return (ks[0], k)
    return None


def is_unbiased(x, d, scope=UnbiasedScope.ATOMS):
    return unbiased_witness(x, d, scope) is None


def mutually_unbiased(d1, d2, scope=UnbiasedScope.ATOMS):
    """Nontrivial copyables of each structure are unbiased relative to the other."""
    d1, d2 = _aligned(d1, d2)
    l1 = copyable_lattice(d1).lattice
    l2 = copyable_lattice(d2).lattice
    for here, there, d_there in ((l1, l2, d2), (l2, l1, d1)):
        for k in here:
            if _trivial(k):
                continue
            if unbiased_witness(k, d_there, scope, there) is not None:
                return False
    return True


@dataclass
class ImplicationAudit:
    mutually_unbiased: bool
    partially_complementary: bool

    @property
    def alarm(self):
        """Set when mutual unbiasedness holds without partial complementarity."""
        return self.mutually_unbiased and not self.partially_complementary


def mu_implies_pc_audit(d1, d2, scope=UnbiasedScope.ATOMS):
    mu = mutually_unbiased(d1, d2, scope)
    pc = partially_complementary(d1, d2).partially_complementary
    return ImplicationAudit(mu, pc)


@dataclass
class CompleteComplementarity:
    interpretation: JointlyEpic
    pairwise: bool
    jointly_epic: bool
    failing_pairs: list
    detail: dict

    @property
    def completely_complementary(self):
        return self.pairwise and self.jointly_epic


def _real_coordinates(p):
    if p.exact:
        row = [x.real for x in p.a.flat] + [x.imag for x in p.a.flat]
    else:
        row = list(p.a.real.flat) + list(p.a.imag.flat)
    return row


def completely_complementary(ds, interpretation):
    """Pairwise partial complementarity plus a chosen reading of "jointly epic".

    ``interpretation`` is mandatory:

    * ``INFO_COMPLETE`` -- rank-one copyable projections of all members span
      the real space of self-adjoint operators (dimension d^2);
    * ``LATTICE_GEN`` -- the union of the copyable lattices generates the
      same finite sublattice as all members' atoms.
    """
    interpretation = JointlyEpic(interpretation)
    ds = list(ds)
    if not ds:
        raise ValueError("empty family of classical structures")
    ds = _aligned(*ds)
    fails = [
        (i, j)
        for i, j in combinations(range(len(ds)), 2)
        if not partially_complementary(ds[i], ds[j]).partially_complementary
    ]
    lats = [copyable_lattice(d).lattice for d in ds]
    n = ds[0].dim
    if interpretation is JointlyEpic.INFO_COMPLETE:
        if ds[0].model != "hilb":
            raise TypeError("the informational reading needs Hilbert-space structures")
        ones = [x for lat in lats for x in lat if x.rank == 1]
        rows = [_real_coordinates(x.p) for x in ones]
        if not rows:
            r = 0
        elif ds[0].backend == "exact":
            r = rank(Matrix(rows))
        else:
            r = rank(Matrix(np.array(rows, dtype=float).astype(complex)), ds[0].eps)
        epic = r == n * n
        detail = {"rank_one_projections": len(ones), "real_span": r, "needed": n * n}
    else:
        union = [x for lat in lats for x in lat]
        all_atoms = [x for lat in lats for x in atoms(lat)]
        gen = sublattice_closure(union)
        from_atoms = sublattice_closure(all_atoms, top=union[0].top())
        epic = len(gen) == len(from_atoms) and all(x in from_atoms for x in gen)
        detail = {"generated": len(gen), "from_atoms": len(from_atoms)}
    return CompleteComplementarity(interpretation, not fails, epic, fails, detail)
