"""Finite-dimensional matrix *-algebras and their projection lattices.

Algebras are stored as spans of d x d matrices.  Spans are kept in reduced
row echelon form of their row-major vectorizations, so membership tests are
a single reduction and equal spans have equal bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .copyability import check_cs_morphism, copyable_lattice, is_copyable_kernel
from .fdhilb import NoInclusionError, OrthonormalBasis, Projection, inclusion, make_delta
from .lattice import KSubLattice, is_boolean, sublattice_closure
from .matrix import (
    APPROX,
    DEFAULT_EPS,
    EXACT,
    Matrix,
    null_space,
    range_projection,
    rank,
    same_backend,
)


class NotAnAlgebra(ValueError):
    pass


class NotBoolean(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class UnsupportedAlgebra(ValueError):
    """Projection extraction needs projection provenance."""


def _vec(m):
    return m.a.reshape(1, -1)


def _unvec(row, dim, backend):
    return Matrix(np.asarray(row, dtype=object).reshape(dim, dim), backend)


class _Span:
    """Row-reduced basis of a subspace of M_d."""

    def __init__(self, dim, backend, eps=DEFAULT_EPS):
        self.dim, self.backend, self.eps = dim, backend, eps
        self.rows = []
        self.pivots = []

    def reduce(self, v):
        v = np.array(v, dtype=object if self.backend == EXACT else complex).reshape(-1)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = v - c * row
        return v

    def _is_zero(self, v):
        if self.backend == EXACT:
            return not any(bool(x) for x in v)
        return float(np.max(np.abs(v))) <= self.eps if v.size else True

    def contains(self, m):
        return self._is_zero(self.reduce(_vec(m)))

    def add(self, m):
        v = self.reduce(_vec(m))
        if self._is_zero(v):
            return False
        if self.backend == APPROX:
            v[np.abs(v) <= self.eps] = 0
            p = int(np.argmax(np.abs(v)))
        else:
            p = next(i for i, x in enumerate(v) if x)
        v = v / v[p]
        for i, row in enumerate(self.rows):
            c = row[p]
            if c:
                self.rows[i] = row - c * v
        self.rows.append(v)
        self.pivots.append(p)
        order = np.argsort(self.pivots)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def matrices(self):
        return [_unvec(r, self.dim, self.backend) for r in self.rows]


class MatrixAlgebra:
    """Unital *-closed, multiplication-closed span of d x d matrices.

    The three closure properties are certified on construction.
    ``provenance`` optionally records commuting projections generating the
    algebra, which :func:`boolean_from_algebra` needs.
    """

    def __init__(self, dim, span, provenance=None, eps=DEFAULT_EPS):
        span = list(span)
        backend = span[0].backend if span else EXACT
        s = _Span(dim, backend, eps)
        for m in span:
            if m.shape != (dim, dim):
                raise NotAnAlgebra(f"expected {dim} x {dim} matrices")
            s.add(m)
        self.dim, self.backend, self.eps = dim, backend, eps
        self._span = s
        self.basis = tuple(s.matrices())
        self.provenance = tuple(provenance) if provenance is not None else None
        if not s.contains(Matrix.identity(dim, backend)):
            raise NotAnAlgebra("span does not contain the identity")
        if not all(s.contains(b.dag()) for b in self.basis):
            raise NotAnAlgebra("span is not closed under adjoints")
        if not all(s.contains(a @ b) for a in self.basis for b in self.basis):
            raise NotAnAlgebra("span is not closed under multiplication")

    @property
    def span_dim(self):
        return len(self.basis)

    def __len__(self):
        return self.span_dim

    def contains(self, m):
        if m.backend != self.backend:
            m = m.to_approx()
            if self.backend != APPROX:
                return self.to_approx().contains(m)
        return self._span.contains(m)

    def to_approx(self):
        if self.backend == APPROX:
            return self
        prov = [p.to_approx() for p in self.provenance] if self.provenance else None
        return MatrixAlgebra(self.dim, [b.to_approx() for b in self.basis], prov, self.eps)

    def same_span(self, other):
        a, b = (self, other) if self.backend == other.backend else (self.to_approx(), other.to_approx())
        return a.span_dim == b.span_dim and all(a.contains(m) for m in b.basis)

    def __repr__(self):
        return f"MatrixAlgebra(M_{self.dim}, span dim {self.span_dim}, {self.backend})"


def scalars(dim, backend=EXACT):
    return MatrixAlgebra(dim, [Matrix.identity(dim, backend)])


def full_algebra(dim, backend=EXACT):
    units = [
        Matrix.unit_vector(dim, i, backend) @ Matrix.unit_vector(dim, j, backend).dag()
        for i in range(dim)
        for j in range(dim)
    ]
    return MatrixAlgebra(dim, units)


def algebra_closure(gens, dim=None, backend=None, provenance=None, eps=DEFAULT_EPS):
    """Smallest unital *-subalgebra containing ``gens``."""
    gens = list(gens)
    if gens:
        gens = same_backend(*gens)
        dim = gens[0].rows
        backend = gens[0].backend
    elif dim is None:
        raise ValueError("closure of no generators needs a dimension")
    backend = backend or EXACT
    s = _Span(dim, backend, eps)
    s.add(Matrix.identity(dim, backend))
    for g in gens:
        s.add(g)
        s.add(g.dag())
    grown = True
    while grown:
        grown = False
        mats = s.matrices()
        for a in mats:
            for b in mats:
                if s.add(a @ b):
                    grown = True
    return MatrixAlgebra(dim, s.matrices(), provenance, eps)


def commutant(alg):
    """All matrices commuting with every element of the algebra."""
    d, backend = alg.dim, alg.backend
    ident = Matrix.identity(d, backend)
    blocks = [(ident.kron(Matrix(b.a.T, backend)) - b.kron(ident)).a for b in alg.basis]
    system = Matrix(np.vstack(blocks), backend)
    ns = null_space(system, alg.eps)
    return MatrixAlgebra(d, [_unvec(ns.a[:, k], d, backend) for k in range(ns.cols)], eps=alg.eps)


def is_commutative(alg):
    return all((a @ b).equals(b @ a, alg.eps) for a, b in combinations(alg.basis, 2))


def algebra_from_boolean(lat):
    """B'' for a Boolean lattice of projections."""
    ok, witness = is_boolean(lat)
    if not ok:
        raise NotBoolean("lattice is not Boolean", witness)
    projs = [x for x in lat if isinstance(x, Projection)]
    if len(projs) != len(lat):
        raise TypeError("algebras are built from Hilbert-space projections")
    alg = algebra_closure([p.p for p in projs], provenance=projs, eps=projs[0].eps)
    if not is_commutative(alg):
        raise NotAnAlgebra("generated algebra is not commutative")
    return alg


def boolean_from_algebra(alg):
    """Proj(C) for a commutative algebra carrying projection provenance."""
    if not is_commutative(alg):
        raise NotAnAlgebra("algebra is not commutative")
    if alg.provenance is None:
        raise UnsupportedAlgebra("no projection provenance; spectral extraction is not supported")
    for p in alg.provenance:
        if not alg.contains(p.p):
            raise NotAnAlgebra("provenance projection lies outside the algebra")
    top = Projection.top_of(alg.dim, alg.backend)
    lat = sublattice_closure(alg.provenance, top=top)
    for x in lat:
        if not alg.contains(x.p):
            raise NotAnAlgebra("lattice element lies outside the algebra")
    ok, witness = is_boolean(lat)
    if not ok:
        raise NotBoolean("projection lattice is not Boolean", witness)
    return lat


def round_trip_check(obj):
    """Proj(B'') == B for lattices, Proj(C)'' == C for algebras."""
    if isinstance(obj, KSubLattice):
        back = boolean_from_algebra(algebra_from_boolean(obj))
        return len(back) == len(obj) and all(x in obj for x in back)
    back = algebra_from_boolean(boolean_from_algebra(obj))
    return back.same_span(obj)


def intersection_dim(a, b):
    if a.backend != b.backend:
        a, b = a.to_approx(), b.to_approx()
    stacked = Matrix(np.vstack([_vec(m) for m in a.basis + b.basis]), a.backend)
    return a.span_dim + b.span_dim - rank(stacked, a.eps)


def pc_algebras(a, b):
    """Intersection is exactly the scalars."""
    if a.dim != b.dim:
        raise ValueError("algebras act on different spaces")
    return intersection_dim(a, b) == 1


def structure_algebra(d):
    """Commutative algebra spanned by the copyable projections of ``d``."""
    return algebra_from_boolean(copyable_lattice(d).lattice)


# ---------------------------------------------------------------------------
# Families of disjoint kernels


class ProjectionFamily:
    def __init__(self, projections):
        self.projections = tuple(projections)
        if not self.projections:
            raise ValueError("empty family")
        dims = {p.dim for p in self.projections}
        if len(dims) != 1:
            raise ValueError("projections act on different spaces")

    @property
    def dim(self):
        return self.projections[0].dim

    @property
    def pairwise_disjoint(self):
        return all(p.meet(q).is_zero() for p, q in combinations(self.projections, 2))

    def __iter__(self):
        return iter(self.projections)

    def __len__(self):
        return len(self.projections)


@dataclass
class FamilyReport:
    accepted: bool
    reason: str = ""
    witness: tuple | None = None
    delta: object = None
    algebra: MatrixAlgebra | None = None
    copyable: list = field(default_factory=list)


def _orthonormal_range(P):
    try:
        return inclusion(P, allow_approx=False)
    except NoInclusionError:
        return inclusion(P.to_approx())


def fdcaker_family_check(family):
    """Accept pairwise disjoint nonzero kernels copyable along a common structure.

    Builds the common structure explicitly: an orthonormal basis of each
    member's range, completed on the joint orthocomplement.
    """
    fam = family if isinstance(family, ProjectionFamily) else ProjectionFamily(family)
    ps = list(fam)
    for p in ps:
        if p.is_zero():
            return FamilyReport(False, "zero member", (p,))
    for p, q in combinations(ps, 2):
        if not p.meet(q).is_zero():
            return FamilyReport(False, "members have nonzero meet", (p, q))
    for p, q in combinations(ps, 2):
        if not p.is_orthogonal(q):
            return FamilyReport(
                False, "disjoint but not orthogonal: no common classical structure", (p, q)
            )
    n = fam.dim
    rest = Projection(Matrix.identity(n, ps[0].backend), check=False)
    for p in ps:
        rest = Projection(rest.p - p.p, check=False)
    parts = sorted(ps, key=lambda p: p.sort_key())
    if not rest.is_zero():
        parts.append(rest)
    blocks = [_orthonormal_range(p) for p in parts]
    blocks = same_backend(*blocks)
    vectors = [c for b in blocks for c in b.columns()]
    basis = OrthonormalBasis(vectors)
    delta = make_delta(basis, name="refined basis")
    verdicts = [is_copyable_kernel(p if p.backend == basis.backend else p.to_approx(), delta) for p in ps]
    if not all(v.copyable for v in verdicts):
        return FamilyReport(False, "constructed structure does not copy every member", None, delta)
    alg = algebra_closure([p.p for p in parts], provenance=parts)
    return FamilyReport(True, "", None, delta, alg, verdicts)


# ---------------------------------------------------------------------------
# Cocones of classical substructures


@dataclass
class CoconeReport:
    accepted: bool
    bad_embeddings: list
    overlapping_pairs: list


def _image(f, q):
    return Projection(range_projection(f @ q.p), check=False)


def fdca_cocone_check(items, target):
    """Each (structure, embedding) must be a CS-morphism into ``target``, and
    the copyables of distinct structures may only meet in trivial kernels of
    the target once pushed forward along their embeddings."""
    bad, images = [], []
    for i, (d, f) in enumerate(items):
        if not check_cs_morphism(f, d, target).ok:
            bad.append(i)
            continue
        if f.backend != d.backend:
            d = d.to_approx()
        imgs = [_image(f, q) for q in copyable_lattice(d).lattice]
        images.append((i, imgs))
    overlap = []
    if not bad:
        for (i, a), (j, b) in combinations(images, 2):
            if a[0].backend != b[0].backend:
                a, b = [x.to_approx() for x in a], [x.to_approx() for x in b]
            shared = [x for x in a if any(x.same(y) for y in b)]
            if any(not (x.is_zero() or x.is_top()) for x in shared):
                overlap.append((i, j))
    return CoconeReport(not bad and not overlap, bad, overlap)


__all__ = [
    "CoconeReport",
    "FamilyReport",
    "MatrixAlgebra",
    "NotAnAlgebra",
    "NotBoolean",
    "ProjectionFamily",
    "UnsupportedAlgebra",
    "algebra_closure",
    "algebra_from_boolean",
    "boolean_from_algebra",
    "commutant",
    "fdca_cocone_check",
    "fdcaker_family_check",
    "full_algebra",
    "intersection_dim",
    "is_commutative",
    "pc_algebras",
    "round_trip_check",
    "scalars",
    "structure_algebra",
]
