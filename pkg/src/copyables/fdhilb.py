"""Finite-dimensional Hilbert spaces as a dagger kernel category.

Kernel subobjects are represented by orthogonal projections (they stay
rational where inclusion isometries would need square roots).  Classical
structures are copying maps ``delta: X -> X (x) X`` of orthonormal bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .matrix import (
    APPROX,
    DEFAULT_EPS,
    EXACT,
    I,
    BackendError,
    Matrix,
    ShapeError,
    column_basis,
    format_exact,
    is_projection,
    null_space_projection,
    rational_sqrt,
    solve,
)


class NotAProjection(ValueError):
    pass


class NoInclusionError(ValueError):
    """No dagger-monic inclusion could be built on the requested backend."""


# ---------------------------------------------------------------------------
# Kernel subobjects


class Projection:
    """Kernel subobject of C^dim, stored as a self-adjoint idempotent."""

    __slots__ = ("p", "eps", "_rank")

    def __init__(self, p, eps=DEFAULT_EPS, check=True):
        if not isinstance(p, Matrix):
            p = Matrix(p)
        if check and not is_projection(p, eps):
            raise NotAProjection("matrix is not a self-adjoint idempotent")
        self.p = p
        self.eps = eps
        self._rank = None

    @classmethod
    def onto(cls, vectors, eps=DEFAULT_EPS):
        """Projection onto the span of the given column vectors."""
        from .matrix import range_projection

        if isinstance(vectors, Matrix):
            m = vectors
        else:
            vs = [v if isinstance(v, Matrix) else Matrix(v) for v in vectors]
            m = Matrix(np.hstack([v.a for v in vs]), vs[0].backend)
        return cls(range_projection(m, eps), eps, check=False)

    @classmethod
    def zero_of(cls, dim, backend=EXACT):
        return cls(Matrix.zeros(dim, dim, backend), check=False)

    @classmethod
    def top_of(cls, dim, backend=EXACT):
        return cls(Matrix.identity(dim, backend), check=False)

    @property
    def dim(self):
        return self.p.rows

    @property
    def backend(self):
        return self.p.backend

    @property
    def exact(self):
        return self.p.exact

    @property
    def ambient(self):
        return ("hilb", self.dim)

    @property
    def rank(self):
        if self._rank is None:
            t = self.p.trace()
            self._rank = int(t) if self.exact else int(round(t.real))
        return self._rank

    def _same_space(self, other):
        if not isinstance(other, Projection):
            raise TypeError(f"cannot compare a projection with {type(other).__name__}")
        if other.dim != self.dim:
            raise ShapeError(f"projections on C^{self.dim} and C^{other.dim}")

    def zero(self):
        return Projection(self.p.zeros_like(self.dim, self.dim), self.eps, check=False)

    def top(self):
        return Projection(self.p.identity_like(self.dim), self.eps, check=False)

    def is_zero(self):
        return self.p.is_zero(self.eps)

    def is_top(self):
        return self.p.equals(self.p.identity_like(self.dim), self.eps)

    def same(self, other):
        self._same_space(other)
        return self.p.equals(other.p, self.eps)

    def key(self):
        return self.p.key() if self.exact else None

    def leq(self, other):
        self._same_space(other)
        return (other.p @ self.p).equals(self.p, self.eps)

    def ortho(self):
        return Projection(self.p.identity_like(self.dim) - self.p, self.eps, check=False)

    def meet(self, other):
        self._same_space(other)
        stacked = Matrix(np.vstack([self.ortho().p.a, other.ortho().p.a]), self.backend)
        return Projection(null_space_projection(stacked, self.eps), self.eps, check=False)

    def join(self, other):
        return self.ortho().meet(other.ortho()).ortho()

    def is_orthogonal(self, other):
        """l^dag . k = 0, i.e. P_other P_self = 0."""
        self._same_space(other)
        return (other.p @ self.p).is_zero(self.eps)

    def to_approx(self):
        return Projection(self.p.to_approx(), self.eps, check=False)

    def kron(self, other):
        return Projection(self.p.kron(other.p), self.eps, check=False)

    def sort_key(self):
        if self.exact:
            enc = tuple(format_exact(x) for x in self.p.a.flat)
        else:
            enc = tuple(f"{x.real:.6f},{x.imag:.6f}" for x in np.round(self.p.a, 6).flat)
        return (self.rank, enc)

    def label(self):
        if self.is_zero():
            return "0"
        if self.is_top():
            return "1"
        if self.exact:
            rows = ["[" + " ".join(format_exact(x) for x in row) + "]" for row in self.p.a]
        else:
            rows = [
                "[" + " ".join(_short(x) for x in row) + "]" for row in self.p.a
            ]
        return "".join(rows)

    def __repr__(self):
        return f"Projection(rank={self.rank}, {self.label()})"


def _short(z):
    z = complex(z)
    re, im = round(z.real, 4) + 0.0, round(z.imag, 4) + 0.0
    if im == 0:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"


def kernel(f, eps=DEFAULT_EPS):
    return Projection(null_space_projection(f, eps), eps, check=False)


def cokernel(f, eps=DEFAULT_EPS):
    """ker(f^dag), as a subobject of the codomain of f."""
    return kernel(f.dag(), eps)


def ortho(P):
    return P.ortho()


# ---------------------------------------------------------------------------
# Bases and classical structures


class OrthonormalBasis:
    """Orthonormal basis of C^dim, checked on construction."""

    def __init__(self, vectors, eps=DEFAULT_EPS):
        vs = [v if isinstance(v, Matrix) else Matrix(np.asarray(v, dtype=object).reshape(-1, 1)) for v in vectors]
        if not vs:
            raise ValueError("empty basis")
        dim = vs[0].rows
        backends = {v.backend for v in vs}
        if len(backends) != 1:
            raise BackendError("basis vectors mix backends")
        if any(v.shape != (dim, 1) for v in vs) or len(vs) != dim:
            raise ShapeError(f"need {dim} column vectors of length {dim}")
        self.vectors = tuple(vs)
        self.eps = eps
        u = self.unitary()
        if not (u.dag() @ u).equals(u.identity_like(dim), eps):
            raise ValueError("vectors are not orthonormal")

    @classmethod
    def from_unitary(cls, u, eps=DEFAULT_EPS):
        return cls(u.columns(), eps)

    @property
    def dim(self):
        return self.vectors[0].rows

    @property
    def backend(self):
        return self.vectors[0].backend

    def unitary(self):
        return Matrix(np.hstack([v.a for v in self.vectors]), self.vectors[0].backend)

    def rank_one_projections(self):
        return [Projection(v @ v.dag(), self.eps, check=False) for v in self.vectors]

    def to_approx(self):
        return OrthonormalBasis([v.to_approx() for v in self.vectors], self.eps)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"OrthonormalBasis(dim={self.dim}, backend={self.backend!r})"


@dataclass(frozen=True, eq=False)
class ClassicalStructure:
    """A candidate classical structure ``delta: X -> X (x) X``.

    ``delta`` is a :class:`Matrix` (Hilbert spaces) or a
    :class:`~copyables.finrel.Relation` (sets and relations).  The optional
    ``basis`` / ``groupoid`` record where the structure came from and supply
    the involution for the H*-axiom.  Nothing is verified on construction;
    use :func:`verify_classical_structure`.
    """

    delta: object
    basis: OrthonormalBasis | None = None
    groupoid: object = None
    eps: float = DEFAULT_EPS
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.delta.cols
        if self.delta.rows != n * n:
            raise ShapeError(f"delta must be dim^2 x dim, got {self.delta.shape}")
        if self.basis is not None and self.basis.dim != n:
            raise ShapeError("basis dimension differs from delta")

    @classmethod
    def from_groupoid(cls, g, name=""):
        from .finrel import groupoid_delta

        return cls(groupoid_delta(g), groupoid=g, name=name)

    @property
    def dim(self):
        return self.delta.cols

    @property
    def model(self):
        return "hilb" if isinstance(self.delta, Matrix) else "rel"

    @property
    def backend(self):
        return getattr(self.delta, "backend", None)

    def identity(self, n=None):
        return self.delta.identity_like(self.dim if n is None else n)

    def to_approx(self):
        if self.model != "hilb" or self.backend == APPROX:
            return self
        basis = self.basis.to_approx() if self.basis is not None else None
        return ClassicalStructure(self.delta.to_approx(), basis, None, self.eps, self.name)

    def points(self):
        """Finitely many points I -> X on which the H*-axiom is tested."""
        n = self.dim
        if self.model == "hilb":
            es = [Matrix.unit_vector(n, j, self.backend) for j in range(n)]
            phase = I if self.backend == EXACT else 1j
            return es + [e.scale(phase) for e in es]
        from .finrel import Relation

        if n <= 8:
            return [Relation.point(n, s) for s in range(1 << n)]
        return [Relation.point(n, 1 << j) for j in range(n)] + [Relation.point(n, 0)]

    def star(self, x):
        """The involution on points; None if no solution exists."""
        if self.model == "hilb":
            if self.basis is not None:
                u = self.basis.unitary()
                return u @ Matrix((u.dag() @ x).a.conj(), x.backend)
            return _solve_star_hilb(self, x)
        if self.groupoid is not None:
            from .finrel import Relation

            inv = self.groupoid.inverse
            mask = 0
            for g in range(self.dim):
                if x.m[g, 0]:
                    mask |= 1 << inv(g)
            return Relation.point(self.dim, mask)
        return _solve_star_rel(self, x)

    def __repr__(self):
        label = self.name or f"{self.model} dim {self.dim}"
        return f"ClassicalStructure({label})"


def _hstar_sides(d, x, xstar):
    idx = d.identity()
    lhs = d.delta.dag() @ xstar.kron(idx)
    rhs = x.dag().kron(idx) @ d.delta
    return lhs, rhs


def _solve_star_hilb(d, x):
    n = d.dim
    idx = d.identity()
    cols = []
    for i in range(n):
        e = Matrix.unit_vector(n, i, d.backend)
        cols.append((d.delta.dag() @ e.kron(idx)).a.reshape(-1, 1))
    a = Matrix(np.hstack(cols), d.backend)
    b = x.dag().kron(idx) @ d.delta
    return solve(a, Matrix(b.a.reshape(-1, 1), d.backend), d.eps)


def _solve_star_rel(d, x):
    from .finrel import Relation

    for mask in range(1 << d.dim):
        y = Relation.point(d.dim, mask)
        lhs, rhs = _hstar_sides(d, x, y)
        if lhs.equals(rhs):
            return y
    return None


def computational_basis(n, backend=EXACT):
    return OrthonormalBasis(Matrix.identity(n, backend).columns())


def copier(n, backend=EXACT):
    """e_i -> e_i (x) e_i."""
    m = Matrix.zeros(n * n, n, backend).a.copy()
    for i in range(n):
        m[i * n + i, i] = Fraction(1) if backend == EXACT else 1.0
    return Matrix(m, backend)


def make_delta(basis, name=""):
    """Classical structure copying the given orthonormal basis."""
    if not isinstance(basis, OrthonormalBasis):
        basis = OrthonormalBasis(basis)
    u = basis.unitary()
    delta = u.kron(u) @ copier(basis.dim, basis.backend) @ u.dag()
    return ClassicalStructure(delta, basis, eps=basis.eps, name=name)


@dataclass
class AxiomReport:
    """Pass/fail per classical-structure axiom.

    ``frobenius`` is informational and does not enter :attr:`ok`.
    """

    dagger_monic: bool
    commutative: bool
    associative: bool
    hstar: bool
    frobenius: bool
    details: dict = field(default_factory=dict)

    REQUIRED = ("dagger_monic", "commutative", "associative", "hstar")

    @property
    def ok(self):
        return all(getattr(self, k) for k in self.REQUIRED)

    def failed(self):
        return [k for k in self.REQUIRED if not getattr(self, k)]

    def as_dict(self):
        return {
            "dagger_monic": self.dagger_monic,
            "commutative": self.commutative,
            "associative": self.associative,
            "hstar": self.hstar,
            "frobenius": self.frobenius,
            "ok": self.ok,
        }


def _swap_for(d):
    if d.model == "hilb":
        return Matrix.swap(d.dim, d.backend)
    from .finrel import Relation

    return Relation.swap(d.dim)


def verify_classical_structure(d):
    """Check every classical-structure axiom of ``d`` (either model)."""
    delta, eps = d.delta, d.eps
    idx = d.identity()
    dd = delta.dag()
    dagger_monic = (dd @ delta).equals(idx, eps)
    commutative = (_swap_for(d) @ delta).equals(delta, eps)
    associative = (delta.kron(idx) @ delta).equals(idx.kron(delta) @ delta, eps)
    frobenius = (dd.kron(idx) @ idx.kron(delta)).equals(delta @ dd, eps)
    hstar = True
    bad = None
    for x in d.points():
        xs = d.star(x)
        if xs is None or not verify_hstar(x, d, xs):
            hstar, bad = False, x
            break
        back = d.star(xs)
        if back is None or not back.equals(x, eps):
            hstar, bad = False, x
            break
    return AxiomReport(
        dagger_monic, commutative, associative, hstar, frobenius,
        details={"hstar_counterexample": bad},
    )


def involution(x, d):
    """x* for the point x; raises if the H*-axiom admits no solution."""
    xs = d.star(x)
    if xs is None:
        raise ValueError("no involution solves the H*-axiom for this point")
    return xs


def verify_hstar(x, d, xstar=None):
    """delta^dag (x* (x) id) == (x^dag (x) id) delta, with x* supplied or derived."""
    if xstar is None:
        xstar = d.star(x)
        if xstar is None:
            return False
    lhs, rhs = _hstar_sides(d, x, xstar)
    return lhs.equals(rhs, d.eps)


def vector_copyable_phase(x, d):
    """The phase z with delta(x) = z (x (x) x), or None when x is not copied."""
    eps = d.eps
    norm2 = (x.dag() @ x)[0, 0]
    if x.exact:
        if norm2 != 1:
            raise ValueError("vector is not a unit vector")
    elif abs(norm2 - 1) > eps:
        raise ValueError("vector is not a unit vector")
    dx = d.delta @ x
    xx = x.kron(x)
    z = (xx.dag() @ dx)[0, 0]
    if not dx.equals(xx.scale(z), eps):
        return None
    return z


# ---------------------------------------------------------------------------
# Inclusions


def _rational_orthonormal(cols):
    """Exact Gram-Schmidt; None when some norm is irrational."""
    ortho = []
    for v in cols:
        u = v
        for w in ortho:
            u = u - w.scale((w.dag() @ v)[0, 0])
        n2 = (u.dag() @ u)[0, 0]
        if not n2:
            continue
        r = rational_sqrt(n2)
        if r is None:
            return None
        ortho.append(u.scale(1 / r))
    return ortho


def inclusion(P, basis=None, allow_approx=True):
    """Dagger-monic k with k k^dag = P.

    Prefers vectors of ``basis`` lying in range(P), then an exact
    Gram-Schmidt; otherwise falls back to the approximate backend.
    """
    n, r = P.dim, P.rank
    if r == 0:
        return P.p.zeros_like(n, 0)
    candidates = []
    if basis is not None and basis.backend == P.backend:
        candidates.append([v for v in basis if (P.p @ v).equals(v, P.eps)])
    if P.exact:
        units = [Matrix.unit_vector(n, j) for j in range(n)]
        inside = [e for e in units if (P.p @ e).equals(e)]
        cols = inside + column_basis(P.p).columns()
        found = _rational_orthonormal(cols)
        if found is not None:
            candidates.append(found[:r])
    for vs in candidates:
        if len(vs) == r:
            return Matrix(np.hstack([v.a for v in vs]), P.backend)
    if P.exact and not allow_approx:
        raise NoInclusionError("range has no rational orthonormal basis")
    q, _ = np.linalg.qr(column_basis(P.p.to_approx(), P.eps).a)
    return Matrix(q, APPROX)


def rank_one(v):
    """|v><v| / <v|v| as a Projection (rational for rational v)."""
    v = v if isinstance(v, Matrix) else Matrix(v)
    n2 = (v.dag() @ v)[0, 0]
    if v.exact:
        return Projection((v @ v.dag()).scale(1 / n2), check=False)
    return Projection((v @ v.dag()).scale(1 / n2.real), check=False)


__all__ = [
    "AxiomReport",
    "ClassicalStructure",
    "NoInclusionError",
    "NotAProjection",
    "OrthonormalBasis",
    "Projection",
    "cokernel",
    "computational_basis",
    "copier",
    "inclusion",
    "involution",
    "kernel",
    "make_delta",
    "ortho",
    "rank_one",
    "verify_classical_structure",
    "verify_hstar",
    "vector_copyable_phase",
]
