"""Exact and approximate complex matrices.

Two backends share one :class:`Matrix` type:

* ``"exact"`` -- entries are Gaussian rationals.  Purely real entries are
  stored as :class:`fractions.Fraction`, genuinely complex ones as
  :class:`Gaussian`.  Arithmetic is bit-exact.
* ``"approx"`` -- a ``complex128`` numpy array; comparisons use an absolute
  tolerance ``eps``.

Backends never mix.  Combining an exact and an approximate value raises
:class:`BackendError` instead of silently promoting.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

EXACT = "exact"
APPROX = "approx"
DEFAULT_EPS = 1e-9


class BackendError(TypeError):
    """Exact and approximate data were combined."""


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals


def _rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise BackendError(f"not an exact rational: {x!r}")


def gauss(re_part, im_part=0):
    """Exact scalar re + im*i; returns a plain Fraction when im == 0."""
    re_part, im_part = _rat(re_part), _rat(im_part)
    if im_part == 0:
        return re_part
    return Gaussian(re_part, im_part)


class Gaussian:
    """Complex number with rational real and imaginary parts.

    Construct through :func:`gauss` so that real values collapse to
    ``Fraction``; arithmetic does this automatically.
    """

    __slots__ = ("real", "imag")

    def __init__(self, real, imag=0):
        self.real = _rat(real)
        self.imag = _rat(imag)

    @staticmethod
    def _parts(other):
        if isinstance(other, Gaussian):
            return other.real, other.imag
        if isinstance(other, (Fraction, int, np.integer)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        return gauss(self.real + p[0], self.imag + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        return gauss(self.real - p[0], self.imag - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        return gauss(p[0] - self.real, p[1] - self.imag)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        a, b = self.real, self.imag
        c, d = p
        return gauss(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        c, d = p
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        a, b = self.real, self.imag
        return gauss((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return _mixed(self, other)
        return Gaussian(*p) / self

    def __neg__(self):
        return gauss(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self):
        return gauss(self.real, -self.imag)

    def abs2(self):
        return self.real * self.real + self.imag * self.imag

    def __abs__(self):
        return float(self.abs2()) ** 0.5

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.real == p[0] and self.imag == p[1]

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"Gaussian({self.real}, {self.imag})"

    def __str__(self):
        return format_exact(self)


I = Gaussian(0, 1)


def _mixed(a, b):
    if isinstance(b, (float, complex, np.floating, np.complexfloating)):
        raise BackendError(f"cannot combine exact {a!r} with approximate {b!r}")
    return NotImplemented


def abs2(z):
    """|z|^2, exact for exact scalars."""
    if isinstance(z, Gaussian):
        return z.abs2()
    if isinstance(z, Fraction):
        return z * z
    return abs(z) ** 2


def is_exact_scalar(x):
    return isinstance(x, (Gaussian, Fraction)) or (
        isinstance(x, (int, np.integer)) and not isinstance(x, bool)
    )


def _term(q, unit=""):
    s = str(q)
    if unit and s in ("1", "-1"):
        s = s[:-1]
    return s + (" " + unit if unit and s not in ("", "-") else unit)


def format_exact(z):
    """Render an exact scalar as ``"a/b+c/d i"``."""
    if not isinstance(z, Gaussian):
        return str(_rat(z))
    if z.real == 0:
        return _term(z.imag, "i")
    im = _term(z.imag, "i")
    if not im.startswith("-"):
        im = "+" + im
    return f"{z.real}{im}"


_NUM = r"[+-]?\s*\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_NUM})(?=\s*(?:[+-]|$)))?\s*"
    rf"(?:(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*i)?\s*$"
)


def parse_exact(text):
    """Parse ``"a/b+c/d i"`` (either part omittable) into an exact scalar."""
    if not isinstance(text, str):
        return _rat(text)
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None) or not text.strip():
        raise ValueError(f"malformed exact scalar: {text!r}")
    re_s = (m.group("re") or "0").replace(" ", "")
    im_s = m.group("im")
    if im_s is None:
        im = Fraction(0)
    else:
        im_s = im_s.replace(" ", "")
        im = Fraction(im_s + "1") if im_s in ("", "+", "-") else Fraction(im_s)
    return gauss(Fraction(re_s), im)


# ---------------------------------------------------------------------------
# Matrices


def _as_exact(x):
    if isinstance(x, Gaussian):
        return gauss(x.real, x.imag)
    if isinstance(x, str):
        return parse_exact(x)
    return _rat(x)


class Matrix:
    """Immutable complex matrix on one backend.

    ``Matrix([[1, 0], [0, 1]])`` infers the exact backend from integer,
    Fraction or Gaussian entries; floats or complex entries give the
    approximate backend.  A mixture raises :class:`BackendError`.
    """

    __slots__ = ("a", "backend")

    def __init__(self, data, backend=None):
        if isinstance(data, Matrix):
            arr, inferred = data.a, data.backend
        else:
            arr = np.asarray(data, dtype=object)
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
            if arr.ndim != 2:
                raise ShapeError("matrix data must be two-dimensional")
            inferred = _infer_backend(arr)
        backend = backend or inferred
        if backend not in (EXACT, APPROX):
            raise ValueError(f"unknown backend {backend!r}")
        if backend == EXACT:
            if inferred == APPROX and arr.size:
                raise BackendError("approximate entries given to exact matrix")
            out = np.empty(arr.shape, dtype=object)
            for idx, x in np.ndenumerate(arr):
                out[idx] = _as_exact(x)
        else:
            out = np.array(arr, dtype=complex) if arr.size else np.zeros(arr.shape, complex)
        out.flags.writeable = False
        self.a = out
        self.backend = backend

    @classmethod
    def _wrap(cls, arr, backend):
        m = object.__new__(cls)
        arr.flags.writeable = False
        m.a = arr
        m.backend = backend
        return m

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls, n, backend=EXACT):
        if backend == EXACT:
            arr = np.full((n, n), Fraction(0), dtype=object)
            for i in range(n):
                arr[i, i] = Fraction(1)
            return cls._wrap(arr, EXACT)
        return cls._wrap(np.eye(n, dtype=complex), APPROX)

    @classmethod
    def zeros(cls, rows, cols, backend=EXACT):
        if backend == EXACT:
            return cls._wrap(np.full((rows, cols), Fraction(0), dtype=object), EXACT)
        return cls._wrap(np.zeros((rows, cols), dtype=complex), APPROX)

    @classmethod
    def unit_vector(cls, n, i, backend=EXACT):
        return cls.identity(n, backend).column(i)

    @classmethod
    def swap(cls, n, backend=EXACT):
        """Symmetry X (x) X -> X (x) X on C^n, sending e_i (x) e_j to e_j (x) e_i."""
        m = cls.zeros(n * n, n * n, backend).a.copy()
        for i in range(n):
            for j in range(n):
                m[j * n + i, i * n + j] = 1 if backend == APPROX else Fraction(1)
        return cls._wrap(m, backend)

    def identity_like(self, n):
        return Matrix.identity(n, self.backend)

    def zeros_like(self, rows, cols):
        return Matrix.zeros(rows, cols, self.backend)

    # shape ----------------------------------------------------------------
    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def exact(self):
        return self.backend == EXACT

    def __getitem__(self, idx):
        return self.a[idx]

    def column(self, j):
        return Matrix._wrap(self.a[:, j : j + 1].copy(), self.backend)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    # algebra ---------------------------------------------------------------
    def dag(self):
        return Matrix._wrap(self.a.T.conj(), self.backend)

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendError(f"backend mismatch: {self.backend} vs {other.backend}")

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        if self.exact:
            if self.cols == 0:
                return Matrix.zeros(self.rows, other.cols, EXACT)
            # Fraction-only sums come back as Fractions; ints only for empty sums
            return Matrix._wrap(self.a @ other.a, EXACT)
        return Matrix._wrap(self.a @ other.a, APPROX)

    def kron(self, other):
        self._check(other)
        if 0 in self.shape or 0 in other.shape:
            r, c = self.rows * other.rows, self.cols * other.cols
            return Matrix.zeros(r, c, self.backend)
        return Matrix._wrap(np.kron(self.a, other.a), self.backend)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.a + other.a, self.backend)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap(self.a - other.a, self.backend)

    def __neg__(self):
        return Matrix._wrap(-self.a, self.backend)

    def scale(self, z):
        if self.exact:
            if not is_exact_scalar(z):
                raise BackendError(f"cannot scale exact matrix by {z!r}")
            z = _as_exact(z)
            return Matrix._wrap(self.a * z if self.a.size else self.a.copy(), EXACT)
        if is_exact_scalar(z) and not isinstance(z, (int, np.integer)):
            raise BackendError(f"cannot scale approximate matrix by exact {z!r}")
        return Matrix._wrap(self.a * complex(z), APPROX)

    def __mul__(self, z):
        if isinstance(z, Matrix):
            raise TypeError("use @ for matrix composition")
        return self.scale(z)

    __rmul__ = __mul__

    def trace(self):
        if self.rows != self.cols:
            raise ShapeError("trace of non-square matrix")
        if self.exact:
            t = Fraction(0)
            for i in range(self.rows):
                t = t + self.a[i, i]
            return t
        return complex(np.trace(self.a))

    # comparison --------------------------------------------------------------
    def equals(self, other, eps=DEFAULT_EPS):
        return equals(self, other, eps)

    def is_zero(self, eps=DEFAULT_EPS):
        if self.exact:
            return not any(bool(x) for x in self.a.flat)
        return self.a.size == 0 or float(np.max(np.abs(self.a))) <= eps

    def max_deviation(self, other):
        self._check(other)
        if self.a.size == 0:
            return 0.0
        if self.exact:
            return max(abs(complex(x)) for x in (self.a - other.a).flat)
        return float(np.max(np.abs(self.a - other.a)))

    def key(self):
        """Hashable canonical encoding (exact backend only)."""
        if not self.exact:
            raise BackendError("approximate matrices have no canonical key")
        return (self.shape, tuple((x.real, x.imag) for x in self.a.flat))

    def __eq__(self, other):
        if not isinstance(other, Matrix) or other.backend != self.backend:
            return NotImplemented
        if self.shape != other.shape:
            return False
        return equals(self, other, DEFAULT_EPS)

    __hash__ = None

    # conversion --------------------------------------------------------------
    def to_approx(self):
        if not self.exact:
            return self
        arr = np.array([[complex(x) for x in row] for row in self.a], dtype=complex)
        return Matrix._wrap(arr.reshape(self.shape), APPROX)

    def to_numpy(self):
        return self.to_approx().a.copy()

    def tolist(self):
        return self.a.tolist()

    def __repr__(self):
        if self.exact:
            body = [[format_exact(x) for x in row] for row in self.a]
        else:
            body = np.round(self.a, 6).tolist()
        return f"Matrix({body}, backend={self.backend!r})"


def _infer_backend(arr):
    kinds = set()
    for x in arr.flat:
        if isinstance(x, (bool, np.bool_)):
            raise TypeError("boolean entries are not scalars")
        if isinstance(x, str) or is_exact_scalar(x):
            kinds.add(EXACT)
        elif isinstance(x, (float, complex, np.floating, np.complexfloating)):
            kinds.add(APPROX)
        else:
            raise TypeError(f"unsupported matrix entry {x!r}")
    if len(kinds) > 1:
        raise BackendError("matrix entries mix exact and approximate scalars")
    return kinds.pop() if kinds else EXACT


# ---------------------------------------------------------------------------
# The module-level operations


def dagger(m):
    return m.dag()


def tensor(a, b):
    """Kronecker product; row-major pairing (i, j) -> i * len(b) + j."""
    return a.kron(b)


def compose(g, f):
    """g after f."""
    return g @ f


def equals(a, b, eps=DEFAULT_EPS):
    a._check(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.exact:
        return bool(np.all(a.a == b.a)) if a.a.size else True
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return a.a.size == 0 or float(np.max(np.abs(a.a - b.a))) <= eps


def same_backend(*ms):
    """Promote to approx when backends differ (explicit, never implicit in ops)."""
    if len({m.backend for m in ms}) <= 1:
        return list(ms)
    return [m.to_approx() for m in ms]


# ---------------------------------------------------------------------------
# Row reduction


def rref(m, eps=DEFAULT_EPS):
    """Reduced row echelon form.

    Returns ``(R, pivots)``.  On the approximate backend a pivot counts as
    zero when its modulus is at most ``eps`` times the largest row norm of
    ``m`` (scale-invariant rank decisions).
    """
    a = m.a.copy()
    rows, cols = a.shape
    pivots = []
    if m.exact:
        r = 0
        for c in range(cols):
            if r == rows:
                break
            p = next((i for i in range(r, rows) if a[i, c]), None)
            if p is None:
                continue
            if p != r:
                a[[r, p]] = a[[p, r]]
            piv = a[r, c]
            if piv != 1:
                a[r, c:] = [x / piv for x in a[r, c:]]
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f:
                        a[i, c:] = [x - f * y for x, y in zip(a[i, c:], a[r, c:])]
            pivots.append(c)
            r += 1
        return Matrix._wrap(a, EXACT), pivots
    scale = float(np.max(np.linalg.norm(a, axis=1))) if a.size else 0.0
    tol = eps * scale
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol:
            a[r:, c] = 0
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r:
                a[i] = a[i] - a[i, c] * a[r]
        a[:, c] = 0
        a[r, c] = 1
        pivots.append(c)
        r += 1
    a[r:] = 0
    return Matrix._wrap(a, APPROX), pivots


def rank(m, eps=DEFAULT_EPS):
    return len(rref(m, eps)[1])


def null_space(m, eps=DEFAULT_EPS):
    """Basis of {v | m v = 0} as the columns of a cols x k matrix."""
    r, pivots = rref(m, eps)
    n = m.cols
    free = [c for c in range(n) if c not in pivots]
    basis = m.zeros_like(n, len(free)).a.copy()
    one = Fraction(1) if m.exact else 1.0
    for k, fc in enumerate(free):
        basis[fc, k] = one
        for i, pc in enumerate(pivots):
            basis[pc, k] = -r.a[i, fc]
    return Matrix._wrap(basis, m.backend)


def column_basis(m, eps=DEFAULT_EPS):
    """Linearly independent columns of m spanning its range."""
    _, pivots = rref(m, eps)
    if not pivots:
        return m.zeros_like(m.rows, 0)
    return Matrix._wrap(m.a[:, pivots].copy(), m.backend)


def inverse(m, eps=DEFAULT_EPS):
    n = m.rows
    if m.cols != n:
        raise ShapeError("inverse of non-square matrix")
    aug = Matrix._wrap(np.hstack([m.a, m.identity_like(n).a]), m.backend)
    r, pivots = rref(aug, eps)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix._wrap(r.a[:, n:].copy(), m.backend)


def solve(a, b, eps=DEFAULT_EPS):
    """Some x with a x = b, or None when the system is inconsistent."""
    a._check(b)
    aug = Matrix._wrap(np.hstack([a.a, b.a]), a.backend)
    r, pivots = rref(aug, eps)
    n = a.cols
    if any(p >= n for p in pivots):
        return None
    x = a.zeros_like(n, b.cols).a.copy()
    for i, pc in enumerate(pivots):
        x[pc, :] = r.a[i, n:]
    sol = Matrix._wrap(x, a.backend)
    if not a.exact and not (a @ sol).equals(b, max(eps, 1e-12) * 1e3):
        return None
    return sol


def range_projection(basis, eps=DEFAULT_EPS):
    """Orthogonal projection onto the span of the columns of ``basis``.

    Exact: Gram formula M (M^dag M)^-1 M^dag on an independent column
    subset, which stays rational.  Approx: Q Q^dag from a QR factorisation.
    """
    n = basis.rows
    cb = column_basis(basis, eps)
    if cb.cols == 0:
        return basis.zeros_like(n, n)
    if basis.exact:
        g = cb.dag() @ cb
        return cb @ inverse(g) @ cb.dag()
    q, _ = np.linalg.qr(cb.a)
    return Matrix._wrap(q @ q.conj().T, APPROX)


def null_space_projection(f, eps=DEFAULT_EPS):
    """Orthogonal projection onto ker(f)."""
    return range_projection(null_space(f, eps), eps)


def is_projection(p, eps=DEFAULT_EPS):
    return p.rows == p.cols and p.equals(p.dag(), eps) and (p @ p).equals(p, eps)


# ---------------------------------------------------------------------------
# Exact square roots


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None if irrational."""
    from math import isqrt

    q = _rat(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
