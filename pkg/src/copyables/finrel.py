"""Finite sets and relations.

Relations ``R: X -> Y`` are boolean matrices of shape ``|Y| x |X|``; the
dagger is the converse, composition is boolean matrix product and the
tensor is the product relation with pair index ``(x, y) -> x * |Y| + y``
(so it agrees with the Kronecker product).  Kernel subobjects are subsets.
Classical structures come from abelian groupoids.
"""

from __future__ import annotations

import itertools

import numpy as np

from .matrix import ShapeError


class Relation:
    __slots__ = ("m",)

    def __init__(self, m):
        m = np.array(m, dtype=bool)
        if m.ndim != 2:
            raise ShapeError("relation matrix must be two-dimensional")
        m.flags.writeable = False
        self.m = m

    @classmethod
    def from_pairs(cls, src, dst, pairs):
        """Relation containing each (x, y), x in src, y in dst."""
        m = np.zeros((dst, src), dtype=bool)
        for x, y in pairs:
            if not (0 <= x < src and 0 <= y < dst):
                raise ShapeError(f"pair {(x, y)} outside {src} x {dst}")
            m[y, x] = True
        return cls(m)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def empty(cls, src, dst):
        return cls(np.zeros((dst, src), dtype=bool))

    @classmethod
    def point(cls, n, mask):
        """Relation 1 -> X picking out the subset encoded by ``mask``."""
        return cls([[(mask >> i) & 1] for i in range(n)] if n else np.zeros((0, 1), dtype=bool))

    @classmethod
    def swap(cls, n):
        m = np.zeros((n * n, n * n), dtype=bool)
        for x in range(n):
            for y in range(n):
                m[y * n + x, x * n + y] = True
        return cls(m)

    @classmethod
    def diagonal(cls, subset):
        """Partial identity on a subset."""
        m = np.zeros((subset.n, subset.n), dtype=bool)
        for x in subset:
            m[x, x] = True
        return cls(m)

    def identity_like(self, n):
        return Relation.identity(n)

    def zeros_like(self, rows, cols):
        return Relation(np.zeros((rows, cols), dtype=bool))

    @property
    def src(self):
        return self.m.shape[1]

    @property
    def dst(self):
        return self.m.shape[0]

    rows = dst
    cols = src

    @property
    def shape(self):
        return self.m.shape

    def pairs(self):
        ys, xs = np.nonzero(self.m)
        return sorted(zip(xs.tolist(), ys.tolist()))

    def __contains__(self, pair):
        x, y = pair
        return bool(self.m[y, x])

    def dag(self):
        return Relation(self.m.T)

    def __matmul__(self, other):
        if not isinstance(other, Relation):
            raise TypeError(f"cannot compose a relation with {type(other).__name__}")
        if self.src != other.dst:
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        return Relation((self.m.astype(np.int64) @ other.m.astype(np.int64)) > 0)

    def kron(self, other):
        if not isinstance(other, Relation):
            raise TypeError(f"cannot tensor a relation with {type(other).__name__}")
        return Relation(np.kron(self.m, other.m))

    def equals(self, other, eps=None):
        if not isinstance(other, Relation):
            raise TypeError(f"cannot compare a relation with {type(other).__name__}")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return bool(np.array_equal(self.m, other.m))

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.shape == other.shape and self.equals(other)

    __hash__ = None

    def is_zero(self, eps=None):
        return not self.m.any()

    def max_deviation(self, other):
        return 0.0 if self.equals(other) else 1.0

    def is_symmetric(self):
        return self.src == self.dst and bool(np.array_equal(self.m, self.m.T))

    def is_transitive(self):
        return self.src == self.dst and bool(np.all((self @ self).m <= self.m))

    def __repr__(self):
        return f"Relation({self.src} -> {self.dst}, {self.pairs()})"


def rel_dagger(r):
    return r.dag()


def rel_compose(s, r):
    """s after r."""
    return s @ r


def rel_tensor(r, s):
    return r.kron(s)


class Subset:
    """Kernel subobject of a finite set, encoded as a bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n, members=()):
        if isinstance(members, int):
            mask = members
        else:
            mask = 0
            for x in members:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} outside a set of size {n}")
                mask |= 1 << x
        if mask >> n:
            raise ValueError("mask has bits beyond the carrier")
        self.n = n
        self.mask = mask

    def __iter__(self):
        return (x for x in range(self.n) if (self.mask >> x) & 1)

    def __contains__(self, x):
        return bool((self.mask >> x) & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def __eq__(self, other):
        return isinstance(other, Subset) and (self.n, self.mask) == (other.n, other.mask)

    def __hash__(self):
        return hash((self.n, self.mask))

    @property
    def ambient(self):
        return ("rel", self.n)

    @property
    def rank(self):
        return len(self)

    exact = True

    def _same_space(self, other):
        if not isinstance(other, Subset):
            raise TypeError(f"cannot compare a subset with {type(other).__name__}")
        if other.n != self.n:
            raise ShapeError(f"subsets of sets of size {self.n} and {other.n}")

    def zero(self):
        return Subset(self.n, 0)

    def top(self):
        return Subset(self.n, (1 << self.n) - 1)

    def is_zero(self):
        return self.mask == 0

    def is_top(self):
        return self.mask == (1 << self.n) - 1

    def same(self, other):
        self._same_space(other)
        return self.mask == other.mask

    def key(self):
        return (self.n, self.mask)

    def leq(self, other):
        self._same_space(other)
        return self.mask & ~other.mask == 0

    def meet(self, other):
        self._same_space(other)
        return Subset(self.n, self.mask & other.mask)

    def join(self, other):
        self._same_space(other)
        return Subset(self.n, self.mask | other.mask)

    def ortho(self):
        return Subset(self.n, ~self.mask & ((1 << self.n) - 1))

    def is_orthogonal(self, other):
        self._same_space(other)
        return self.mask & other.mask == 0

    def kron(self, other):
        return Subset(self.n * other.n, [x * other.n + y for x in self for y in other])

    def as_relation(self):
        return Relation.diagonal(self)

    def sort_key(self):
        return (len(self), tuple(self))

    def label(self):
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self):
        return f"Subset({self.n}, {self.label()})"


def rel_kernel(r):
    """Elements of the source related to nothing."""
    return Subset(r.src, [x for x in range(r.src) if not r.m[:, x].any()])


def all_subsets(n):
    return [Subset(n, mask) for mask in range(1 << n)]


# ---------------------------------------------------------------------------
# Abelian groupoids


class InvalidGroupoid(ValueError):
    pass


UNDEFINED = -1


class AbelianGroupoid:
    """Disjoint union of abelian groups, given by a partial Cayley table.

    ``table[x][y]`` is the product ``x . y`` or ``-1`` when undefined.
    All group laws are verified by enumeration on construction.
    """

    def __init__(self, table):
        t = np.array(table, dtype=int)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise InvalidGroupoid("table must be square")
        n = t.shape[0]
        if n and (t.min() < UNDEFINED or t.max() >= n):
            raise InvalidGroupoid("table entries must be elements or -1")
        self.n = n
        self.table = t
        self.components = self._components()
        self._identity = {}
        self._inverse = {}
        self._check()

    def _components(self):
        t, n = self.table, self.n
        defined = t != UNDEFINED
        if n and not np.all(np.diag(defined)):
            raise InvalidGroupoid("x . x must be defined for every x")
        if not np.array_equal(defined, defined.T):
            raise InvalidGroupoid("definedness is not symmetric")
        comps, seen = [], set()
        for x in range(n):
            if x in seen:
                continue
            comp = tuple(int(y) for y in np.nonzero(defined[x])[0])
            for y in comp:
                if tuple(int(z) for z in np.nonzero(defined[y])[0]) != comp:
                    raise InvalidGroupoid("definedness is not an equivalence relation")
            seen.update(comp)
            comps.append(comp)
        return comps

    def _check(self):
        t = self.table
        for comp in self.components:
            cs = set(comp)
            for x in comp:
                for y in comp:
                    if int(t[x, y]) not in cs:
                        raise InvalidGroupoid(f"{x}.{y} leaves its component")
                    if t[x, y] != t[y, x]:
                        raise InvalidGroupoid(f"{x}.{y} != {y}.{x}")
            for x, y, z in itertools.product(comp, repeat=3):
                if t[t[x, y], z] != t[x, t[y, z]]:
                    raise InvalidGroupoid(f"associativity fails at {(x, y, z)}")
            units = [e for e in comp if all(t[e, x] == x for x in comp)]
            if not units:
                raise InvalidGroupoid(f"component {comp} has no identity")
            e = units[0]
            for x in comp:
                inv = [y for y in comp if t[x, y] == e]
                if not inv:
                    raise InvalidGroupoid(f"{x} has no inverse")
                self._inverse[x] = inv[0]
                self._identity[x] = e

    def mul(self, x, y):
        v = int(self.table[x, y])
        return None if v == UNDEFINED else v

    def inverse(self, x):
        return self._inverse[x]

    def identity_of(self, x):
        return self._identity[x]

    @property
    def is_group(self):
        return len(self.components) == 1

    def __len__(self):
        return self.n

    def __repr__(self):
        sizes = "+".join(str(len(c)) for c in self.components)
        return f"AbelianGroupoid(n={self.n}, components={sizes})"

    # constructors --------------------------------------------------------
    @classmethod
    def cyclic(cls, n):
        return cls([[(x + y) % n for y in range(n)] for x in range(n)])

    @classmethod
    def product(cls, *groups):
        """Direct product of groups; elements ordered lexicographically."""
        for g in groups:
            if not g.is_group:
                raise InvalidGroupoid("direct products are taken of groups only")
        sizes = [g.n for g in groups]
        elems = list(itertools.product(*[range(s) for s in sizes]))
        index = {e: i for i, e in enumerate(elems)}
        table = [
            [index[tuple(g.mul(a, b) for g, a, b in zip(groups, x, y))] for y in elems]
            for x in elems
        ]
        return cls(table)

    @classmethod
    def disjoint_union(cls, *groupoids):
        n = sum(g.n for g in groupoids)
        table = np.full((n, n), UNDEFINED, dtype=int)
        off = 0
        for g in groupoids:
            block = np.where(g.table == UNDEFINED, UNDEFINED, g.table + off)
            table[off : off + g.n, off : off + g.n] = block
            off += g.n
        return cls(table)


def _prime_factors(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k, largest=None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups(order):
    """One representative of each abelian group of the given order."""
    if order == 1:
        return [AbelianGroupoid.cyclic(1)]
    per_prime = [
        [[p**a for a in part] for part in _partitions(k)]
        for p, k in sorted(_prime_factors(order).items())
    ]
    out = []
    for choice in itertools.product(*per_prime):
        factors = [c for part in choice for c in part]
        gs = [AbelianGroupoid.cyclic(c) for c in factors]
        out.append(gs[0] if len(gs) == 1 else AbelianGroupoid.product(*gs))
    return out


def groupoid_delta(g):
    """delta = {(z, (x, y)) | x . y defined and equal to z}, as X -> X x X."""
    n = g.n
    m = np.zeros((n * n, n), dtype=bool)
    for x in range(n):
        for y in range(n):
            z = g.mul(x, y)
            if z is not None:
                m[x * n + y, z] = True
    return Relation(m)


def rel_copyable(k, g):
    """x in K and y in K  <=>  x . y in K, whenever x . y is defined."""
    if k.n != g.n:
        raise ShapeError("subset and groupoid have different carriers")
    for x in range(g.n):
        for y in range(g.n):
            z = g.mul(x, y)
            if z is not None and ((x in k and y in k) != (z in k)):
                return False
    return True


# ---------------------------------------------------------------------------
# Partial equivalence relations


class NotAPER(ValueError):
    pass


def check_per(q):
    if not (q.is_symmetric() and q.is_transitive()):
        raise NotAPER("relation is not symmetric and transitive")
    return q


def per_copyable(q, g):
    """Groupoid-congruence test for a PER ``q``.

    For all x, y, z:  (x.y defined and x.y ~ z)  <=>  exists x' ~ x, y' ~ y
    with x'.y' = z.
    """
    check_per(q)
    n = g.n
    if q.src != n:
        raise ShapeError("PER and groupoid have different carriers")
    rel = q.m
    for x, y, z in itertools.product(range(n), repeat=3):
        xy = g.mul(x, y)
        lhs = xy is not None and bool(rel[z, xy])
        rhs = any(
            g.mul(a, b) == z
            for a in range(n)
            if rel[a, x]
            for b in range(n)
            if rel[b, y]
        )
        if lhs != rhs:
            return False
    return True


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def all_pers(n):
    """Every PER on an n-element set.

    PERs on n correspond to partitions of n + 1 elements: the block holding
    the extra element collects the points outside the domain.
    """
    out = []
    for part in _set_partitions(list(range(n + 1))):
        m = np.zeros((n, n), dtype=bool)
        for block in part:
            if n in block:
                continue
            for a in block:
                for b in block:
                    m[a, b] = True
        out.append(Relation(m))
    out.sort(key=lambda r: r.m.tobytes())
    return out


def per_from_classes(n, classes):
    m = np.zeros((n, n), dtype=bool)
    for block in classes:
        for a in block:
            for b in block:
                m[a, b] = True
    return check_per(Relation(m))

