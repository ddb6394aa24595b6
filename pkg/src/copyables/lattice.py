"""Finite sublattices of kernel subobjects.

Elements are :class:`~copyables.fdhilb.Projection` (Hilbert spaces) or
:class:`~copyables.finrel.Subset` (relations); both expose ``leq``, ``meet``,
``join``, ``ortho``, ``is_orthogonal``, ``zero``/``top`` and a canonical
``key``.  A :class:`KSubLattice` is a materialized finite family; every
quantified check below is exhaustive over it.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

DEFAULT_BOUND = 4096


class LatticeError(ValueError):
    """The family is not closed, or closure exceeded its bound."""


def _check_same_model(a, b):
    if type(a) is not type(b):
        raise TypeError(f"cannot mix {type(a).__name__} and {type(b).__name__}")
    if a.ambient != b.ambient:
        raise ValueError(f"different ambient objects {a.ambient} and {b.ambient}")


def leq(a, b):
    _check_same_model(a, b)
    return a.leq(b)


def meet(a, b):
    _check_same_model(a, b)
    return a.meet(b)


def join(a, b):
    _check_same_model(a, b)
    return a.join(b)


def ortho(a):
    return a.ortho()


class _Index:
    """Deduplicating element store (dict for exact keys, eps scan otherwise)."""

    def __init__(self):
        self.items = []
        self.by_key = {}

    def find(self, x):
        k = x.key()
        if k is not None:
            return self.by_key.get(k)
        for i, y in enumerate(self.items):
            if y.same(x):
                return i
        return None

    def add(self, x):
        i = self.find(x)
        if i is not None:
            return i, False
        self.items.append(x)
        k = x.key()
        if k is not None:
            self.by_key[k] = len(self.items) - 1
        return len(self.items) - 1, True


class KSubLattice:
    """A finite family of kernel subobjects treated as an ortholattice.

    Order, meet, join and orthocomplement tables are computed lazily; a
    :class:`LatticeError` is raised if the family turns out not to be closed.
    """

    def __init__(self, elements, sort=True):
        idx = _Index()
        for x in elements:
            idx.add(x)
        items = idx.items
        if not items:
            raise LatticeError("a lattice needs at least one element")
        for x in items[1:]:
            _check_same_model(items[0], x)
        if sort:
            items = sorted(items, key=lambda x: x.sort_key())
        self.elements = tuple(items)
        self._index = _Index()
        for x in self.elements:
            self._index.add(x)
        self._order = None
        self._meet = None
        self._join = None
        self._ortho = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x):
        i = self._index.find(x)
        if i is None:
            raise LatticeError(f"{x!r} is not in the lattice")
        return i

    def __contains__(self, x):
        return self._index.find(x) is not None

    @property
    def ambient(self):
        return self.elements[0].ambient

    @property
    def bottom(self):
        return self.elements[0].zero()

    @property
    def top(self):
        return self.elements[0].top()

    # tables ----------------------------------------------------------------
    @property
    def order(self):
        if self._order is None:
            n = len(self)
            o = np.zeros((n, n), dtype=bool)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    o[i, j] = i == j or a.leq(b)
            self._order = o
        return self._order

    def _lookup(self, x, what):
        i = self._index.find(x)
        if i is None:
            raise LatticeError(f"not closed under {what}: {x!r}")
        return i

    @property
    def ortho_table(self):
        if self._ortho is None:
            self._ortho = [self._lookup(x.ortho(), "ortho") for x in self.elements]
        return self._ortho

    @property
    def meet_table(self):
        if self._meet is None:
            self._meet = self._pair_table(lambda a, b: a.meet(b), "meet")
        return self._meet

    @property
    def join_table(self):
        if self._join is None:
            self._join = self._pair_table(lambda a, b: a.join(b), "join")
        return self._join

    def _pair_table(self, op, what):
        n = len(self)
        t = np.zeros((n, n), dtype=int)
        for i in range(n):
            for j in range(i, n):
                t[i, j] = t[j, i] = i if i == j else self._lookup(op(self[i], self[j]), what)
        return t

    def validate(self):
        """Raise LatticeError unless the family contains 0, 1 and is closed."""
        if self.bottom not in self or self.top not in self:
            raise LatticeError("lattice must contain 0 and 1")
        self.ortho_table
        self.meet_table
        self.join_table
        return self

    def zero_index(self):
        return self.index(self.bottom)

    def top_index(self):
        return self.index(self.top)

    def to_json(self):
        from .serialize import ksub_to_json

        pairs = [[int(i), int(j)] for i, j in zip(*np.nonzero(self.order))]
        return {"elements": [ksub_to_json(x) for x in self.elements], "order": pairs}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return f"KSubLattice({len(self)} elements on {self.ambient})"


def sublattice_closure(gens, top=None, bound=DEFAULT_BOUND):
    """Smallest family containing ``gens``, 0 and 1 closed under meet, join, ortho."""
    gens = list(gens)
    if not gens and top is None:
        raise ValueError("closure of no generators needs an ambient top element")
    seed = gens[0] if gens else top
    for g in gens:
        _check_same_model(seed, g)
    idx = _Index()
    todo = []

    def add(x):
        i, new = idx.add(x)
        if new:
            if len(idx.items) > bound:
                raise LatticeError(f"closure exceeded {bound} elements")
            todo.append(i)

    for x in [seed.zero(), seed.top(), *gens]:
        add(x)
    done = 0
    while done < len(todo):
        i = todo[done]
        done += 1
        x = idx.items[i]
        add(x.ortho())
        for j in range(len(idx.items)):
            if j == i:
                continue
            y = idx.items[j]
            add(x.meet(y))
            add(x.join(y))
    return KSubLattice(idx.items)


# ---------------------------------------------------------------------------
# Law checks


def is_boolean(lat):
    """Booleanness via disjoint-implies-orthogonal.

    Returns ``(True, None)`` or ``(False, (k, l))`` with ``k ^ l = 0`` but
    ``l^dag k != 0``.
    """
    lat.validate()
    mt = lat.meet_table
    z = lat.zero_index()
    for i, j in itertools.combinations(range(len(lat)), 2):
        if mt[i, j] == z and not lat[i].is_orthogonal(lat[j]):
            return False, (lat[i], lat[j])
    return True, None


def is_distributive(lat):
    """Textbook distributivity over all triples; ``(ok, witness_triple)``."""
    lat.validate()
    mt, jt = lat.meet_table, lat.join_table
    lhs = mt[:, jt]  # a ^ (b v c), indexed [a, b, c]
    rhs = jt[mt[:, :, None], mt[:, None, :]]  # (a ^ b) v (a ^ c)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = bad[0]
        return False, (lat[a], lat[b], lat[c])
    return True, None


def orthomodular_check(lat):
    """a <= b  implies  b = a v (b ^ a-perp), for all pairs in the lattice."""
    lat.validate()
    o, mt, jt, ot = lat.order, lat.meet_table, lat.join_table, lat.ortho_table
    n = len(lat)
    for a in range(n):
        for b in range(n):
            if o[a, b] and jt[a, mt[b, ot[a]]] != b:
                return False, (lat[a], lat[b])
    return True, None


def atoms(lat):
    """Minimal nonzero elements."""
    o = lat.order
    z = lat.zero_index()
    nz = [i for i in range(len(lat)) if i != z]
    return [lat[i] for i in nz if not any(o[j, i] and j != i for j in nz)]


def covers(lat):
    o = lat.order
    n = len(lat)
    out = []
    for a in range(n):
        for b in range(n):
            if a != b and o[a, b]:
                if not any(o[a, c] and o[c, b] for c in range(n) if c not in (a, b)):
                    out.append((a, b))
    return out


def hasse(lat, name="KSub"):
    """Covering relation as Graphviz DOT text (deterministic)."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, x in enumerate(lat):
        label = x.label().replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for a, b in covers(lat):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Table-driven ortholattices (negative controls)


class TableElement:
    """Element of an abstract finite ortholattice given by its order."""

    __slots__ = ("lat", "i")

    exact = True

    def __init__(self, lat, i):
        self.lat, self.i = lat, i

    @property
    def ambient(self):
        return ("table", id(self.lat))

    rank = property(lambda self: int(self.lat.height[self.i]))

    def _el(self, i):
        return TableElement(self.lat, i)

    def zero(self):
        return self._el(self.lat.bottom)

    def top(self):
        return self._el(self.lat.topi)

    def is_zero(self):
        return self.i == self.lat.bottom

    def same(self, other):
        return self.i == other.i

    def key(self):
        return ("table", self.i)

    def leq(self, other):
        return bool(self.lat.le[self.i, other.i])

    def meet(self, other):
        return self._el(self.lat.glb(self.i, other.i))

    def join(self, other):
        return self._el(self.lat.lub(self.i, other.i))

    def ortho(self):
        return self._el(self.lat.perp[self.i])

    def is_orthogonal(self, other):
        return self.leq(other.ortho())

    def sort_key(self):
        return (self.rank, self.lat.names[self.i])

    def label(self):
        return self.lat.names[self.i]

    def __repr__(self):
        return f"<{self.label()}>"


class _OrderTable:
    def __init__(self, names, covers_, perp):
        self.names = list(names)
        n = len(names)
        pos = {x: i for i, x in enumerate(names)}
        le = np.eye(n, dtype=bool)
        for a, b in covers_:
            le[pos[a], pos[b]] = True
        for k in range(n):
            le |= le[:, [k]] & le[[k], :]
        self.le = le
        self.perp = [pos[perp[x]] for x in names]
        self.bottom = next(i for i in range(n) if le[i].all())
        self.topi = next(i for i in range(n) if le[:, i].all())
        self.height = [int(le[:, i].sum()) for i in range(n)]

    def glb(self, a, b):
        lower = [c for c in range(len(self.names)) if self.le[c, a] and self.le[c, b]]
        return next(c for c in lower if all(self.le[d, c] for d in lower))

    def lub(self, a, b):
        upper = [c for c in range(len(self.names)) if self.le[a, c] and self.le[b, c]]
        return next(c for c in upper if all(self.le[c, d] for d in upper))


def hexagon_ortholattice():
    """The six-element ortholattice 0 < a < b < 1, 0 < b' < a' < 1.

    It is orthocomplemented but not orthomodular: a <= b while
    a v (b ^ a') = a != b.
    """
    names = ["0", "a", "b'", "b", "a'", "1"]
    cov = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    perp = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    t = _OrderTable(names, cov, perp)
    return KSubLattice([TableElement(t, i) for i in range(len(names))])
