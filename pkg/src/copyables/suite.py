"""The acceptance battery: twelve property checks with time budgets.

Each check returns a :class:`CheckResult`; :func:`run_suite` runs them all.
The CLI ``suite`` subcommand and ``tests/test_acceptance.py`` both use this
module.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fixtures
from .complementarity import (
    UnbiasedScope,
    is_unbiased,
    mutually_unbiased,
    partially_complementary,
)
from .copyability import copyable_lattice, cs_kernel, restrict_delta
from .fdhilb import ClassicalStructure, OrthonormalBasis, Projection, kernel, verify_classical_structure
from .finrel import Relation, all_pers, all_subsets, per_copyable, rel_kernel
from .lattice import (
    KSubLattice,
    hexagon_ortholattice,
    is_boolean,
    is_distributive,
    orthomodular_check,
    sublattice_closure,
)
from .matrix import Matrix, gauss
from .vnalg import (
    algebra_closure,
    algebra_from_boolean,
    commutant,
    fdcaker_family_check,
    full_algebra,
    pc_algebras,
    round_trip_check,
    scalars,
    structure_algebra,
)

SEED = 20100615


@dataclass
class CheckResult:
    number: int
    anchor: str
    ok: bool
    detail: str
    elapsed: float
    limit: float

    @property
    def in_time(self):
        return self.elapsed <= self.limit

    @property
    def passed(self):
        return self.ok and self.in_time

    def line(self, timing=True):
        tag = "PASS" if self.passed else "FAIL"
        budget = "" if self.in_time else " over budget"
        if timing:
            return f"[{tag}] {self.anchor} {self.detail} ({self.elapsed:.2f}s/{self.limit:g}s{budget})"
        return f"[{tag}] {self.anchor} {self.detail}" + (f" ({budget.strip()})" if budget else "")


# ---------------------------------------------------------------------------
# random fixtures


def random_exact_matrix(rng, rows, cols, complex_entries=True):
    """Small Gaussian-integer matrix; about a third of the entries are zero."""
    vals = rng.integers(-2, 3, size=(rows, cols, 2))
    zero = rng.random((rows, cols)) < 0.35
    data = []
    for i in range(rows):
        row = []
        for j in range(cols):
            re, im = (0, 0) if zero[i, j] else vals[i, j]
            row.append(gauss(int(re), int(im) if complex_entries else 0))
        data.append(row)
    return Matrix(data, "exact")


def random_low_rank(rng, rows, cols):
    """Exact matrix of random rank, so that kernels are often proper."""
    r = int(rng.integers(0, min(rows, cols) + 1))
    if r == 0:
        return Matrix.zeros(rows, cols)
    return random_exact_matrix(rng, rows, r) @ random_exact_matrix(rng, r, cols)


def random_relation(rng, src, dst, density=0.3):
    return Relation(rng.random((dst, src)) < density)


def householder(v):
    """Rational orthogonal reflection I - 2 v v^T / v^T v."""
    v = Matrix([[Fraction(int(x))] for x in v])
    n = v.rows
    return Matrix.identity(n) - v @ v.dag() * Fraction(2, 1) * Fraction(1, (v.dag() @ v).a[0, 0])


def rational_orthonormal_basis(rng, d, reflections=2):
    q = Matrix.identity(d)
    for _ in range(reflections):
        v = rng.integers(-3, 4, size=d)
        if not v.any():
            v[0] = 1
        q = householder(v) @ q
    return OrthonormalBasis(q.columns())


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def block_projections(basis, blocks):
    ones = basis.rank_one_projections()
    out = []
    for block in blocks:
        acc = ones[block[0]].p
        for i in block[1:]:
            acc = acc + ones[i].p
        out.append(Projection(acc))
    return out


def hilbert_fixtures():
    return {
        "computational C^2": fixtures.computational(2),
        "computational C^3": fixtures.computational(3),
        "hadamard C^2": fixtures.hadamard(),
        "circular C^2": fixtures.circular(),
        "rotation (3/5,4/5)": fixtures.rotation(),
        "fourier C^3": fixtures.fourier(3),
    }


def mixed_line_lattice():
    """Closure of diag(1,0) and the projection onto span(1,1) in C^2."""
    p = Projection(Matrix([[1, 0], [0, 0]]))
    q = Projection(Matrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]]))
    return sublattice_closure([p, q])


# ---------------------------------------------------------------------------
# the twelve checks


def check_boolean_cube():
    sizes = []
    for d in (2, 3, 4):
        fam = copyable_lattice(fixtures.computational(d))
        lat = fam.lattice
        ok_b, _ = is_boolean(lat)
        ok_o, _ = orthomodular_check(lat)
        if len(lat) != 2**d or not (ok_b and ok_o) or fam.anomalies:
            return False, f"d={d}: {len(lat)} copyables, boolean={ok_b}, orthomodular={ok_o}"
        sizes.append(len(lat))
    return True, f"copyable kernel counts {sizes} = 2^d, Boolean and orthomodular"


def check_rel_groups():
    seen, slowest = [], 0.0
    for g in fixtures.small_abelian_groups(2, 6):
        t = time.perf_counter()
        d = ClassicalStructure.from_groupoid(g)
        lat = copyable_lattice(d).lattice
        members = sorted(s.mask for s in lat)
        slowest = max(slowest, time.perf_counter() - t)
        if members != [0, (1 << g.n) - 1]:
            return False, f"group of order {g.n}: copyable masks {members}"
        seen.append(g.n)
    if slowest > 1.0:
        return False, f"slowest group took {slowest:.2f}s (budget 1s per group)"
    return True, f"{len(seen)} abelian groups of orders 2-6 copy only the empty set and the whole set"


def check_per_congruence():
    total = 0
    groupoids = fixtures.small_groupoids(4)
    for g in groupoids:
        d = ClassicalStructure.from_groupoid(g)
        for q in all_pers(g.n):
            direct = is_copyable_kernel_relation(q, d)
            congruence = per_copyable(q, g)
            if direct != congruence:
                return False, f"carrier {g.n}: PER {q.pairs()} direct={direct} congruence={congruence}"
            total += 1
    z4 = fixtures.small_abelian_groups(4, 4)[0]
    n_copy = sum(per_copyable(q, z4) for q in all_pers(4))
    return True, f"{total} PERs over {len(groupoids)} groupoids agree; {n_copy} congruences on Z4"


def is_copyable_kernel_relation(q, d):
    """Direct route: delta . q == (q (x) q) . delta."""
    return (d.delta @ q).equals(q.kron(q) @ d.delta)


def check_kernel_tensor(n=100, seed=SEED):
    rng = np.random.default_rng(seed)
    coherence_fail = diagonal_fail = 0
    for _ in range(n):
        r1, c1, r2, c2 = (int(x) for x in rng.integers(1, 4, size=4))
        f, g = random_low_rank(rng, r1, c1), random_low_rank(rng, r2, c2)
        lhs = kernel(f).kron(kernel(g))
        rhs = kernel(f.kron(Matrix.identity(c2))).meet(kernel(Matrix.identity(c1).kron(g)))
        coherence_fail += not lhs.same(rhs)
    for _ in range(n):
        r, c = (int(x) for x in rng.integers(1, 4, size=2))
        f = random_low_rank(rng, r, c)
        if not kernel(f.kron(f)).same(kernel(f).kron(kernel(f))):
            diagonal_fail += 1
    rel_coh = rel_diag = 0
    for _ in range(n):
        a, b, c, e = (int(x) for x in rng.integers(1, 5, size=4))
        f, g = random_relation(rng, a, b), random_relation(rng, c, e)
        lhs = rel_kernel(f).kron(rel_kernel(g))
        rhs = rel_kernel(f.kron(Relation.identity(c))).meet(rel_kernel(Relation.identity(a).kron(g)))
        rel_coh += not lhs.same(rhs)
        if not rel_kernel(f.kron(f)).same(rel_kernel(f).kron(rel_kernel(f))):
            rel_diag += 1
    ok = coherence_fail == rel_coh == diagonal_fail == rel_diag == 0
    detail = (
        f"coherence failures hilb={coherence_fail}/{n} rel={rel_coh}/{n}; "
        f"ker(f(x)f)=ker f(x)ker f failures hilb={diagonal_fail}/{n} rel={rel_diag}/{n}"
    )
    if diagonal_fail:
        f = Matrix([[1, 0], [0, 0]])
        detail += (
            f"; smallest counterexample f=diag(1,0): rank ker(f(x)f)={kernel(f.kron(f)).rank},"
            f" rank ker f(x)ker f={kernel(f).kron(kernel(f)).rank}"
        )
    return ok, detail


def _random_closed_lattices(seed=SEED):
    rng = np.random.default_rng(seed)
    lats = [mixed_line_lattice(), hexagon_ortholattice()]
    for d in hilbert_fixtures().values():
        lats.append(copyable_lattice(d).lattice)
    lats.append(KSubLattice(all_subsets(6)))
    for d in (2, 3):
        for _ in range(6):
            gens = []
            for _ in range(int(rng.integers(1, 3))):
                v = [int(x) for x in rng.integers(-2, 3, size=d)]
                if not any(v):
                    v[0] = 1
                gens.append(Projection.onto([Matrix([[x] for x in v])]))
            try:
                lat = sublattice_closure(gens, bound=64)
            except ValueError:
                continue
            lats.append(lat)
    return lats


def check_boolean_criterion():
    lats = _random_closed_lattices()
    for lat in lats:
        crit, _ = is_boolean(lat)
        dist, _ = is_distributive(lat)
        if crit != dist:
            return False, f"criterion={crit} but distributive={dist} on {lat!r}"
    mixed = mixed_line_lattice()
    if is_boolean(mixed)[0] or is_distributive(mixed)[0]:
        return False, "mixed-line lattice in C^2 passed a Booleanness test"
    n_bool = sum(is_boolean(lat)[0] for lat in lats)
    return True, f"{len(lats)} lattices ({n_bool} Boolean) agree; mixed-line C^2 fails both"


def check_restriction():
    count = 0
    for d in (2, 3):
        delta = fixtures.computational(d)
        for P in copyable_lattice(delta).lattice:
            res = restrict_delta(P, delta, allow_approx=False)
            if not all(res.squares.values()):
                return False, f"d={d}: commuting squares fail for {P.label()}"
            if P.is_zero():
                count += 1
                continue
            rep = verify_classical_structure(res.structure)
            if not (rep.ok and rep.frobenius):
                return False, f"d={d}: restriction to {P.label()} fails {rep.failed()}"
            count += 1
    return True, f"{count} restrictions satisfy every classical-structure axiom, H* included"


def coordinate_projection(n, keep):
    return Matrix([[1 if j == i else 0 for j in range(n)] for i in keep])


def check_cs_kernels():
    count = 0
    for n in (2, 3):
        dx = fixtures.computational(n)
        for r in range(1, n + 1):
            for keep in itertools.combinations(range(n), r):
                f = coordinate_projection(n, keep)
                k = cs_kernel(f, dx, fixtures.computational(r))
                if not (k.verdict.copyable and all(k.certificates.values())):
                    return False, f"n={n} keep={keep}: kernel not certified"
                expect = [i for i in range(n) if i not in keep]
                if k.kernel.rank != len(expect):
                    return False, f"n={n} keep={keep}: kernel rank {k.kernel.rank}"
                count += 1
    return True, f"{count} coordinate-projection morphisms have certified copyable kernels"


def check_mub_battery():
    comp, had, circ = [d.to_approx() for d in fixtures.standard_mubs_c2()]
    for (n1, d1), (n2, d2) in itertools.combinations(
        [("computational", comp), ("hadamard", had), ("circular", circ)], 2
    ):
        if not mutually_unbiased(d1, d2, UnbiasedScope.ATOMS):
            return False, f"{n1}/{n2} not mutually unbiased"
        if not partially_complementary(d1, d2).partially_complementary:
            return False, f"{n1}/{n2} not partially complementary"
    rot = fixtures.rotation().to_approx()
    pc = partially_complementary(comp, rot).partially_complementary
    mu = mutually_unbiased(comp, rot, UnbiasedScope.ATOMS)
    if not pc or mu:
        return False, f"computational/rotation: PC={pc} MU={mu}"
    return True, "three C^2 bases pairwise MU and PC; computational/rotation PC but not MU"


def check_copyable_not_unbiased():
    count = 0
    for name, d in hilbert_fixtures().items():
        for k in copyable_lattice(d).lattice:
            if k.is_zero():
                continue
            if is_unbiased(k, d, UnbiasedScope.NONZERO):
                return False, f"{name}: copyable {k.label()} is unbiased"
            count += 1
    return True, f"{count} nonzero copyables are all biased relative to their own structure"


def check_vn_round_trip(seed=SEED):
    rng = np.random.default_rng(seed)
    lattices = 0
    for d in (2, 3, 4):
        bases = [fixtures.computational(d).basis, rational_orthonormal_basis(rng, d)]
        parts = list(set_partitions(list(range(d))))
        if d == 4:
            parts = [parts[i] for i in sorted(rng.choice(len(parts), 4, replace=False))]
        for basis in bases:
            for blocks in parts:
                lat = sublattice_closure(block_projections(basis, blocks))
                if not round_trip_check(lat):
                    return False, f"d={d} blocks={blocks}: Proj(B'') != B"
                if not round_trip_check(algebra_from_boolean(lat)):
                    return False, f"d={d} blocks={blocks}: Proj(C)'' != C"
                lattices += 1
    algs = fixture_algebras()
    for name, a in algs.items():
        if not commutant(commutant(a)).same_span(a):
            return False, f"double commutant moves {name}"
    return True, f"{lattices} rational Boolean lattices round-trip; {len(algs)} algebras equal their double commutant"


def fixture_algebras():
    e = lambda i, j, n: Matrix.unit_vector(n, i) @ Matrix.unit_vector(n, j).dag()  # noqa: E731
    return {
        "scalars M2": scalars(2),
        "M2": full_algebra(2),
        "diagonal M2": algebra_closure([e(0, 0, 2)]),
        "diagonal M3": algebra_closure([e(0, 0, 3), e(1, 1, 3)]),
        "M2 + C in M3": algebra_closure([e(0, 1, 3)]),
        "rotation structure": structure_algebra(fixtures.rotation()),
        "hadamard structure": structure_algebra(fixtures.hadamard()),
    }


def check_level_bridge():
    fx = hilbert_fixtures()
    algs = {}
    for name, d in fx.items():
        algs[name] = structure_algebra(d)
    pairs = 0
    for (n1, d1), (n2, d2) in itertools.combinations_with_replacement(fx.items(), 2):
        if d1.dim != d2.dim:
            continue
        rep = partially_complementary(d1, d2)
        alg = pc_algebras(algs[n1], algs[n2])
        if rep.partially_complementary != alg or not rep.paths_agree:
            return False, f"{n1}/{n2}: structures={rep.partially_complementary} algebras={alg}"
        trivial = all(x.is_zero() or x.is_top() for x in rep.intersection)
        if trivial != rep.partially_complementary:
            return False, f"{n1}/{n2}: lattice intersection disagrees"
        pairs += 1
    return True, f"{pairs} pairs: algebra, lattice and structure complementarity agree"


def check_fdcaker():
    p0 = Projection(Matrix([[1, 0], [0, 0]]))
    p1 = Projection(Matrix([[0, 0], [0, 1]]))
    q = Projection(Matrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]]))
    good = fdcaker_family_check([p0, p1])
    if not good.accepted:
        return False, f"diagonal family rejected: {good.reason}"
    if not good.algebra.same_span(algebra_closure([p0.p])):
        return False, "constructed algebra is not the diagonal algebra"
    if not good.delta.delta.equals(fixtures.computational(2).delta):
        return False, "constructed structure is not the computational one"
    bad = fdcaker_family_check([p0, q])
    if bad.accepted or bad.witness is None:
        return False, "mixed family accepted"
    return True, f"diagonal family accepted; mixed family rejected ({bad.reason})"


CHECKS = [
    (1, "copyability.boolean-cube", 1.0, check_boolean_cube),
    (2, "finrel.group-triviality", 6.0, check_rel_groups),
    (3, "finrel.per-congruence", 5.0, check_per_congruence),
    (4, "fdhilb.kernel-tensor", 5.0, check_kernel_tensor),
    (5, "lattice.boolean-criterion", 5.0, check_boolean_criterion),
    (6, "copyability.restriction", 1.0, check_restriction),
    (7, "copyability.cs-kernels", 1.0, check_cs_kernels),
    (8, "complementarity.mub-battery", 1.0, check_mub_battery),
    (9, "complementarity.copyable-biased", 1.0, check_copyable_not_unbiased),
    (10, "vnalg.round-trip", 5.0, check_vn_round_trip),
    (11, "vnalg.level-bridge", 2.0, check_level_bridge),
    (12, "vnalg.family-check", 1.0, check_fdcaker),
]


def run_check(number):
    num, anchor, limit, fn = CHECKS[number - 1]
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure, reported like one
        ok, detail = False, f"raised {type(e).__name__}: {e}"
    return CheckResult(num, anchor, ok, detail, time.perf_counter() - t, limit)


def run_suite(numbers=None):
    return [run_check(n) for n in (numbers or range(1, len(CHECKS) + 1))]


__all__ = ["CHECKS", "CheckResult", "run_check", "run_suite"]
