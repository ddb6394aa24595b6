import itertools

import numpy as np
import pytest
from hypothesis import given

from copyables.fdhilb import ClassicalStructure, verify_classical_structure
from copyables.finrel import (
    AbelianGroupoid,
    InvalidGroupoid,
    NotAPER,
    Relation,
    Subset,
    abelian_groups,
    all_pers,
    all_subsets,
    groupoid_delta,
    per_copyable,
    per_from_classes,
    rel_compose,
    rel_copyable,
    rel_dagger,
    rel_kernel,
    rel_tensor,
)
from strategies import relations

Z1, Z2, Z4 = (AbelianGroupoid.cyclic(n) for n in (1, 2, 4))


def test_relation_plumbing():
    assert rel_dagger(Relation.identity(3)) == Relation.identity(3)
    r = Relation.from_pairs(2, 3, [(0, 1), (1, 2)])
    assert rel_compose(r, Relation.empty(2, 2)) == Relation.empty(2, 3)
    assert rel_tensor(Relation.identity(2), Relation.identity(3)) == Relation.identity(6)


def test_tensor_pair_encoding():
    r = Relation.from_pairs(2, 2, [(0, 1)])
    s = Relation.from_pairs(3, 3, [(2, 0)])
    assert (r.kron(s)).pairs() == [(0 * 3 + 2, 1 * 3 + 0)]


def test_rel_kernel_examples():
    assert rel_kernel(Relation.empty(3, 2)) == Subset(3, [0, 1, 2])
    assert rel_kernel(Relation.identity(3)) == Subset(3, [])
    assert rel_kernel(Relation.from_pairs(2, 2, [(0, 0)])) == Subset(2, [1])


def _pairs(delta, n):
    return sorted((z, divmod(xy, n)) for z, xy in delta.pairs())


def test_groupoid_delta_examples():
    assert _pairs(groupoid_delta(Z2), 2) == [(0, (0, 0)), (0, (1, 1)), (1, (0, 1)), (1, (1, 0))]
    assert _pairs(groupoid_delta(Z1), 1) == [(0, (0, 0))]
    g = AbelianGroupoid.disjoint_union(Z2, Z1)
    ps = _pairs(groupoid_delta(g), 3)
    assert len(ps) == 5
    assert all((x < 2) == (y < 2) for _, (x, y) in ps)


@pytest.mark.parametrize("g", [Z1, Z2, Z4, AbelianGroupoid.disjoint_union(Z2, Z1),
                               AbelianGroupoid.product(Z2, Z2)])
def test_groupoid_delta_is_a_classical_structure(g):
    assert verify_classical_structure(ClassicalStructure.from_groupoid(g)).ok


def test_invalid_groupoids_rejected():
    with pytest.raises(InvalidGroupoid):
        AbelianGroupoid([[0, 1], [0, 1]])  # no inverses
    with pytest.raises(InvalidGroupoid):
        AbelianGroupoid([[0, 1, 2], [1, 0, 2], [2, 2, 0]])  # 2 . 2 = 0 leaves the component
    with pytest.raises(InvalidGroupoid):
        AbelianGroupoid([[0, -1], [0, 1]])  # definedness not symmetric


def test_abelian_group_counts():
    assert [len(abelian_groups(n)) for n in range(1, 9)] == [1, 1, 1, 2, 1, 1, 1, 3]


def test_rel_copyable_examples():
    for g in (Z2, Z4, AbelianGroupoid.disjoint_union(Z2, Z1)):
        assert rel_copyable(Subset(g.n, []), g)
        assert rel_copyable(Subset(g.n, range(g.n)), g)
    assert not rel_copyable(Subset(2, [0]), Z2)
    proper = [s for s in all_subsets(4) if 0 < len(s) < 4]
    assert len(proper) == 14
    assert not any(rel_copyable(s, Z4) for s in proper)


def test_rel_copyable_matches_direct_evaluation():
    for g in (Z2, Z4, AbelianGroupoid.disjoint_union(Z2, Z1), AbelianGroupoid.disjoint_union(Z1, Z1)):
        d = groupoid_delta(g)
        for s in all_subsets(g.n):
            p = s.as_relation()
            assert rel_copyable(s, g) == (d @ p).equals(p.kron(p) @ d)


def test_disjoint_union_copyables_are_component_unions():
    # Observation only: unions of whole components are copyable.
    g = AbelianGroupoid.disjoint_union(Z2, Z1)
    found = [s.mask for s in all_subsets(3) if rel_copyable(s, g)]
    assert found == [0b000, 0b011, 0b100, 0b111]


def test_per_examples():
    assert per_copyable(per_from_classes(2, [[0, 1]]), Z2)
    assert per_copyable(Relation.identity(2), Z2)
    assert per_copyable(per_from_classes(4, [[0, 2], [1, 3]]), Z4)
    assert not per_copyable(per_from_classes(4, [[0, 1], [2, 3]]), Z4)
    with pytest.raises(NotAPER):
        per_copyable(Relation.from_pairs(2, 2, [(0, 1)]), Z2)


def _brute_force_pers(n):
    out = []
    for bits in itertools.product([False, True], repeat=n * n):
        r = Relation(np.array(bits, dtype=bool).reshape(n, n))
        if r.is_symmetric() and r.is_transitive():
            out.append(r)
    return out


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_all_pers_matches_brute_force(n):
    fast = sorted(tuple(map(tuple, q.pairs())) for q in all_pers(n))
    slow = sorted(tuple(map(tuple, q.pairs())) for q in _brute_force_pers(n))
    assert fast == slow


def test_per_counts_are_shifted_bell_numbers():
    assert [len(all_pers(n)) for n in range(5)] == [1, 2, 5, 15, 52]


def test_per_routes_agree_on_small_groupoids():
    from copyables.fixtures import small_groupoids

    for g in small_groupoids(4):
        d = groupoid_delta(g)
        for q in all_pers(g.n):
            assert per_copyable(q, g) == (d @ q).equals(q.kron(q) @ d)


@given(relations(), relations())
def test_rel_kernel_coherence(f, g):
    lhs = rel_kernel(f).kron(rel_kernel(g))
    rhs = rel_kernel(f.kron(Relation.identity(g.src))).meet(
        rel_kernel(Relation.identity(f.src).kron(g))
    )
    assert lhs == rhs


@given(relations())
def test_rel_kernel_of_square_tensor_is_the_union(f):
    n = Relation.identity(f.src)
    left, right = rel_kernel(f.kron(n)), rel_kernel(n.kron(f))
    assert rel_kernel(f.kron(f)) == left.join(right)
    assert rel_kernel(f).kron(rel_kernel(f)) == left.meet(right)
