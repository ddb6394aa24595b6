import json
from fractions import Fraction

import pytest
from hypothesis import given

from copyables import fixtures
from copyables import serialize as S
from copyables.copyability import copyable_lattice, is_copyable_endo
from copyables.fdhilb import ClassicalStructure
from copyables.finrel import AbelianGroupoid, Relation
from copyables.matrix import I, Matrix, gauss
from copyables.vnalg import structure_algebra
from strategies import exact_matrices, relations


def test_matrix_json_shape():
    m = Matrix([[Fraction(1, 2), I], [gauss(Fraction(1, 2), Fraction(3, 4)), -1]])
    j = S.matrix_to_json(m)
    assert j == {"rows": 2, "cols": 2, "backend": "exact",
                 "entries": [["1/2", "i"], ["1/2+3/4 i", "-1"]]}
    a = S.matrix_to_json(Matrix([[0.5 + 1j]]))
    assert a["entries"] == [[[0.5, 1.0]]]


@given(exact_matrices(max_dim=3))
def test_exact_matrix_round_trip(m):
    assert S.matrix_from_json(json.loads(json.dumps(S.matrix_to_json(m)))) == m


def test_approx_matrix_round_trip():
    m = fixtures.hadamard().delta
    assert S.matrix_from_json(S.matrix_to_json(m)).equals(m, 0)


def test_exact_entries_omit_either_part():
    m = S.matrix_from_json({"rows": 1, "cols": 3, "backend": "exact", "entries": [["2/3", "-i", "1-2 i"]]})
    assert m == Matrix([[Fraction(2, 3), gauss(0, -1), gauss(1, -2)]])


@pytest.mark.parametrize("bad", [
    {"rows": 1, "cols": 2, "entries": [["1"]]},
    {"rows": 1, "cols": 1, "backend": "exact", "entries": [[0.5]]},
    {"rows": 1, "cols": 1, "backend": "approx", "entries": [["1"]]},
    {"rows": 1, "cols": 1, "backend": "fuzzy", "entries": [["1"]]},
    {"cols": 1, "entries": []},
])
def test_matrix_json_rejects(bad):
    with pytest.raises(ValueError):
        S.matrix_from_json(bad)


@pytest.mark.parametrize("d", [fixtures.computational(3), fixtures.rotation(), fixtures.circular()],
                         ids=lambda d: d.name)
def test_structure_round_trip(d):
    back = S.structure_from_json(json.loads(S.dumps(S.structure_to_json(d))))
    assert back.delta.equals(d.delta, 0)
    assert back.basis is not None and back.basis.dim == d.dim


def test_basis_json_builds_structure():
    d = S.structure_from_json(S.basis_to_json(fixtures.rotation_basis()))
    assert d.delta == fixtures.rotation().delta


@given(relations())
def test_relation_round_trip(r):
    assert S.relation_from_json(S.relation_to_json(r)) == r


def test_groupoid_round_trip():
    g = AbelianGroupoid.disjoint_union(AbelianGroupoid.cyclic(2), AbelianGroupoid.cyclic(1))
    j = S.groupoid_to_json(g)
    assert j["table"][0][2] == -1
    d = S.structure_from_json(j)
    assert d.model == "rel" and d.delta == ClassicalStructure.from_groupoid(g).delta
    d2 = S.structure_from_json(S.structure_to_json(d))
    assert d2.groupoid is not None and d2.delta == d.delta


def test_lattice_json():
    lat = copyable_lattice(fixtures.computational(2)).lattice
    j = lat.to_json()
    assert len(j["elements"]) == 4
    assert [0, 3] in j["order"] and [3, 0] not in j["order"]
    assert lat.dumps() == copyable_lattice(fixtures.computational(2)).lattice.dumps()


def test_algebra_round_trip():
    a = structure_algebra(fixtures.computational(3))
    j = S.algebra_to_json(a)
    assert j["dim"] == 3 and len(j["span"]) == 3 and len(j["provenance"]["projections"]) == 8
    b = S.algebra_from_json(json.loads(json.dumps(j)))
    assert b.same_span(a) and len(b.provenance) == 8


def test_verdict_json_has_both_sides():
    v = is_copyable_endo(Matrix([[1, 0], [0, 0]]), fixtures.computational(2))
    j = S.verdict_to_json(v)
    assert j["copyable"] and j["lhs"] == j["rhs"]


def test_malformed_json_reports_position():
    with pytest.raises(S.FormatError, match="line 2, column 1"):
        S.load_json_text('{"a":\n', "x.json")
