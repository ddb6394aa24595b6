"""JSON encodings for matrices, bases, structures, relations, lattices and algebras.

Exact entries are strings ``"a/b+c/d i"``; approximate entries are
``[re, im]`` pairs.  Loaders accept the matching dicts and raise
``ValueError`` on malformed payloads.
"""

from __future__ import annotations

import json

from .fdhilb import ClassicalStructure, OrthonormalBasis, Projection, make_delta
from .finrel import AbelianGroupoid, Relation, Subset
from .matrix import APPROX, DEFAULT_EPS, EXACT, Matrix, format_exact, parse_exact


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrices


def _entry(z, backend):
    if backend == EXACT:
        return format_exact(z)
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _parse_entry(x, backend):
    if backend == EXACT:
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise FormatError(f"exact entries are strings or integers, got {x!r}")
        return parse_exact(x)
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, (int, float)) for t in x):
        return complex(x[0], x[1])
    raise FormatError(f"approx entries are [re, im] pairs, got {x!r}")


def matrix_to_json(m):
    return {
        "rows": m.rows,
        "cols": m.cols,
        "backend": m.backend,
        "entries": [[_entry(z, m.backend) for z in row] for row in m.a],
    }


def matrix_from_json(obj):
    _require(obj, ("rows", "cols", "entries"), "matrix")
    backend = obj.get("backend", EXACT)
    if backend not in (EXACT, APPROX):
        raise FormatError(f"unknown backend {backend!r}")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise FormatError(f"entries do not form a {rows} x {cols} array")
    data = [[_parse_entry(x, backend) for x in r] for r in entries]
    if rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols, backend)
    return Matrix(data, backend)


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise FormatError(f"{what} JSON must be an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{what} JSON lacks {', '.join(missing)}")


# ---------------------------------------------------------------------------
# bases and structures


def basis_to_json(b):
    return {
        "dim": b.dim,
        "backend": b.backend,
        "vectors": [[_entry(z, b.backend) for z in v.a[:, 0]] for v in b],
    }


def basis_from_json(obj, eps=DEFAULT_EPS):
    _require(obj, ("dim", "vectors"), "basis")
    backend = obj.get("backend", EXACT)
    d = obj["dim"]
    vecs = []
    for v in obj["vectors"]:
        if len(v) != d:
            raise FormatError(f"basis vector of length {len(v)} in dimension {d}")
        vecs.append(Matrix([[_parse_entry(x, backend)] for x in v], backend))
    return OrthonormalBasis(vecs, eps)


def relation_to_json(r):
    return {"src": r.src, "dst": r.dst, "pairs": [list(p) for p in r.pairs()]}


def relation_from_json(obj):
    _require(obj, ("src", "dst", "pairs"), "relation")
    return Relation.from_pairs(obj["src"], obj["dst"], [tuple(p) for p in obj["pairs"]])


def groupoid_to_json(g):
    return {"carrier": g.n, "table": g.table.tolist()}


def groupoid_from_json(obj):
    _require(obj, ("carrier", "table"), "groupoid")
    t = obj["table"]
    if len(t) != obj["carrier"]:
        raise FormatError("table size differs from carrier")
    return AbelianGroupoid(t)


def structure_to_json(d):
    out = {"model": d.model, "name": d.name}
    if d.model == "hilb":
        out["delta"] = matrix_to_json(d.delta)
        if d.basis is not None:
            out["basis"] = basis_to_json(d.basis)
    else:
        out["delta"] = relation_to_json(d.delta)
        if d.groupoid is not None:
            out["groupoid"] = groupoid_to_json(d.groupoid)
    return out


def structure_from_json(obj, eps=DEFAULT_EPS):
    """Accepts a structure, a bare basis or a bare groupoid."""
    if not isinstance(obj, dict):
        raise FormatError("structure JSON must be an object")
    name = obj.get("name", "")
    if "vectors" in obj:
        return make_delta(basis_from_json(obj, eps), name=name)
    if "table" in obj:
        return ClassicalStructure.from_groupoid(groupoid_from_json(obj), name=name)
    _require(obj, ("delta",), "structure")
    delta = obj["delta"]
    if "pairs" in delta:
        g = groupoid_from_json(obj["groupoid"]) if "groupoid" in obj else None
        return ClassicalStructure(relation_from_json(delta), groupoid=g, name=name)
    basis = basis_from_json(obj["basis"], eps) if "basis" in obj else None
    return ClassicalStructure(matrix_from_json(delta), basis, eps=eps, name=name)


# ---------------------------------------------------------------------------
# kernels, lattices, algebras, reports


def ksub_to_json(x):
    if isinstance(x, Projection):
        return matrix_to_json(x.p)
    if isinstance(x, Subset):
        return {"carrier": x.n, "members": list(x)}
    return x.label()


def ksub_from_json(obj, eps=DEFAULT_EPS):
    if isinstance(obj, dict) and "members" in obj:
        return Subset(obj["carrier"], obj["members"])
    return Projection(matrix_from_json(obj), eps)


def lattice_to_json(lat):
    return lat.to_json()


def algebra_to_json(alg):
    out = {"dim": alg.dim, "span": [matrix_to_json(m) for m in alg.basis]}
    if alg.provenance is not None:
        out["provenance"] = {"projections": [matrix_to_json(p.p) for p in alg.provenance]}
    return out


def algebra_from_json(obj, eps=DEFAULT_EPS):
    from .vnalg import MatrixAlgebra

    _require(obj, ("dim", "span"), "algebra")
    span = [matrix_from_json(m) for m in obj["span"]]
    prov = obj.get("provenance", {}).get("projections")
    if prov is not None:
        prov = [Projection(matrix_from_json(m), eps) for m in prov]
    return MatrixAlgebra(obj["dim"], span, prov, eps)


def payload_to_json(x):
    """Best-effort encoding of verdict sides (matrices or relations)."""
    if isinstance(x, Matrix):
        return matrix_to_json(x)
    if isinstance(x, Relation):
        return relation_to_json(x)
    return ksub_to_json(x)


def verdict_to_json(v):
    return {
        "copyable": v.copyable,
        "deviation": float(v.deviation),
        "lhs": payload_to_json(v.lhs),
        "rhs": payload_to_json(v.rhs),
    }


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load_json_text(text, source="<input>"):
    """Parse JSON, reporting line and column on failure."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{source}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


__all__ = [
    "FormatError",
    "algebra_from_json",
    "algebra_to_json",
    "basis_from_json",
    "basis_to_json",
    "dumps",
    "groupoid_from_json",
    "groupoid_to_json",
    "ksub_from_json",
    "ksub_to_json",
    "lattice_to_json",
    "load_json_text",
    "matrix_from_json",
    "matrix_to_json",
    "relation_from_json",
    "relation_to_json",
    "structure_from_json",
    "structure_to_json",
    "verdict_to_json",
]
