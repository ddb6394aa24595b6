"""Command-line front end: ``copyables <subcommand> [flags]``.

Exit codes: 0 when every reported check passes, 1 when one fails, 2 for
usage or input errors.  Report lines read ``[PASS|FAIL] <anchor> <detail>``
where the anchor names the module operation that was run.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import serialize
from .complementarity import (
    JointlyEpic,
    UnbiasedScope,
    completely_complementary,
    mutually_unbiased,
    partially_complementary,
)
from .copyability import copyable_lattice
from .fdhilb import Projection, verify_classical_structure
from .finrel import all_pers, per_copyable
from .lattice import (
    LatticeError,
    hasse,
    is_boolean,
    is_distributive,
    orthomodular_check,
    sublattice_closure,
)
from .matrix import APPROX, DEFAULT_EPS, EXACT
from .vnalg import (
    algebra_from_boolean,
    boolean_from_algebra,
    commutant,
    is_commutative,
    pc_algebras,
    structure_algebra,
)


class UsageError(Exception):
    pass


class Report:
    def __init__(self, out):
        self.out = out
        self.failed = False

    def check(self, ok, anchor, detail=""):
        self.failed |= not ok
        tag = "PASS" if ok else "FAIL"
        self.out.write(f"[{tag}] {anchor} {detail}".rstrip() + "\n")

    def info(self, text):
        self.out.write(f"       {text}\n")


# ---------------------------------------------------------------------------
# input


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    return serialize.load_json_text(text, source=str(path))


def _structure(path, args):
    d = serialize.structure_from_json(_read_json(path), args.eps)
    return _apply_backend(d, args)


def _apply_backend(d, args):
    if d.model != "hilb" or args.backend is None:
        return d
    if args.backend == APPROX:
        return d.to_approx()
    if d.backend != EXACT:
        raise UsageError("--backend exact given for an approximate input")
    return d


def _projections(path, args):
    obj = _read_json(path)
    items = obj.get("projections", obj) if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise UsageError(f"{path}: expected a list of kernels")
    out = [serialize.ksub_from_json(x, args.eps) for x in items]
    if args.backend == APPROX:
        out = [p.to_approx() if isinstance(p, Projection) else p for p in out]
    return out


def _write(path, text):
    Path(path).write_text(text)


def _emit_lattice(lat, args, name="KSub"):
    if args.dot:
        _write(args.dot, hasse(lat, name))
    if args.json:
        _write(args.json, serialize.dumps(lat.to_json()))


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_cs(args, rep):
    src = args.basis or args.delta
    if src is None:
        raise UsageError("verify-cs needs --basis or --delta")
    d = _structure(src, args)
    r = verify_classical_structure(d)
    for axiom in ("dagger_monic", "commutative", "associative", "hstar"):
        rep.check(getattr(r, axiom), f"fdhilb.verify_classical_structure/{axiom}", d.name)
    rep.info(f"frobenius (informational): {'holds' if r.frobenius else 'fails'}")
    if args.json:
        _write(args.json, serialize.dumps({"structure": d.name, "axioms": r.as_dict()}))


def cmd_copyables(args, rep):
    d = _structure(args.delta, args)
    probes = _projections(args.probes, args) if args.probes else ()
    fam = copyable_lattice(d, probes)
    lat = fam.lattice
    rep.check(not fam.anomalies, "copyability.copyable_lattice", f"{len(lat)} copyable kernels")
    for x in lat:
        rep.info(x.label())
    for q in fam.refuted_probes:
        rep.info(f"refuted probe {q.label()}")
    for why, x in fam.anomalies:
        rep.info(f"anomaly: {why}: {x.label()}")
    rep.check(fam.boolean, "lattice.is_boolean", _witness(fam.boolean_witness))
    ok, w = orthomodular_check(lat)
    rep.check(ok, "lattice.orthomodular_check", _witness(w))
    _emit_lattice(lat, args, "Copyables")


def _witness(w):
    if w is None:
        return ""
    return "witness " + " ".join(x.label() for x in w)


def cmd_lattice(args, rep):
    if args.delta:
        gens = list(copyable_lattice(_structure(args.delta, args)).lattice)
    elif args.projections:
        gens = _projections(args.projections, args)
    else:
        raise UsageError("lattice needs --delta or --projections")
    if not gens:
        raise UsageError("no generators given")
    lat = sublattice_closure(gens, bound=args.max_lattice)
    rep.info(f"{len(lat)} elements")
    ok, w = is_boolean(lat)
    rep.check(ok, "lattice.is_boolean", _witness(w))
    dist, w = is_distributive(lat)
    rep.check(dist == ok, "lattice.is_distributive", f"distributive={str(dist).lower()}")
    ok, w = orthomodular_check(lat)
    rep.check(ok, "lattice.orthomodular_check", _witness(w))
    _emit_lattice(lat, args)


def cmd_complement(args, rep):
    d1, d2 = _structure(args.delta1, args), _structure(args.delta2, args)
    scope = UnbiasedScope(args.unbiased_scope)
    r = partially_complementary(d1, d2, scopes=[scope] if d1.model == "hilb" else [])
    rep.check(
        r.partially_complementary,
        "complementarity.partially_complementary",
        f"PC={str(r.partially_complementary).lower()} " + _witness(r.witnesses or None),
    )
    rep.check(r.paths_agree, "complementarity.partially_complementary/paths")
    if d1.model == "hilb":
        mu = r.mutually_unbiased[scope]
        rep.check(mu, "complementarity.mutually_unbiased", f"MU={str(mu).lower()} scope={scope.value}")
    if args.json:
        _write(args.json, serialize.dumps(r.to_json()))


def cmd_mub(args, rep):
    if args.jointly_epic is None:
        raise UsageError("mub requires --jointly-epic info-complete|lattice-gen")
    ds = [_structure(p, args) for p in args.delta]
    scope = UnbiasedScope(args.unbiased_scope)
    for (i, a), (j, b) in itertools.combinations(enumerate(ds), 2):
        mu = mutually_unbiased(a, b, scope)
        rep.check(mu, "complementarity.mutually_unbiased", f"{i}/{j} scope={scope.value}")
    cc = completely_complementary(ds, JointlyEpic(args.jointly_epic))
    rep.check(cc.pairwise, "complementarity.completely_complementary/pairwise",
              f"failing pairs {cc.failing_pairs}" if cc.failing_pairs else "")
    detail = " ".join(f"{k}={v}" for k, v in sorted(cc.detail.items()))
    rep.check(cc.jointly_epic, f"complementarity.completely_complementary/{cc.interpretation.value}", detail)
    if args.json:
        _write(args.json, serialize.dumps({
            "interpretation": cc.interpretation.value,
            "pairwise": cc.pairwise,
            "jointly_epic": cc.jointly_epic,
            "failing_pairs": [list(p) for p in cc.failing_pairs],
            "detail": cc.detail,
        }))


def cmd_subalg(args, rep):
    algs = []
    for p in args.algebra or ():
        algs.append(serialize.algebra_from_json(_read_json(p), args.eps))
    for p in args.delta or ():
        algs.append(structure_algebra(_structure(p, args)))
    if not algs:
        raise UsageError("subalg needs --algebra or --delta")
    for i, a in enumerate(algs):
        rep.info(f"algebra {i}: span dim {a.span_dim} in M_{a.dim}")
        cc = commutant(commutant(a))
        rep.check(cc.same_span(a), "vnalg.commutant/double", f"algebra {i}")
        comm = is_commutative(a)
        rep.info(f"commutative={str(comm).lower()}")
        if comm and a.provenance is not None:
            lat = boolean_from_algebra(a)
            back = algebra_from_boolean(lat)
            rep.check(back.same_span(a), "vnalg.round_trip_check", f"algebra {i}: {len(lat)} projections")
    for (i, a), (j, b) in itertools.combinations(enumerate(algs), 2):
        pc = pc_algebras(a, b)
        rep.check(pc, "vnalg.pc_algebras", f"{i}/{j}")
    if args.json:
        _write(args.json, serialize.dumps([serialize.algebra_to_json(a) for a in algs]))


def cmd_rel(args, rep):
    d = _structure(args.groupoid, args)
    if d.model != "rel":
        raise UsageError("rel needs a groupoid or relational structure")
    r = verify_classical_structure(d)
    for axiom in ("dagger_monic", "commutative", "associative", "hstar"):
        rep.check(getattr(r, axiom), f"fdhilb.verify_classical_structure/{axiom}", d.name)
    lat = copyable_lattice(d).lattice
    rep.info(f"{len(lat)} copyable subsets: " + " ".join(x.label() for x in lat))
    rep.check(is_boolean(lat)[0], "lattice.is_boolean")
    if d.groupoid is not None and d.dim <= args.max_pers:
        agree = n = copy = 0
        for q in all_pers(d.dim):
            direct = (d.delta @ q).equals(q.kron(q) @ d.delta)
            cong = per_copyable(q, d.groupoid)
            agree += direct == cong
            copy += cong
            n += 1
        rep.check(agree == n, "finrel.per_copyable", f"{copy}/{n} PERs copyable; routes agree on {agree}")
    _emit_lattice(lat, args, "Copyables")


def cmd_suite(args, rep):
    from .suite import run_suite

    for r in run_suite(args.only or None):
        rep.failed |= not r.passed
        rep.out.write(r.line(args.timing) + "\n")


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=[EXACT, APPROX], default=None,
                        help="numeric backend (default: inferred from input)")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS)
    common.add_argument("--unbiased-scope", choices=[s.value for s in UnbiasedScope],
                        default=UnbiasedScope.ATOMS.value)
    common.add_argument("--jointly-epic", choices=[j.value for j in JointlyEpic], default=None)
    common.add_argument("--dot", metavar="PATH")
    common.add_argument("--json", metavar="PATH")
    common.add_argument("--max-lattice", type=int, default=4096)

    p = argparse.ArgumentParser(prog="copyables", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-cs", parents=[common], help="check classical-structure axioms")
    s.add_argument("--basis")
    s.add_argument("--delta")
    s.set_defaults(func=cmd_verify_cs)

    s = sub.add_parser("copyables", parents=[common], help="copyable kernels of a structure")
    s.add_argument("--delta", required=True)
    s.add_argument("--probes", help="JSON list of projections to test as well")
    s.set_defaults(func=cmd_copyables)

    s = sub.add_parser("lattice", parents=[common], help="close generators into a lattice")
    s.add_argument("--delta")
    s.add_argument("--projections")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("complement", parents=[common], help="partial complementarity of two structures")
    s.add_argument("--delta1", required=True)
    s.add_argument("--delta2", required=True)
    s.set_defaults(func=cmd_complement)

    s = sub.add_parser("mub", parents=[common], help="mutual unbiasedness and complete complementarity")
    s.add_argument("--delta", action="append", required=True)
    s.set_defaults(func=cmd_mub)

    s = sub.add_parser("subalg", parents=[common], help="commutative subalgebras and commutants")
    s.add_argument("--algebra", action="append")
    s.add_argument("--delta", action="append")
    s.set_defaults(func=cmd_subalg)

    s = sub.add_parser("rel", parents=[common], help="classical structures in sets and relations")
    s.add_argument("--groupoid", required=True)
    s.add_argument("--max-pers", type=int, default=5, help="enumerate PERs up to this carrier size")
    s.set_defaults(func=cmd_rel)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--only", type=int, action="append", choices=range(1, 13), metavar="N")
    s.add_argument("--timing", action="store_true", help="append elapsed times (not deterministic)")
    s.set_defaults(func=cmd_suite)
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.eps <= 0 or args.max_lattice < 1:
        err.write("copyables: --eps and --max-lattice must be positive\n")
        return 2
    rep = Report(out)
    try:
        args.func(args, rep)
    except (UsageError, serialize.FormatError, json.JSONDecodeError) as e:
        err.write(f"copyables: {e}\n")
        return 2
    except LatticeError as e:
        err.write(f"copyables: {e}\n")
        return 2
    except (ValueError, TypeError) as e:
        err.write(f"copyables: invalid input: {e}\n")
        return 2
    return 1 if rep.failed else 0


def main():
    sys.exit(run())


__all__ = ["build_parser", "main", "run"]
