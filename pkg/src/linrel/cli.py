"""Command-line front end.

Every command prints one JSON document on standard output.  Exit codes:
0 success, 1 precondition or criterion failure (or an unknown name),
2 a law produced a counterexample, 3 the input could not be parsed.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .exceptions import CriterionError, DimensionError, PreconditionError
from .factorization import (
    douglas_criterion,
    douglas_witness,
    left_projection_criterion,
    left_projection_witness,
    right_projection_criterion,
    right_projection_witness,
)
from .field import FieldSpec
from .generators import EXHAUSTIVE, RANDOM, GenerationError, GeneratorConfig
from .jsonio import Workspace, WorkspaceError, dumps, load_workspace, relation_to_json, subspace_to_json
from .laws import check_law, lookup, registry
from .mp2 import (
    is_mp2_search_complete,
    mp2_certificate_check,
    mp2_membership_bruteforce,
    mp2_necessary,
    mp2_necessary_partial,
    mp2_search,
    mp_times_projection,
)
from .projections import classify
from .relation import compose, identity, inverse, pointwise_diff, pointwise_sum, subspace_sum

EXIT_OK, EXIT_FAILURE, EXIT_COUNTEREXAMPLE, EXIT_PARSE = 0, 1, 2, 3

FLAG_NAMES = {
    "operator": "operator",
    "everywhere_defined": "everywhere_defined",
    "idempotent": "idempotent",
    "super_idempotent": "super_idempotent",
    "multivalued_projection": "mp",
    "projection": "projection",
}


class UsageError(Exception):
    """Bad command line; reported with the parse-error exit code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Done(Exception):
    def __init__(self, payload, code):
        super().__init__(code)
        self.payload = payload
        self.code = code


def _fail(message, code=EXIT_FAILURE, **extra):
    raise _Done({"error": message, **extra}, code)


def _load(path) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise WorkspaceError(f"cannot read {path}: {exc.strerror}") from exc
    return load_workspace(text)


def _relation(ws, name):
    try:
        return ws.relation(name)
    except KeyError as exc:
        _fail(exc.args[0])


def _subspace(ws, name):
    try:
        return ws.subspace(name)
    except KeyError as exc:
        _fail(exc.args[0])


def _space_json(S):
    return {"dim": S.dim, **subspace_to_json(S)}


# -- commands --------------------------------------------------------------------------


def cmd_analyze(args):
    ws = _load(args.file)
    T = _relation(ws, args.name)
    out = {
        "name": args.name,
        "field": ws.field.name,
        "relation": relation_to_json(T),
        "dom": _space_json(T.dom),
        "ran": _space_json(T.ran),
        "ker": _space_json(T.ker),
        "mul": _space_json(T.mul),
    }
    if T.is_endo:
        kind = classify(T)
        out["flags"] = sorted(FLAG_NAMES[f] for f in kind.flags())
    else:
        out["flags"] = sorted(n for n, ok in (("operator", T.is_operator),
                                              ("everywhere_defined", T.is_everywhere_defined)) if ok)
    return out


def cmd_compose(args):
    ws = _load(args.file)
    rels = [_relation(ws, n) for n in args.names]
    result = rels[-1]
    for R in reversed(rels[:-1]):
        result = compose(R, result)
    return relation_to_json(result)


def cmd_inverse(args):
    ws = _load(args.file)
    return relation_to_json(inverse(_relation(ws, args.name)))


def cmd_sum(args):
    ws = _load(args.file)
    if all(n in ws.subspaces for n in args.names):
        spaces = [ws.subspaces[n] for n in args.names]
        total = spaces[0]
        for S in spaces[1:]:
            total = total + S
        return subspace_to_json(total)
    rels = [_relation(ws, n) for n in args.names]
    op = subspace_sum if args.subspace else (pointwise_diff if args.difference else pointwise_sum)
    total = rels[0]
    for T in rels[1:]:
        total = op(total, T)
    return relation_to_json(total)


def _criterion_failure(failed):
    _fail("criterion failed: " + "; ".join(failed), failed=list(failed))


def _witness_json(w):
    return {
        "mode": w.mode,
        "factors": [relation_to_json(F) for F in w.factors],
        "recomposition": relation_to_json(w.recomposition),
        "target": relation_to_json(w.target),
        "exact": w.exact,
    }


def cmd_factorize(args):
    ws = _load(args.file)
    if args.mode == "mp2":
        return _factorize_mp2(ws, args)
    if len(args.names) != 2:
        _fail(f"factorize {args.mode} takes two relation names R S")
    R, S = (_relation(ws, n) for n in args.names)
    if args.mode == "douglas":
        crit = douglas_criterion(R, S)
        if not crit:
            _criterion_failure(crit.failed)
        out = _witness_json(douglas_witness(R, S))
    elif args.mode == "right-proj":
        crit = right_projection_criterion(R, S)
        if not crit:
            _criterion_failure(crit.failed)
        out = _witness_json(right_projection_witness(R, S))
    else:
        if R.is_operator and S.is_operator:
            crit = left_projection_criterion(R, S)
            if not crit:
                _criterion_failure(crit.failed)
        w = left_projection_witness(R, S)
        if w is None:
            _fail("no projection Q with R = QS and Q(mul S) = mul R was found (the search is incomplete for relations)",
                  failed=["no left projection factor found"])
        out = _witness_json(w)
    out["criterion"] = {"holds": True, "failed": []}
    return out


def _factorize_mp2(ws, args):
    if len(args.names) == 2:
        E, F = (_relation(ws, n) for n in args.names)
        w = mp_times_projection(E, F)
    elif len(args.names) == 1:
        T = _relation(ws, args.names[0])
        if args.certificate:
            w = mp2_certificate_check(T, _subspace(ws, args.certificate))
            if w is None:
                _criterion_failure(["dom T ≠ {x: T(x)=P(x)} + ker T"])
        else:
            w = mp2_search(T)
            if w is None:
                decided = is_mp2_search_complete(T) or not mp2_necessary_partial(T)
                status = "not in Mp²" if decided else "unknown"
                _fail(f"no Mp² witness found ({status})", failed=["no certificate found"], member=status)
    else:
        _fail("factorize mp2 takes E F, or T with --certificate")
    return {
        "mode": "mp2",
        "factors": [relation_to_json(w.P), relation_to_json(w.Q0)],
        "recomposition": relation_to_json(compose(w.P, w.Q0)),
        "target": relation_to_json(w.product),
        "exact": w.check(),
        "criterion": {"holds": True, "failed": []},
    }


def cmd_mp2(args):
    ws = _load(args.file)
    T = _relation(ws, args.name)
    if not T.is_endo:
        raise DimensionError("Mp² membership is for relations on one space")
    if args.necessary:
        D = pointwise_diff(T, identity(T.n, T.field))
        return {
            "necessary": mp2_necessary(T),
            "necessary_partial": mp2_necessary_partial(T),
            "dim_ran_T_minus_I": D.ran.dim,
            "dim_ker": T.ker.dim,
            "dim_mul": T.mul.dim,
            "codim_dom": T.n - T.dom.dim,
        }
    if args.oracle:
        found = mp2_membership_bruteforce(T)
        return {"member": found is not None,
                "factors": None if found is None else [relation_to_json(F) for F in found]}
    if args.certificate:
        w = mp2_certificate_check(T, _subspace(ws, args.certificate))
    else:
        w = mp2_search(T)
    if w is None:
        if args.certificate:
            member = "certificate rejected"
        elif is_mp2_search_complete(T) or not mp2_necessary_partial(T):
            member = False
        else:
            member = "unknown"
        return {"member": member, "witness": None}
    return {"member": True, "witness": {"P": relation_to_json(w.P), "Q0": relation_to_json(w.Q0)}}


def cmd_check(args):
    try:
        field = FieldSpec.from_name(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.law == "all":
        laws = registry()
    else:
        try:
            laws = [lookup(args.law)]
        except KeyError as exc:
            _fail(exc.args[0])
    mode = EXHAUSTIVE if args.exhaustive else RANDOM
    config = GeneratorConfig(field, args.dim, mode, args.seed, args.trials)
    verdicts = [check_law(law, config) for law in laws]
    passed = all(v.passed for v in verdicts)
    out = {
        "field": field.name,
        "dim": args.dim,
        "mode": mode,
        "seed": args.seed,
        "trials": args.trials if mode == RANDOM else None,
        "passed": passed,
        "verdicts": [v.to_json() for v in verdicts],
    }
    if not passed:
        raise _Done(out, EXIT_COUNTEREXAMPLE)
    return out


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = _Parser(prog="linrel", description="Exact calculus of linear relations.", parents=[common])
    parser.add_argument("--version", action="version", version=f"linrel {__version__}")
    cmds = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = cmds.add_parser("analyze", parents=[common], help="parts and classification of a relation")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(run=cmd_analyze)

    p = cmds.add_parser("compose", parents=[common], help="compose relations; the rightmost is applied first")
    p.add_argument("file")
    p.add_argument("names", nargs="+")
    p.set_defaults(run=cmd_compose)

    p = cmds.add_parser("inverse", parents=[common], help="inverse relation")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(run=cmd_inverse)

    p = cmds.add_parser("sum", parents=[common], help="pointwise sum of relations, or sum of subspaces")
    p.add_argument("file")
    p.add_argument("names", nargs="+")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--subspace", action="store_true", help="sum of graphs instead of the pointwise sum")
    kind.add_argument("--difference", action="store_true", help="pointwise difference")
    p.set_defaults(run=cmd_sum)

    p = cmds.add_parser("factorize", parents=[common], help="solve R = S X, R = S Q, R = Q S or T = P Q0")
    p.add_argument("file")
    p.add_argument("mode", choices=["douglas", "right-proj", "left-proj", "mp2"])
    p.add_argument("names", nargs="+")
    p.add_argument("--certificate", help="subspace name used as Mp² certificate (mode mp2, single relation)")
    p.set_defaults(run=cmd_factorize)

    p = cmds.add_parser("mp2", parents=[common], help="membership in products of two multivalued projections")
    p.add_argument("file")
    p.add_argument("name")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--oracle", action="store_true", help="exhaustive search over a small prime field")
    how.add_argument("--certificate", help="name of a subspace S with S ∩ ran T = mul T")
    how.add_argument("--necessary", action="store_true", help="only the dimension bound")
    p.set_defaults(run=cmd_mp2)

    p = cmds.add_parser("check", parents=[common], help="run a law (or all) on generated instances")
    p.add_argument("law")
    p.add_argument("--field", default="f2")
    p.add_argument("--dim", type=int, default=2)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(run=cmd_check)
    return parser


def run(argv=None):
    """Run the CLI without printing; returns ``(exit_code, payload, pretty)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_PARSE, {"error": f"usage: {exc}"}, False
    pretty = getattr(args, "pretty", False)
    try:
        return EXIT_OK, args.run(args), pretty
    except _Done as done:
        return done.code, done.payload, pretty
    except (WorkspaceError, UsageError) as exc:
        return EXIT_PARSE, {"error": str(exc)}, pretty
    except CriterionError as exc:
        return EXIT_FAILURE, {"error": str(exc), "failed": list(exc.failed)}, pretty
    except (PreconditionError, DimensionError, GenerationError) as exc:
        return EXIT_FAILURE, {"error": str(exc)}, pretty


def main(argv=None) -> int:
    code, payload, pretty = run(argv)
    sys.stdout.write(dumps(payload, pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
