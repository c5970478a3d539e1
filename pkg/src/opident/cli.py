"""Command-line front end: ``opident prove|check|compat|eval``.

Reports go to standard output, diagnostics to standard error.  Exit codes:

=========  ===========================================================
prove      0 proved, 2 compatibility failed, 3 inconclusive
check      0 valid, 2 invalid
compat     0 all hypotheses hold, 2 otherwise
eval       0 claim holds, 2 assumption violated or representation
           inconsistent (or hypotheses fail), 4 claim violated
any        1 on I/O or parse errors
=========  ===========================================================
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from .free_algebra import AlphabetMismatch
from .groebner import GBConfig
from .representation import (
    ConsistencyKind,
    HypothesisError,
    Verdict,
    check_representation_consistency,
    verify_theorem_instance,
)
from .textio import (
    FingerprintMismatch,
    ParseError,
    ProblemFile,
    parse_certificate,
    parse_problem,
    parse_representation,
    serialize_certificate,
)
from .theorem import CompatibilityReport, ProofStatus, check_certificate, prove_identity

log = logging.getLogger("opident")

EXIT_OK = 0
EXIT_IO = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3
EXIT_CLAIM_VIOLATED = 4


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _load_problem(path: str) -> ProblemFile:
    try:
        return parse_problem(_read(path))
    except ParseError as e:
        raise _UsageError(f"{path}: {e}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _gb_config(args) -> GBConfig:
    return GBConfig(max_degree=args.maxdeg, max_iterations=args.maxiter)


def _print_report(Q, F, names, f, report: CompatibilityReport, out):
    for name, g, uni, sig in zip(names, F, report.assumptions_uniform, report.assumption_signatures):
        verdict = "uniformly compatible" if uni else "NOT uniformly compatible"
        print(f"{name}: sigma = {Q.format_signature(sig)}  {verdict}", file=out)
    verdict = "compatible" if report.claim_compatible else "NOT compatible"
    print(f"claim: sigma = {Q.format_signature(report.claim_signature)}  {verdict}", file=out)


def cmd_prove(args) -> int:
    P = _load_problem(args.problem)
    attempt = prove_identity(P.claim, P.assumptions, P.quiver, _gb_config(args), P.assumption_names)
    if attempt.status is ProofStatus.FAILED_COMPAT:
        print("FailedCompat", file=sys.stdout)
        _print_report(P.quiver, P.assumptions, P.assumption_names, P.claim, attempt.report, sys.stdout)
        print(attempt.report.first_failure(), file=sys.stderr)
        return EXIT_FAIL
    if attempt.status is ProofStatus.INCONCLUSIVE:
        print("Inconclusive", file=sys.stdout)
        print("claim did not reduce to zero within the completion bounds", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    text = serialize_certificate(attempt.certificate)
    n = len(attempt.certificate.membership.summands)
    scope = "membership only (no quiver)" if P.quiver is None else "membership and compatibility"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise _UsageError(f"cannot write {args.out}: {e.strerror or e}") from None
        print(f"Proved: {scope}, {n} summands, certificate written to {args.out}")
    else:
        sys.stdout.write(text)
        print(f"Proved: {scope}, {n} summands", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    text = _read(args.certificate)
    try:
        cert = parse_certificate(text)
    except FingerprintMismatch as e:
        print(f"Invalid: {e}")
        return EXIT_FAIL
    except ParseError as e:
        raise _UsageError(f"{args.certificate}: {e}") from None
    if args.problem:
        P = _load_problem(args.problem)
        if P.alphabet != cert.alphabet:
            print("Invalid: certificate and problem use different variables")
            return EXIT_FAIL
        if list(P.assumptions) != list(cert.assumptions):
            print("Invalid: certificate assumptions differ from the problem")
            return EXIT_FAIL
        if P.claim != cert.claim:
            print("Invalid: certificate claim differs from the problem")
            return EXIT_FAIL
        if (P.quiver is None) != (cert.quiver is None):
            print("Invalid: certificate and problem disagree on whether a quiver is present")
            return EXIT_FAIL
        if P.quiver is not None:
            # recompute everything against the problem's quiver, not the stored one
            cert = dataclasses.replace(cert, quiver=P.quiver)
    try:
        result = check_certificate(cert)
    except AlphabetMismatch as e:
        result = None
        reason = str(e)
    else:
        reason = result.reason
    if result:
        print("Valid")
        return EXIT_OK
    print(f"Invalid: {reason}")
    return EXIT_FAIL


def cmd_compat(args) -> int:
    P = _load_problem(args.problem)
    if P.quiver is None:
        raise _UsageError(f"{args.problem}: no quiver section")
    report = CompatibilityReport.compute(P.quiver, P.assumptions, P.claim)
    _print_report(P.quiver, P.assumptions, P.assumption_names, P.claim, report, sys.stdout)
    print(f"structural consistency: {P.quiver.structural_consistency().value}")
    if report.ok:
        print("hypotheses hold")
        return EXIT_OK
    print(f"hypotheses fail: {report.first_failure()}")
    return EXIT_FAIL


def cmd_eval(args) -> int:
    P = _load_problem(args.problem)
    if P.quiver is None:
        raise _UsageError(f"{args.problem}: no quiver section")
    rep = P.representation
    if args.rep:
        try:
            rep = parse_representation(_read(args.rep), P.quiver)
        except ParseError as e:
            raise _UsageError(f"{args.rep}: {e}") from None
    if rep is None:
        raise _UsageError("no representation: add dim/matrix statements or pass --rep")
    Q = P.quiver
    cons = check_representation_consistency(rep, Q, args.maxpathlen)
    if cons.kind is ConsistencyKind.INCONSISTENT:
        p, q = cons.witness
        print(f"Inconsistent: parallel paths {_edge_names(p)} and {_edge_names(q)} differ")
        return EXIT_FAIL
    if cons.kind is ConsistencyKind.STRUCTURAL:
        print(f"consistency: structural ({cons.rule.value})")
    else:
        print(f"consistency: checked up to path length {cons.max_len}")
    try:
        res = verify_theorem_instance(rep, Q, P.assumptions, P.claim)
    except HypothesisError as e:
        print(f"hypotheses fail: {e}")
        return EXIT_FAIL
    for k, sig in res.checked:
        name = "claim" if k is None else P.assumption_names[k]
        print(f"realized {name} at {_pair(Q, sig)}")
    if res.verdict is Verdict.CLAIM_HOLDS:
        print("ClaimHolds")
        return EXIT_OK
    if res.verdict is Verdict.ASSUMPTION_VIOLATED:
        print(f"AssumptionViolated: {P.assumption_names[res.index]} at {_pair(Q, res.signature)}")
        return EXIT_FAIL
    print(f"ClaimViolated at {_pair(Q, res.signature)}")
    return EXIT_CLAIM_VIOLATED


def _pair(Q, sig) -> str:
    return f"({Q.vertices[sig[0]]},{Q.vertices[sig[1]]})"


def _edge_names(path) -> str:
    return "(" + " ".join(f"e{k + 1}" for k in path) + ")"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--maxdeg", type=_positive, default=12, help="degree bound for completion")
    common.add_argument("--maxiter", type=_positive, default=10000, help="iteration bound for completion")
    common.add_argument("--maxpathlen", type=_positive, default=8, help="path length for consistency checks")
    common.add_argument("--out", help="output file")
    common.add_argument("--verbose", "-v", action="store_true")

    ap = argparse.ArgumentParser(prog="opident", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("prove", parents=[common], help="prove a claim from assumptions")
    p.add_argument("problem")
    p.set_defaults(func=cmd_prove)
    p = sub.add_parser("check", parents=[common], help="verify a certificate")
    p.add_argument("certificate")
    p.add_argument("problem", nargs="?")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("compat", parents=[common], help="report signatures and compatibility")
    p.add_argument("problem")
    p.set_defaults(func=cmd_compat)
    p = sub.add_parser("eval", parents=[common], help="evaluate the claim on a representation")
    p.add_argument("problem")
    p.add_argument("--rep", help="representation file (overrides the problem's own)")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_IO if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
