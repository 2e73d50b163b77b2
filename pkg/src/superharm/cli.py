"""Command line interface.

    superharm fischer --m 2 --n 3 --kmax 8
    superharm branch --m 3 --n 3 --k 5
    superharm branch --m 2 --n 3 --k 4 --generalized
    superharm gt-basis --m 1 --n 1 --k 1
    superharm verify --suite fischer --format json

Exit codes: 0 success, 1 a verification failed, 2 usage error (bad
arguments, degree out of range, precondition violations).
"""

from __future__ import annotations

import argparse
import json
import sys

from .branching import branch_generalized, branch_harmonic
from .ck import ck_data, ck_extend, ck_extend_recursive
from .gtbasis import gt_basis, verify_gt_basis
from .harmonics import exceptional_indices, fischer_decomposition, verify_theorem_A
from .operators import sl2_relations_check
from .superpoly import (
    SuperPolynomial,
    SuperSignature,
    format_polynomial,
    monomial_basis,
)

SCHEMA_VERSION = "1"
DEFAULT_GUARD = 12

_GRID = (
    (1, 1),
    (2, 1),
    (2, 2),
    (3, 2),
    (2, 3),
    (0, 2),
    (3, 0),
)

_SUITES = ("sl2", "fischer", "theoremA", "ck", "branching", "gt")
_SUITE_KMAX = {"sl2": 4, "fischer": 6, "theoremA": 6, "ck": 4, "branching": 5, "gt": 5}


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superharm",
        description="Exact harmonic analysis on polynomial superspaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, signature=True, k=False, kmax=False):
        if signature:
            p.add_argument("--m", type=int, required=True, help="bosonic variables")
            p.add_argument("--n", type=int, required=True, help="fermionic pairs")
        if k:
            p.add_argument("--k", type=int, help="degree")
        if kmax:
            p.add_argument("--kmax", type=int, help="run all degrees up to this bound")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", help="write the result to this file instead of stdout")
        p.add_argument(
            "--guard",
            type=int,
            default=DEFAULT_GUARD,
            help=f"refuse degrees above this bound (default {DEFAULT_GUARD})",
        )

    p = sub.add_parser("fischer", help="decompose P_k into harmonic components")
    add_common(p, k=True, kmax=True)

    p = sub.add_parser("branch", help="branch (generalized) harmonics one bosonic variable down")
    add_common(p, k=True)
    p.add_argument(
        "--generalized",
        action="store_true",
        help="branch Ht_k at an exceptional degree instead of H_k",
    )

    p = sub.add_parser("gt-basis", help="print a chain-adapted basis, one element per line")
    add_common(p, k=True)
    p.add_argument("--target", choices=("H", "Ht"), default="H")

    p = sub.add_parser("verify", help="run an exact verification suite")
    p.add_argument("--suite", choices=_SUITES, required=True)
    p.add_argument("--m", type=int, help="restrict to one signature (with --n)")
    p.add_argument("--n", type=int, help="restrict to one signature (with --m)")
    p.add_argument("--kmax", type=int, help="override the suite degree bound")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the result to this file instead of stdout")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    return parser


def _checked_degree(value: int, guard: int, name: str = "k") -> int:
    if value < 0:
        raise UsageError(f"{name} must be nonnegative, got {value}")
    if value > guard:
        raise UsageError(
            f"{name}={value} exceeds the guard bound {guard}; "
            "raise --guard to compute this"
        )
    return value


def _signature(args) -> SuperSignature:
    try:
        return SuperSignature(args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- fischer -----------------------------------------------------------------


def _fischer_report_dict(rep) -> dict:
    return {
        "k": rep.k,
        "summands": [
            {"kind": s.kind, "degree": s.degree, "rpower": s.rpower, "dim": s.dim}
            for s in rep.summands
        ],
        "suppressed": list(rep.suppressed),
        "total_dim": rep.total_dim,
        "space_dim": rep.space_dim,
        "verified": rep.verified,
        "failure_witness": rep.failure_witness,
        "notes": list(rep.notes),
    }


def _fischer_text(sig, reports) -> str:
    blocks = []
    for rep in reports:
        lines = [f"signature {sig} degree {rep.k}"]
        if rep.summands:
            lines.append(f"  P_{rep.k} = " + " (+) ".join(s.describe() for s in rep.summands))
        else:
            lines.append(f"  P_{rep.k} = 0")
        if rep.suppressed:
            lines.append("  suppressed degrees: " + ", ".join(map(str, rep.suppressed)))
        dims = " + ".join(str(s.dim) for s in rep.summands) if rep.summands else "0"
        lines.append(f"  component dimensions: {dims} = {rep.space_dim}")
        for note in rep.notes:
            lines.append(f"  note: {note}")
        lines.append(f"  verified: {'yes' if rep.verified else 'NO'}")
        if rep.failure_witness:
            lines.append(f"  failure: {rep.failure_witness}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _run_fischer(args) -> int:
    sig = _signature(args)
    if (args.k is None) == (args.kmax is None):
        raise UsageError("fischer needs exactly one of --k or --kmax")
    if args.k is not None:
        degrees = [_checked_degree(args.k, args.guard)]
    else:
        degrees = range(_checked_degree(args.kmax, args.guard, "kmax") + 1)
    reports = [fischer_decomposition(sig, k) for k in degrees]
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "fischer",
            "signature": {"m": sig.m, "n": sig.n},
            "reports": [_fischer_report_dict(r) for r in reports],
        }
        _emit(_json_dump(payload), args)
    else:
        _emit(_fischer_text(sig, reports), args)
    return 0 if all(r.verified for r in reports) else 1


# -- branch ------------------------------------------------------------------


def _branch_report_dict(rep) -> dict:
    index_sets = None
    if rep.index_sets is not None:
        index_sets = {
            "exceptional": list(rep.index_sets.exceptional),
            "suppressed": list(rep.index_sets.suppressed),
            "ordinary": list(rep.index_sets.ordinary),
        }
    return {
        "k": rep.k,
        "mode": rep.mode,
        "lhs_kind": rep.lhs_kind,
        "lhs_dim": rep.lhs_dim,
        "index_sets": index_sets,
        "summands": [
            {
                "kind": s.kind,
                "degree": s.degree,
                "multiplicity": s.multiplicity,
                "dim": s.dim,
            }
            for s in rep.summands
        ],
        "checks": [{"name": name, "ok": ok} for name, ok in rep.checks],
        "verified": rep.verified,
        "notes": list(rep.notes),
    }


def _branch_text(sig, rep) -> str:
    lines = [f"signature {sig} degree {rep.k}", f"  mode: {rep.mode}"]
    lhs = f"{rep.lhs_kind}_{rep.k}"
    lines.append(f"  {lhs} = " + " (+) ".join(s.describe() for s in rep.summands))
    if rep.index_sets is not None and rep.index_sets.suppressed:
        lines.append(
            "  suppressed degrees: " + ", ".join(map(str, rep.index_sets.suppressed))
        )
    lines.append(f"  dimension: {rep.lhs_dim}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    lines.append("  checks:")
    for name, ok in rep.checks:
        lines.append(f"    [{'ok' if ok else 'FAIL'}] {name}")
    lines.append(f"  verified: {'yes' if rep.verified else 'NO'}")
    return "\n".join(lines) + "\n"


def _run_branch(args) -> int:
    sig = _signature(args)
    if args.k is None:
        raise UsageError("branch needs --k")
    k = _checked_degree(args.k, args.guard)
    try:
        rep = branch_generalized(sig, k) if args.generalized else branch_harmonic(sig, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "branch",
            "signature": {"m": sig.m, "n": sig.n},
            "report": _branch_report_dict(rep),
        }
        _emit(_json_dump(payload), args)
    else:
        _emit(_branch_text(sig, rep), args)
    return 0 if rep.verified else 1


# -- gt-basis ----------------------------------------------------------------


def _run_gt_basis(args) -> int:
    sig = _signature(args)
    if args.k is None:
        raise UsageError("gt-basis needs --k")
    k = _checked_degree(args.k, args.guard)
    basis = gt_basis(sig, k, args.target)
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "gt-basis",
            "signature": {"m": sig.m, "n": sig.n},
            "k": k,
            "target": args.target,
            "size": len(basis),
            "elements": [
                {"label": el.label.text(), "polynomial": format_polynomial(el.polynomial)}
                for el in basis
            ],
        }
        _emit(_json_dump(payload), args)
    else:
        lines = [
            f"{el.label.text()}\t{format_polynomial(el.polynomial)}" for el in basis
        ]
        _emit("".join(line + "\n" for line in lines), args)
    return 0


# -- verify ------------------------------------------------------------------


def _suite_sl2(sigs, kmax):
    for sig in sigs:
        for k in range(kmax + 1):
            for chk in sl2_relations_check(sig, k):
                yield f"sl2 {sig} k={k}: {chk.name}", chk.ok


def _suite_fischer(sigs, kmax):
    for sig in sigs:
        for k in range(kmax + 1):
            yield f"fischer {sig} k={k}", fischer_decomposition(sig, k).verified


def _suite_theorem_a(sigs, kmax):
    for sig in sigs:
        for k in range(kmax + 1):
            yield f"theoremA {sig} k={k}", verify_theorem_A(sig, k).verified


def _suite_ck(sigs, kmax):
    for sig in sigs:
        if sig.m == 0:
            continue
        for k in range(kmax + 1):
            ok = True
            for mono in monomial_basis(sig, k):
                p = SuperPolynomial(sig, {mono: 1})
                data = ck_data(p, k)
                if ck_extend(data) != p or ck_extend_recursive(data) != p:
                    ok = False
                    break
            yield f"ck round trip {sig} k={k}", ok


def _suite_branching(sigs, kmax):
    for sig in sigs:
        if sig.m == 0:
            continue
        for k in range(kmax + 1):
            yield f"branch {sig} k={k}", branch_harmonic(sig, k).verified
        window = sorted(exceptional_indices(sig.M))
        for k in window:
            if k <= kmax:
                yield f"branch generalized {sig} k={k}", branch_generalized(sig, k).verified


def _suite_gt(sigs, kmax):
    for sig in sigs:
        for k in range(kmax + 1):
            for target in ("H", "Ht"):
                rep = verify_gt_basis(sig, k, target)
                yield f"gt {sig} k={k} target={target}", rep.verified


_SUITE_RUNNERS = {
    "sl2": _suite_sl2,
    "fischer": _suite_fischer,
    "theoremA": _suite_theorem_a,
    "ck": _suite_ck,
    "branching": _suite_branching,
    "gt": _suite_gt,
}


def _run_verify(args) -> int:
    if (args.m is None) != (args.n is None):
        raise UsageError("--m and --n must be given together")
    if args.m is not None:
        try:
            sigs = [SuperSignature(args.m, args.n)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        sigs = [SuperSignature(m, n) for m, n in _GRID]
    kmax = args.kmax if args.kmax is not None else _SUITE_KMAX[args.suite]
    kmax = _checked_degree(kmax, args.guard, "kmax")
    results = list(_SUITE_RUNNERS[args.suite](sigs, kmax))
    failed = [name for name, ok in results if not ok]
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "suite": args.suite,
            "checks": [{"name": name, "ok": ok} for name, ok in results],
            "total": len(results),
            "failed": len(failed),
            "verified": not failed,
        }
        _emit(_json_dump(payload), args)
    else:
        lines = [f"[{'ok' if ok else 'FAIL'}] {name}" for name, ok in results]
        if failed:
            lines.append(f"suite {args.suite}: {len(results)} checks, {len(failed)} failed")
        else:
            lines.append(f"suite {args.suite}: {len(results)} checks, all passed")
        _emit("".join(line + "\n" for line in lines), args)
    return 1 if failed else 0


_RUNNERS = {
    "fischer": _run_fischer,
    "branch": _run_branch,
    "gt-basis": _run_gt_basis,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except UsageError as exc:
        print(f"superharm: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
