"""Command-line front end: ``wildmatroid <command> ...``.

Exit codes: 0 success, 1 a check or precondition failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from itertools import combinations

from . import __version__, kernels
from .constructions import CheckFailed, build_mplus_witness, recheck, verify_union_wildness
from .core import GroundTooLarge, MatroidError, verify_axioms
from .fields import QQ, field_by_name
from .ops import circuits_of_plus_via_lemma33, minus, plus, union, wild_scan
from .periodic import format_edge
from .serialize import (
    FormatError,
    certificate_from_json,
    certificate_to_json,
    coefficients_from_json,
    coefficients_to_json,
    dumps,
    family_to_json,
    graph_from_json,
    loads,
    matroid_from_json,
    matroid_to_json,
)
from .thinsums import (
    RayedThinFamily,
    ThinSumsError,
    build_lambda_f_oneray,
    build_lambda_f_threerung,
    canonical_chain_family,
    check_thm53_finite,
    graph_family,
    random_chain_family,
    run_chain,
)

OK, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str):
    try:
        return loads(_read(path))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _matroid(path: str, check: bool = True):
    try:
        return matroid_from_json(_load(path), check=check)
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str) -> None:
    out = dumps(payload) if args.json else text.rstrip("\n") + "\n"
    target = getattr(args, "output", None)
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
        if not args.json:
            print(f"wrote {target}")
        else:
            sys.stdout.write(out)
    else:
        sys.stdout.write(out)


def _fmt_set(s) -> str:
    return "{" + ",".join(sorted(str(x) for x in s)) + "}"


# -- matroid commands -------------------------------------------------------


def cmd_verify_axioms(args) -> int:
    obj = _load(args.path)
    if isinstance(obj, dict) and "independent" in obj:
        ground = obj.get("ground")
        indep = obj["independent"]
        if not isinstance(ground, list) or not isinstance(indep, list):
            raise InputError(f"{args.path}: 'ground' and 'independent' must be lists")
    else:
        try:
            ground = obj["ground"]
            bases = obj["bases"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.path}: missing field {exc}") from exc
        indep = {frozenset(s) for b in bases for r in range(len(b) + 1) for s in combinations(b, r)}
    verdict = verify_axioms(ground, indep)
    payload = {"ok": verdict.ok, "axiom": verdict.axiom, "witness": [sorted(map(str, w)) for w in verdict.witness],
               "note": verdict.note}
    if verdict.ok:
        text = f"ok: (I1)-(I3) hold; {verdict.note}"
    else:
        text = f"violated ({verdict.axiom}); witness: " + ", ".join(_fmt_set(w) for w in verdict.witness)
    _emit(args, payload, text)
    return OK if verdict.ok else FAIL


def _matroid_result(args, m) -> int:
    payload = matroid_to_json(m)
    text = dumps(payload)
    _emit(args, payload, text)
    return OK


def cmd_op(args) -> int:
    op = args.op
    if op == "union":
        if len(args.paths) != 2:
            raise InputError("union takes exactly two matroid files")
        a, b = (_matroid(p) for p in args.paths)
        return _matroid_result(args, union(a, b))
    if len(args.paths) != 1:
        raise InputError(f"{op} takes exactly one matroid file")
    m = _matroid(args.paths[0])
    if op == "plus":
        return _matroid_result(args, plus(m))
    if op == "minus":
        return _matroid_result(args, minus(m))
    if op == "dual":
        return _matroid_result(args, m.dual())
    if op in ("circuits", "cocircuits", "circuits-lemma33"):
        fam = {"circuits": m.circuits, "cocircuits": m.cocircuits,
               "circuits-lemma33": lambda: circuits_of_plus_via_lemma33(m)}[op]()
        payload = family_to_json(m.ground, fam.as_lists())
        _emit(args, payload, dumps(payload))
        return OK
    if op == "wild-scan":
        scan = wild_scan(m)
        w = scan.witness
        payload = {"max_intersection": scan.max_intersection, "infinite": scan.infinite,
                   "circuit": sorted(map(str, w.circuit or ())), "cocircuit": sorted(map(str, w.cocircuit or ()))}
        text = (f"max |C & D| = {scan.max_intersection} (finite: the matroid is tame)\n"
                f"circuit {_fmt_set(w.circuit or ())}, cocircuit {_fmt_set(w.cocircuit or ())}")
        _emit(args, payload, text)
        return OK
    raise InputError(f"unknown operation {op}")  # pragma: no cover


# -- certificates ---------------------------------------------------------------


def _report_certificate(args, cert) -> int:
    payload = certificate_to_json(cert)
    lines = [f"{cert.construction} on {cert.family}: {cert.verdict}"]
    lines += [f"  [{'pass' if c.ok else 'FAIL'}] {c.name}" + (f" ({c.detail})" if c.detail and not c.ok else "")
              for c in cert.checks if not c.name.startswith(("cover ", "counting "))]
    covers = [c for c in cert.checks if c.name.startswith("cover ")]
    counts = [c for c in cert.checks if c.name.startswith("counting ")]
    if covers:
        lines.append(f"  cover checks: {sum(c.ok for c in covers)}/{len(covers)} pass "
                     f"({len(cert.covers)} witnesses)")
    if counts:
        lines.append(f"  counting rows: {sum(c.ok for c in counts)}/{len(counts)} pass")
    for c in cert.failed():
        if c.name.startswith(("cover ", "counting ")):
            lines.append(f"  FAIL {c.name}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
        lines.append(f"wrote {args.output}")
    sys.stdout.write(dumps(payload) if args.json else "\n".join(lines) + "\n")
    return OK if cert.ok else FAIL


def cmd_certify(args) -> int:
    try:
        if args.tag == "mplus-g":
            cert = build_mplus_witness(args.n)
        else:
            cert = verify_union_wildness(args.depth)
    except CheckFailed as exc:
        print(f"check failed: {exc.check}" + (f" ({exc.detail})" if exc.detail else ""), file=sys.stderr)
        return FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    return _report_certificate(args, cert)


def cmd_recheck(args) -> int:
    try:
        cert = certificate_from_json(_load(args.path))
    except FormatError as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    try:
        fresh = recheck(cert)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{args.path}: {exc}") from exc
    return _report_certificate(args, fresh)


# -- thin sums --------------------------------------------------------------------


def _thin_family(args):
    fld = field_by_name(args.field)
    if getattr(args, "graph", None):
        return graph_family(graph_from_json(_load(args.graph)), fld)
    return RayedThinFamily(field=fld, unshifted_r0=args.unshifted_r0)


def cmd_thinsums(args) -> int:
    if args.sub == "check":
        try:
            lam = coefficients_from_json(_load(args.path))
        except FormatError as exc:
            raise InputError(f"{args.path}: {exc}") from exc
        verdict = _thin_family(args).check(lam)
        trivial = lam.is_zero()
        at = verdict.at
        where = "" if at is None else (format_edge(at[0]) if at[1] is None else f"{at[0]}{at[1]}")
        payload = {"status": verdict.status, "at": where or None, "trivial": trivial}
        text = verdict.status + (f" {where}" if where else "")
        if trivial:
            text += "\nwarning: every coefficient is zero, so this dependence is trivial"
        _emit(args, payload, text)
        return OK if verdict.ok else FAIL
    if args.sub == "build":
        f = RayedThinFamily(field=field_by_name(args.field), unshifted_r0=args.unshifted_r0)
        if args.kind == "oneray":
            lam = build_lambda_f_oneray(args.n, f)
        else:
            lam = build_lambda_f_threerung(args.l, args.m, args.n, f)
        sys.stdout.write(dumps(coefficients_to_json(lam)))
        return OK
    if args.sub == "equiv":
        g = graph_from_json(_load(args.path))
        same = check_thm53_finite(g, field_by_name(args.field))
        _emit(args, {"equal": same}, "equal" if same else "different")
        return OK if same else FAIL
    if args.sub == "recurrence":
        fld = field_by_name(args.field)
        if args.seed is None:
            fam = canonical_chain_family(args.k, args.chain, fld)
        else:
            fam = random_chain_family(args.k, args.seed, args.chain, fld)
        res = run_chain(fam)
        good = res["telescoping"] and not res["zero_sum_failures"] and res["r0_nonzero"]
        payload = {"nu": [fld.format(x) for x in res["nu"]], "mu": [fld.format(x) for x in res["mu"]],
                   "telescoping": res["telescoping"], "zero_sum_failures": len(res["zero_sum_failures"]),
                   "r0_nonzero": res["r0_nonzero"]}
        text = (f"k = {args.k} over {fld.name}, chain {args.chain}: telescoping "
                f"{'holds' if res['telescoping'] else 'FAILS'}, lambda' zero sum "
                f"{'holds' if not res['zero_sum_failures'] else 'FAILS'}, lambda'_r0 "
                f"{'nonzero' if res['r0_nonzero'] else 'zero'}")
        _emit(args, payload, text)
        return OK if good else FAIL
    raise InputError(f"unknown thinsums command {args.sub}")  # pragma: no cover


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--output", help="also write the JSON result to this file")

    p = argparse.ArgumentParser(prog="wildmatroid", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"%(prog)s {__version__} (kernels: {kernels.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-axioms", parents=[common], help="check (I1)-(I3) for a matroid file")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify_axioms)

    for op in ("plus", "minus", "dual", "union", "circuits", "cocircuits", "wild-scan", "circuits-lemma33"):
        s = sub.add_parser(op, parents=[common], help=f"{op} of matroid file(s)")
        s.add_argument("paths", nargs="+")
        s.set_defaults(func=cmd_op, op=op)

    s = sub.add_parser("certify", parents=[common], help="build and verify a wildness certificate")
    s.add_argument("tag", choices=["mplus-g", "union-h"])
    s.add_argument("--depth", type=int, default=50, help="sampling depth for union-h")
    s.add_argument("--n", type=int, default=0, help="first cell of the double ray for mplus-g")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("recheck", parents=[common], help="re-verify a stored certificate")
    s.add_argument("path")
    s.set_defaults(func=cmd_recheck)

    ts = sub.add_parser("thinsums", help="thin sums checks and constructions")
    tsub = ts.add_subparsers(dest="sub", required=True)
    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--field", default=QQ.name, help="QQ (default) or GF(p)")
    fam.add_argument("--unshifted-r0", action="store_true",
                     help="give r0 the weight 0 instead of -1 (degenerate; see README)")

    c = tsub.add_parser("check", parents=[common, fam], help="is a coefficient file a thin dependence?")
    c.add_argument("path", nargs="?", default="-")
    c.add_argument("--family", default="G", choices=["G"], help="the rayed graph with the loop")
    c.add_argument("--graph", help="use f^G of a finite graph file instead")
    c.set_defaults(func=cmd_thinsums)

    b = tsub.add_parser("build", parents=[fam], help="emit the dependence for a circuit of M+")
    b.add_argument("kind", choices=["oneray", "threerung"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--l", type=int)
    b.add_argument("--m", type=int)
    b.set_defaults(func=cmd_thinsums)

    e = tsub.add_parser("equiv", parents=[common, fam], help="thin sums matroid of f^G vs cycle matroid")
    e.add_argument("path")
    e.set_defaults(func=cmd_thinsums)

    r = tsub.add_parser("recurrence", parents=[common, fam], help="run the mu/nu recurrence on a chain")
    r.add_argument("--k", type=int, default=100)
    r.add_argument("--seed", type=int, help="random valid family with this seed (default: canonical family)")
    r.add_argument("--chain", choices=["p", "q"], default="q")
    r.set_defaults(func=cmd_thinsums)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "thinsums" and args.sub == "build" and args.kind == "threerung":
        if args.l is None or args.m is None:
            parser.error("threerung needs --l, --m and --n")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except GroundTooLarge as exc:
        print(f"too large: {exc} (raise MATROID_MAX_GROUND={os.environ.get('MATROID_MAX_GROUND', 20)} "
              "to allow more)", file=sys.stderr)
        return BAD_INPUT
    except (MatroidError, ThinSumsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(exc, "witness", None) is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
