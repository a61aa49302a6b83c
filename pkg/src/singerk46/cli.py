"""Command-line interface.

Every command prints one JSON object ``{status, payload, elapsed, reason?}``
to stdout.  Exit codes: 0 pass, 1 claim failed, 2 usage error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import certs
from .diffsets import (
    f_tA_mixed_reps,
    general_sets,
    group_of,
    mixed_rep_planar,
    planar_of,
    singer_equivalence,
    singer_parameters,
    verify_difference_set,
)
from .errors import BudgetExceeded, SingerError
from .field import PrimePower, make_extension
from .normgraph import build_k46, check_ktt_free, count_k46, degree_law, ng_build, search_biclique
from .normsys import (
    dC_identities,
    eta_character_sum,
    find_six,
    sigma_checks,
    solve_3eq,
    solve_norm1,
    squaring_lift,
    verify_six_cert,
)
from .tower import TowerCtx

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _modulus(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --modulus {text!r}") from exc


def _tower(args, t: int) -> TowerCtx:
    pp = PrimePower.from_q(args.q)
    mod = _modulus(getattr(args, "modulus", None))
    if mod is None:
        return TowerCtx.build(args.q, t)
    return TowerCtx(make_extension(pp.p, pp.k * t, mod), args.q, t)


def _need_A(args, tc: TowerCtx):
    if args.A is None:
        raise UsageError("--A (generator power) is required")
    return tc.ambient.gen_power(args.A)


def _emit_cert(args, cert_json: dict) -> dict:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(certs.dumps(cert_json))
    return cert_json


def _powers(xs):
    return sorted(x.log() for x in xs)


# ---------------------------------------------------------------------------
# commands; each returns (passed, payload)


def cmd_field(args):
    F = make_extension(args.p, args.k, _modulus(args.modulus))
    d = F.descriptor()
    d["order"] = F.order
    if args.k > 1:
        d["primitive_is_X"] = F.primitive_code == args.p
    return True, d


def cmd_diffset(args):
    tc = _tower(args, args.t)
    grp = group_of(tc)
    n, m, lam = singer_parameters(args.q, args.t)
    D = planar_of(tc).H1 if args.t == 3 else general_sets(tc, grp, check=False).Dt
    if args.action == "list":
        return True, {"q": args.q, "t": args.t, "members": _powers(D)}
    if args.action == "verify":
        res = verify_difference_set(grp, D, lam)
        payload = {
            "kind": "difference-set", "q": args.q, "t": args.t, "field": tc.ambient.descriptor(),
            "parameters": [n, m, lam], "lambda": lam,
            "members": [certs.elt_json(x) for x in D], "verified": res.ok,
        }
        return res.ok, _emit_cert(args, payload)
    images = singer_equivalence(tc, D)
    return True, {"q": args.q, "t": args.t, "cosets": len(images),
                  "map": {str(k): tc.ambient.elt(v).log() for k, v in sorted(images.items())}}


def cmd_mixedrep(args):
    tc = _tower(args, args.t)
    A = _need_A(args, tc)
    if args.t == 3:
        A1, A2 = mixed_rep_planar(tc, A)
        return True, {"A": args.A, "A1": A1.log(), "A2": A2.log(), "formula": "planar"}
    pairs = f_tA_mixed_reps(tc, A)
    return True, {"A": args.A, "pairs": sorted([B.log(), C.log()] for B, C in pairs), "formula": "f_tA"}


def cmd_normsys(args):
    act = args.action
    if act == "eta-sum":
        s = eta_character_sum(args.q)
        return s == -1, {"q": args.q, "eta_sum": s}
    tc = _tower(args, 3)
    if act == "solve-norm1":
        sols = solve_norm1(tc)
        return True, {"q": args.q, "count": len(sols), "solutions": _powers(sols)}
    if act == "solve-3eq":
        A = _need_A(args, tc)
        sols = solve_3eq(tc, A)
        pair = planar_of(tc)
        return True, {"q": args.q, "A": args.A, "count": len(sols),
                      "H1": _powers(y for y in sols if pair.member(1, y)),
                      "H2": _powers(y for y in sols if pair.member(2, y))}
    if act == "find-six":
        cert = find_six(tc, args.method)
        verify_six_cert(cert, full_scan=not args.no_scan)
        if args.lift:
            cert = squaring_lift(cert)
        return True, _emit_cert(args, certs.six_to_json(cert))
    if act == "sigma-check":
        r = sigma_checks(tc)
        return r["ok"], r
    if act == "dc-identities":
        pair = planar_of(tc)
        Cs = [tc.ambient.gen_power(args.A)] if args.A is not None else [c for c in pair.union if c != 1]
        for C in Cs:
            dC_identities(tc, C, pair)
        return True, {"q": args.q, "checked": len(Cs)}
    raise UsageError(act)


def cmd_ng(args):
    act = args.action
    if act == "k46-build":
        if args.t != 4:
            raise UsageError("k46-build needs --t 4")
        tc = _tower(args, 3)
        cert = build_k46(tc, find_six(tc, args.method))
        return True, _emit_cert(args, certs.biclique_to_json(cert))
    g = ng_build(args.q, args.t)
    if act == "k46-search":
        found = search_biclique(g, args.s, budget_seconds=args.budget_seconds)
        if found is None:
            return True, {"graph": str(g), "s": args.s, "result": "absent"}
        return True, _emit_cert(args, certs.biclique_to_json(found))
    if act == "free-check":
        r = check_ktt_free(g, args.t_size, args.s, samples=args.samples, seed=args.seed,
                           budget_seconds=args.budget_seconds)
        payload = dict(r.__dict__)
        if r.counterexample:
            payload["counterexample"] = [[list(A.coords), list(a.coords)] for A, a in r.counterexample]
        return r.free, payload
    if act == "count-k46":
        c = count_k46(g, samples=args.samples or 100_000, seed=args.seed)
        return True, {**c.__dict__, "label": c.label}
    if act == "degree-law":
        r = degree_law(g)
        return r["ok"], r
    raise UsageError(act)


def cmd_repro(args):
    from .repro import run

    r = run(args.name)
    return r["ok"], r


def cmd_verify(args):
    path = args.file or args.verify
    if not path:
        raise UsageError("a certificate file is required")
    r = certs.verify_json(certs.load(path), full_scan=not args.no_scan)
    return r["ok"], r


def cmd_report(args):
    from .report import write_report

    paths = write_report(args.out_dir, samples=args.samples or 20000, seed=args.seed)
    return True, {"written": paths}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singerk46", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the certificate to this file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-seconds", type=float, default=None)

    p = sub.add_parser("field", parents=[common], help="field descriptor")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", help="comma-separated ascending coefficients")
    p.set_defaults(func=cmd_field)

    def qt(p, t_default=3):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--t", type=int, default=t_default)
        p.add_argument("--modulus", help="ambient modulus, comma-separated ascending coefficients")
        p.add_argument("--A", type=int, default=None, help="power of the ambient generator")

    p = sub.add_parser("diffset", parents=[common], help="planar / Singer difference sets")
    qt(p)
    p.add_argument("action", choices=["list", "verify", "singer-equivalence"])
    p.set_defaults(func=cmd_diffset)

    p = sub.add_parser("mixedrep", parents=[common], help="mixed representations of A")
    qt(p)
    p.set_defaults(func=cmd_mixedrep)

    p = sub.add_parser("normsys", parents=[common], help="norm equation systems")
    qt(p)
    p.add_argument("action", choices=["solve-norm1", "solve-3eq", "find-six", "sigma-check", "eta-sum",
                                      "dc-identities"])
    p.add_argument("--method", default="auto", choices=["auto", "char2mod3", "char3", "any"])
    p.add_argument("--lift", action="store_true", help="lift the certificate from q to q^2")
    p.add_argument("--no-scan", action="store_true", help="skip the full-field verification scan")
    p.set_defaults(func=cmd_normsys)

    p = sub.add_parser("ng", parents=[common], help="projective norm graphs")
    qt(p, 4)
    p.add_argument("action", choices=["k46-build", "k46-search", "free-check", "count-k46", "degree-law"])
    p.add_argument("--s", type=int, default=6)
    p.add_argument("--t-size", type=int, default=4)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--method", default="auto", choices=["auto", "char2mod3", "char3", "any"])
    p.set_defaults(func=cmd_ng)

    p = sub.add_parser("repro", parents=[common], help="reproduce named claims")
    p.add_argument("name", choices=["f16", "no-k46-small", "diffsets", "six-and-k46", "all"])
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("file", nargs="?")
    p.add_argument("--verify", help="certificate file (alternative to the positional)")
    p.add_argument("--no-scan", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="write CSV tables and PNG figures")
    p.add_argument("--out-dir", default="report")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    result: dict = {}
    try:
        ok, payload = args.func(args)
        result = {"status": "ok" if ok else "fail", "payload": payload}
        code = EXIT_OK if ok else EXIT_FAIL
        if not ok:
            result["reason"] = "ClaimFailed"
    except UsageError as exc:
        result = {"status": "fail", "reason": "UsageError", "message": str(exc)}
        code = EXIT_USAGE
    except BudgetExceeded as exc:
        result = {"status": "fail", "reason": exc.reason, "message": str(exc)}
        code = EXIT_BUDGET
    except SingerError as exc:
        result = {"status": "fail", "reason": exc.reason, "message": str(exc)}
        code = EXIT_FAIL
    except (ValueError, KeyError, OSError) as exc:
        result = {"status": "fail", "reason": type(exc).__name__, "message": str(exc)}
        code = EXIT_USAGE
    result["elapsed"] = round(time.perf_counter() - t0, 4)
    print(json.dumps(result, sort_keys=True, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
