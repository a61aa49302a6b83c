"""Named reproduction checks, run by ``singerk46 repro``."""

from __future__ import annotations

import time
from typing import Callable

from .diffsets import (
    group_of,
    mixed_rep_planar,
    planar_of,
    singer_equivalence,
    verify_difference_set,
)
from .field import make_extension
from .normgraph import build_k46, ng_build, search_biclique
from .normsys import find_six, solve_3eq, verify_six_cert
from .tower import TowerCtx

F16_MODULUS = (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1)
F16_A = 405
F16_H1 = (1725, 2775, 3435)
F16_H2 = (1065, 2130, 2370)


def check_f16() -> dict:
    F = make_extension(2, 12, F16_MODULUS)
    tc = TowerCtx(F, 16, 3)
    U = F.elt(2)
    pair = planar_of(tc)
    A = F.gen_power(F16_A)
    sols = solve_3eq(tc, A, pair)
    logs = sorted(y.log() for y in sols)
    h1 = sorted(y.log() for y in sols if pair.member(1, y))
    h2 = sorted(y.log() for y in sols if pair.member(2, y))
    g = lambda k: F.gen_power(k)
    decomps = [g(1065) * g(3435), g(1725) * g(2775), g(2130) * g(2370)]
    checks = {
        "X_is_primitive": F.primitive_code == U.code,
        "A_in_N_minus_1": A != 1 and tc.norm_c(A.code) == 1,
        "solutions": logs == sorted(F16_H1 + F16_H2),
        "H1_part": h1 == list(F16_H1),
        "H2_part": h2 == list(F16_H2),
        "decompositions": all(d == A for d in decomps),
    }
    return {"ok": all(checks.values()), "checks": checks, "solution_powers": logs}


def check_no_k46_small(qs=(2, 3, 4)) -> dict:
    out = {}
    for q in qs:
        t0 = time.perf_counter()
        found = search_biclique(ng_build(q, 4), 6)
        out[f"NG({q},4)"] = {"absent": found is None, "seconds": round(time.perf_counter() - t0, 3)}
    return {"ok": all(v["absent"] for v in out.values()), "graphs": out}


def check_diffsets(qs=(2, 3, 4, 5, 7, 8, 9, 11, 13)) -> dict:
    out = {}
    for q in qs:
        tc = TowerCtx.build(q, 3)
        pair = planar_of(tc)
        ok_ds = verify_difference_set(group_of(tc), pair.H1, 1).ok
        ok_mixed = True
        for A in group_of(tc).elements[1:]:
            A1, A2 = mixed_rep_planar(tc, A)
            if not (pair.member(1, A1) and pair.member(2, A2) and A1 * A2 == A):
                ok_mixed = False
                break
        singer_equivalence(tc, pair.H1)
        out[q] = ok_ds and ok_mixed
    return {"ok": all(out.values()), "by_q": out}


def check_six_and_k46(qs=(5, 7, 8, 9, 11, 13, 16)) -> dict:
    out = {}
    for q in qs:
        tc = TowerCtx.build(q, 3)
        cert = find_six(tc)
        verify_six_cert(cert, full_scan=True)
        build_k46(tc, cert)
        out[q] = cert.method
    return {"ok": True, "methods": out}


CHECKS: dict[str, Callable[[], dict]] = {
    "f16": check_f16,
    "no-k46-small": check_no_k46_small,
    "diffsets": check_diffsets,
    "six-and-k46": check_six_and_k46,
}


def run(name: str) -> dict:
    names = list(CHECKS) if name == "all" else [name]
    results = {}
    for n in names:
        if n not in CHECKS:
            raise KeyError(n)
        t0 = time.perf_counter()
        r = CHECKS[n]()
        r["seconds"] = round(time.perf_counter() - t0, 3)
        results[n] = r
    return {"ok": all(r["ok"] for r in results.values()), "results": results}
