"""Norm equation systems and parameters with the maximum of six solutions.

The central objects are

    pair system    N(X) = 1, N(X+1) = -1
    triple system  N(X) = 1, N(X+1) = -1, N(X+A) = -1      (A in N, A != 1)

over a cubic extension.  Solutions of the pair system are exactly H1 ∪ H2, and Y
solves the triple system iff Y and A/Y both lie in H1 ∪ H2.  A system of three shifted norm
equations with distinct shifts has at most 3! = 6 solutions; the ``find_six_*``
procedures produce parameters A that reach that bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .diffsets import PlanarPair, group_of, h_eval, mixed_rep_planar, planar_of
from .errors import (
    BoundExceeded,
    BoundViolation,
    DuplicateShifts,
    EvenCharacteristic,
    ExhaustedWithoutWitness,
    IdentityElement,
    IdentityViolated,
    LiftVerificationFailed,
    MultipleRepresentations,
    NoWitness,
    NotAMember,
    NotChar3,
    NotNormOne,
    OracleMismatch,
    PreconditionFailed,
    VerificationFailed,
)
from .field import Elt, PrimePower, is_square, make_extension, sqrt
from .tower import TowerCtx, embed_subfield, norm, trace

VERIFIER_VERSION = "1"

# Largest solution count seen by solve_general on a system covered by the
# t! bound on shifted norm systems, for reporting.
solve_general_stats = {"calls": 0, "bounded_calls": 0, "max_bounded": 0}


def _check_A(tc: TowerCtx, A: Elt) -> None:
    if A == 1:
        raise IdentityElement("A must differ from 1")
    if not A or tc.norm_c(A.code) != 1:
        raise NotNormOne(f"{A!r} does not have norm 1")


def _minus_one(tc: TowerCtx) -> int:
    return tc.ambient.neg_c(1)


# ---------------------------------------------------------------------------
# solving


def solve_norm1(tc: TowerCtx, pair: PlanarPair | None = None) -> list[Elt]:
    """{Y : N(Y) = 1, N(Y+1) = -1}, by a scan of N and via H1 ∪ H2."""
    pair = pair or planar_of(tc)
    F = tc.ambient
    m1 = _minus_one(tc)
    scanned = [y for y in group_of(tc) if tc.norm_c(F.add_c(y.code, 1)) == m1]
    if {y.code for y in scanned} != {y.code for y in pair.union}:
        raise OracleMismatch("direct scan of the pair system differs from H1 ∪ H2")
    return scanned


def solve_3eq(tc: TowerCtx, A: Elt, pair: PlanarPair | None = None) -> list[Elt]:
    """Solutions of the triple system: Y in H1 ∪ H2 with A/Y in H1 ∪ H2."""
    _check_A(tc, A)
    pair = pair or planar_of(tc)
    F = tc.ambient
    union = pair.union
    codes = {y.code for y in union}
    out = [y for y in union if F.mul_c(A.code, F.inv_c(y.code)) in codes]
    if len(out) > 6:
        raise BoundViolation(f"{len(out)} solutions exceed the bound of 6")
    return out


@dataclass
class NormSystemGen:
    """The system N(X + shifts[i]) = targets[i]."""

    tower: TowerCtx
    shifts: list[Elt]
    targets: list[Elt]

    def __post_init__(self):
        if len(self.shifts) != len(self.targets):
            raise ValueError("shifts and targets differ in length")
        for a in self.targets:
            if not a or not self.tower.in_base(a):
                raise ValueError(f"target {a!r} must be a nonzero base-field element")


def solve_general(tc: TowerCtx, system: NormSystemGen) -> list[Elt]:
    """All X in the ambient field satisfying every equation (exhaustive)."""
    if len({s.code for s in system.shifts}) != len(system.shifts):
        raise DuplicateShifts("shifts must be pairwise distinct")
    F = tc.ambient
    eqs = [(s.code, a.code) for s, a in zip(system.shifts, system.targets)]
    sols = []
    for x in range(F.order):
        if all(tc.norm_c(F.add_c(x, s)) == a for s, a in eqs):
            sols.append(F.elt(x))
    solve_general_stats["calls"] += 1
    if len(eqs) >= tc.t:
        bound = math.factorial(tc.t)
        solve_general_stats["bounded_calls"] += 1
        solve_general_stats["max_bounded"] = max(solve_general_stats["max_bounded"], len(sols))
        if len(sols) > bound:
            raise BoundViolation(f"{len(sols)} solutions exceed the bound {bound}")
    return sols


def three_eq_system(tc: TowerCtx, A: Elt) -> NormSystemGen:
    F = tc.ambient
    m1 = F.elt(_minus_one(tc))
    return NormSystemGen(tc, [F.zero, F.one, A], [F.one, m1, m1])


def triple_norm_scan(tc: TowerCtx, A: Elt) -> list[Elt]:
    """Full-field brute force for the triple system; independent of the H-sets."""
    return solve_general(tc, three_eq_system(tc, A))


# ---------------------------------------------------------------------------
# H-representations


def h_rep_discriminant(tc: TowerCtx, i: int, A: Elt) -> tuple[Elt, Elt] | None:
    """H_i-representation of A with distinct factors via the quadratic formula.

    Both factors are roots of a quadratic over the cubic extension; the
    representation exists iff its discriminant is a nonzero square.  For H2
    the quadratic is phi(A) Y^2 + (A phi(A) + phi(A) - 1) Y + A phi(A).
    """
    if tc.p == 2:
        raise EvenCharacteristic("use h_rep_enumerate in characteristic 2")
    F = tc.ambient
    fA = A ** tc.q
    if i == 1:
        b = A + 1 - A * fA
        disc = b * b - 4 * A
        lead = F.one
    elif i == 2:
        b = A * fA + fA - 1
        disc = b * b - 4 * A * fA * fA
        lead = fA
    else:
        from .errors import BadIndex

        raise BadIndex(f"index must be 1 or 2, got {i}")
    if not disc or not is_square(F, disc):
        return None
    G = sqrt(F, disc)
    roots = [(-b + G) / (2 * lead), (-b - G) / (2 * lead)]
    roots.sort(key=lambda y: y.code)
    return roots[0], roots[1]


def h_rep_enumerate(tc: TowerCtx, i: int, A: Elt, pair: PlanarPair | None = None) -> tuple[Elt, Elt] | None:
    """Scan unordered pairs of H_i for the (unique) product A."""
    pair = pair or planar_of(tc)
    H = pair.H1 if i == 1 else pair.H2
    F = tc.ambient
    found = []
    for a in range(len(H)):
        for b in range(a, len(H)):
            if F.mul_c(H[a].code, H[b].code) == A.code:
                found.append((H[a], H[b]))
    if len(found) > 1:
        raise MultipleRepresentations(f"{A!r} has {len(found)} H{i}-representations")
    if not found:
        return None
    B, C = found[0]
    return (B, C) if B.code <= C.code else (C, B)


def cross_rep_of_member(tc: TowerCtx, i: int, A: Elt, pair: PlanarPair | None = None) -> tuple[Elt, Elt]:
    """For A in H_i, its H_{3-i}-representation 1/phi(A) * 1/psi(A)."""
    pair = pair or planar_of(tc)
    if not pair.member(i, A):
        raise NotAMember(f"{A!r} is not in H{i}")
    B = (A ** tc.q).inv()
    C = (A ** (tc.q * tc.q)).inv()
    if not (pair.member(3 - i, B) and pair.member(3 - i, C)) or B * C != A:
        raise OracleMismatch("cross representation left H_{3-i}")
    return B, C


# ---------------------------------------------------------------------------
# certificates


@dataclass
class SixSolutionCert:
    tower: TowerCtx
    A: Elt
    solutions: list[Elt]
    tags: list[str]
    decompositions: list[tuple[Elt, Elt]]
    method: str
    info: dict = field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.tower.q


def membership_tag(tc: TowerCtx, y: Elt) -> str:
    in1 = not h_eval(tc, 1, y)
    in2 = not h_eval(tc, 2, y)
    return "H1&H2" if in1 and in2 else "H1" if in1 else "H2" if in2 else "none"


def verify_six_cert(cert: SixSolutionCert, *, full_scan: bool = True) -> bool:
    """Re-check every invariant of a six-solution certificate.

    Uses only norms and h_i evaluations, never the stored H-sets.  With
    ``full_scan`` the solution set is also compared with an exhaustive scan
    of the ambient field.
    """
    tc, A = cert.tower, cert.A
    F = tc.ambient
    m1 = _minus_one(tc)
    if A == 1 or tc.norm_c(A.code) != 1:
        raise VerificationFailed("A is not in N \\ {1}")
    sols = cert.solutions
    if len(sols) != 6 or len({y.code for y in sols}) != 6:
        raise VerificationFailed("solutions are not six distinct elements")
    for y, tag in zip(sols, cert.tags):
        if (tc.norm_c(y.code) != 1 or tc.norm_c(F.add_c(y.code, 1)) != m1
                or tc.norm_c(F.add_c(y.code, A.code)) != m1):
            raise VerificationFailed(f"{y!r} does not solve the system")
        if membership_tag(tc, y) != tag:
            raise VerificationFailed(f"membership tag {tag} wrong for {y!r}")
    codes = {y.code for y in sols}
    for B, C in cert.decompositions:
        if B * C != A or B.code not in codes or C.code not in codes:
            raise VerificationFailed("decomposition does not multiply to A inside the solution set")
    if full_scan:
        scan = triple_norm_scan(tc, A)
        if {y.code for y in scan} != codes:
            raise VerificationFailed("full-field scan disagrees with the certificate")
    return True


def _orbit_pairs(A: Elt, sols: Sequence[Elt]) -> list[tuple[Elt, Elt]]:
    out, seen = [], set()
    for y in sols:
        if y.code in seen:
            continue
        z = A / y
        seen.update((y.code, z.code))
        out.append((y, z))
    return out


def _make_cert(tc: TowerCtx, A: Elt, sols: list[Elt], decomps, method: str, **info) -> SixSolutionCert:
    cert = SixSolutionCert(tc, A, list(sols), [membership_tag(tc, y) for y in sols], list(decomps), method, info)
    verify_six_cert(cert, full_scan=False)
    return cert


def by_log(xs):
    return sorted(xs, key=lambda x: x.log())


# ---------------------------------------------------------------------------
# characteristic-independent search


def find_six_any(tc: TowerCtx, pair: PlanarPair | None = None) -> SixSolutionCert:
    """First A in N \\ {1}, in discrete-log order, with six triple-system solutions."""
    if tc.t != 3:
        raise PreconditionFailed("cubic extension required")
    pair = pair or planar_of(tc)
    for A in group_of(tc).elements[1:]:
        sols = solve_3eq(tc, A, pair)
        if len(sols) == 6:
            return _make_cert(tc, A, sols, _orbit_pairs(A, sols), "any")
    raise NoWitness(f"no A with six solutions for q={tc.q}")


def six_solution_census(tc: TowerCtx, pair: PlanarPair | None = None) -> dict[int, int]:
    """{solution count: number of A in N \\ {1} with that many triple-system solutions}."""
    pair = pair or planar_of(tc)
    out: dict[int, int] = {}
    for A in group_of(tc).elements[1:]:
        n = len(solve_3eq(tc, A, pair))
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# q = 2 mod 3


def _star(tc: TowerCtx, H: list[Elt]) -> dict[int, tuple[Elt, Elt]]:
    F = tc.ambient
    out = {}
    for a in range(len(H)):
        for b in range(a + 1, len(H)):
            out[F.mul_c(H[a].code, H[b].code)] = (H[a], H[b])
    return out


def find_six_char2mod3(tc: TowerCtx, pair: PlanarPair | None = None) -> SixSolutionCert:
    """Witness from H1* ∩ H2*, which is nonempty when q = 2 mod 3, q > 2."""
    if tc.t != 3 or tc.q % 3 != 2 or tc.q <= 2:
        raise PreconditionFailed("requires t = 3, q = 2 mod 3 and q > 2")
    pair = pair or planar_of(tc)
    s1, s2 = _star(tc, pair.H1), _star(tc, pair.H2)
    if len(s1) != len(pair.H1) * (len(pair.H1) - 1) // 2:
        raise OracleMismatch("pairwise products of H1 are not distinct")
    common = s1.keys() & s2.keys() if len(s1) <= len(s2) else s2.keys() & s1.keys()
    if not common:
        raise ExhaustedWithoutWitness("H1* and H2* are disjoint")
    F = tc.ambient
    A = min((F.elt(c) for c in common), key=lambda x: x.log())
    (B1, C1), (B2, C2) = s1[A.code], s2[A.code]
    A1, A2 = mixed_rep_planar(tc, A)
    sols = [A1, B1, C1, A2, B2, C2]
    return _make_cert(tc, A, sols, [(A1, A2), (B1, C1), (B2, C2)], "char2mod3",
                      intersection_size=len(common))


def sigma_checks(tc: TowerCtx, pair: PlanarPair | None = None) -> dict:
    """Sums of N, N \\ {1} and H_i* as ambient elements."""
    if tc.t != 3:
        raise PreconditionFailed("cubic extension required")
    pair = pair or planar_of(tc)
    F = tc.ambient
    acc = 0
    for x in group_of(tc):
        acc = F.add_c(acc, x.code)
    report = {
        "q": tc.q,
        "sigma_N_is_zero": acc == 0,
        "sigma_N_minus_1_is_minus_one": F.sub_c(acc, 1) == _minus_one(tc),
    }
    for i, H in ((1, pair.H1), (2, pair.H2)):
        if tc.q <= 2:
            report[f"sigma_H{i}_star_is_zero"] = None
            continue
        s = 0
        for c in _star(tc, H):
            s = F.add_c(s, c)
        report[f"sigma_H{i}_star_is_zero"] = s == 0
    report["ok"] = all(v is not False for k, v in report.items() if k != "q")
    return report


# ---------------------------------------------------------------------------
# characteristic 3


def eta_character_sum(q: PrimePower | int) -> int:
    """Sum over y in F_q of eta(y^2 + 1), eta the quadratic character."""
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    if pp.p == 2:
        raise EvenCharacteristic("quadratic character needs odd q")
    F = make_extension(pp.p, pp.k)
    total = 0
    for y in F.elements():
        v = y * y + 1
        if v:
            total += 1 if is_square(F, v) else -1
    return total


def _base_is_nonzero_square(tc: TowerCtx, y: Elt) -> bool:
    return bool(y) and (y ** ((tc.q - 1) // 2)) == 1


def char3_admissible(tc: TowerCtx, C: Elt) -> bool:
    """Char 3: D(C) is a nonzero square iff tau != 0 and tau^2 + 1 is a nonzero square in F_q."""
    tau = trace(tc, C)
    return bool(tau) and _base_is_nonzero_square(tc, tau * tau + 1)


def find_six_char3(tc: TowerCtx, pair: PlanarPair | None = None) -> SixSolutionCert:
    if tc.p != 3:
        raise NotChar3("characteristic 3 required")
    if tc.t != 3 or tc.q < 9:
        raise PreconditionFailed("requires t = 3 and q >= 9")
    pair = pair or planar_of(tc)
    candidates = by_log(y for y in pair.union if y != 1)
    admissible = {trace(tc, C).code for C in candidates if char3_admissible(tc, C)}
    for C in candidates:
        if not char3_admissible(tc, C):
            continue
        i = 1 if pair.member(1, C) else 2
        rep = h_rep_discriminant(tc, 3 - i, C * C)
        if rep is None:
            raise OracleMismatch(f"trace criterion admitted {C!r} but the discriminant is not a nonzero square")
        B, E = rep
        A = C / E
        A1, A2 = mixed_rep_planar(tc, A)
        Ai, Aj = (A1, A2) if i == 1 else (A2, A1)
        side_i = [Ai, C, E.inv()]
        side_j = [Aj, C.inv(), B]
        sols = side_i + side_j
        if len({y.code for y in sols}) != 6:
            raise IdentityViolated("the six char-3 elements are not distinct")
        decomps = [(A1, A2), (C, E.inv()), (B, C.inv())]
        return _make_cert(tc, A, sols, decomps, "char3", C=C, B=B, E=E, i=i,
                          admissible_traces=len(admissible))
    raise ExhaustedWithoutWitness(f"no admissible C for q={tc.q}")


def D_of_C(C: Elt) -> Elt:
    return (C * C * (C + 1) ** 2 + (C + 1) ** 2 - C * C) ** 2 - 4 * (C + 1) ** 4 * C * C


def dC_identities(tc: TowerCtx, C: Elt, pair: PlanarPair | None = None) -> dict:
    """Check the D(C) factorisation and the trace formulas for the factor norms."""
    if tc.t != 3:
        raise PreconditionFailed("cubic extension required")
    pair = pair or planar_of(tc)
    if C == 1 or not (pair.member(1, C) or pair.member(2, C)):
        raise NotAMember(f"{C!r} is not in H1 ∪ H2 \\ {{1}}")
    F = tc.ambient
    D = D_of_C(C)
    f1, f2, f3, f4 = C * C + 3 * C + 1, C * C + C + 1, C * C + C - 1, C * C - C - 1
    tau = trace(tc, C)
    t2 = tau * tau
    n1 = -t2 - 3 * tau - 1
    n2 = t2 + 3 * tau + 9
    n3 = t2 + 3 * tau + 1
    nf = [norm(tc, f) for f in (f1, f2, f3, f4)]
    # the discriminant at A = C^2 for the opposite set equals D(C) up to a square
    i = 1 if pair.member(1, C) else 2
    A = C * C
    fA = A ** tc.q
    if i == 2:
        b = A + 1 - A * fA
        disc = b * b - 4 * A
    else:
        b = A * fA + fA - 1
        disc = b * b - 4 * A * fA * fA
    if tc.p == 2:
        same_class = True
    elif not D or not disc:
        same_class = (not D) == (not disc)
    else:
        same_class = is_square(F, D * disc)
    report = {
        "C": C,
        "trace": tau,
        "factorisation": D == f1 * f2 * f3 * f4,
        "norm_C2+3C+1": nf[0] == n1,
        "norm_C2+C+1": nf[1] == n2,
        "norm_C2+C-1": nf[2] == n3,
        "norm_C2-C-1": nf[3] == n1,
        "norm_D": norm(tc, D) == n1 * n1 * n2 * n3,
        "discriminant_square_class": same_class,
    }
    bad = [k for k, v in report.items() if v is False]
    if bad:
        raise IdentityViolated(f"identities {bad} fail for C={C!r} at q={tc.q}")
    return report


# ---------------------------------------------------------------------------
# the squaring trick


def squaring_lift(cert: SixSolutionCert, *, bound: int = 1 << 20) -> SixSolutionCert:
    """Embed a certificate for q into F_{q^6} and re-verify it over F_{q^2}."""
    small = cert.tower.ambient
    p, n = small.p, small.n
    if p ** (2 * n) > bound:
        raise BoundExceeded(f"F_{p}^{2 * n} exceeds the lift bound {bound}")
    big = make_extension(p, 2 * n)
    emb = embed_subfield(small, big)
    tc2 = TowerCtx(big, cert.q ** 2, 3)
    A = emb(cert.A)
    sols = [emb(y) for y in cert.solutions]
    decomps = [(emb(b), emb(c)) for b, c in cert.decompositions]
    m = big.order - 1
    for x, y in zip([cert.A] + cert.solutions, [A] + sols):
        if y.log() != x.log() * emb.exponent % m:
            raise LiftVerificationFailed("embedding does not respect discrete logs")
    for x, y in zip([cert.A] + cert.solutions, [A] + sols):
        if tc2.norm_c(y.code) != emb(norm(cert.tower, x)).code:
            raise LiftVerificationFailed("norm changed under the lift")
    lifted = SixSolutionCert(tc2, A, sols, [membership_tag(tc2, y) for y in sols], decomps,
                             f"lift({cert.method})", {"embedding_exponent": emb.exponent, "from_q": cert.q})
    try:
        verify_six_cert(lifted, full_scan=True)
    except VerificationFailed as exc:
        raise LiftVerificationFailed(str(exc)) from exc
    return lifted


def find_six(tc: TowerCtx, method: str = "auto") -> SixSolutionCert:
    """Dispatch to the procedure matching q, or to the one named by ``method``."""
    if method == "auto":
        if tc.q % 3 == 2 and tc.q > 2:
            method = "char2mod3"
        elif tc.p == 3 and tc.q >= 9:
            method = "char3"
        else:
            method = "any"
    fn = {"char2mod3": find_six_char2mod3, "char3": find_six_char3, "any": find_six_any}.get(method)
    if fn is None:
        raise ValueError(f"unknown method {method!r}")
    return fn(tc)
