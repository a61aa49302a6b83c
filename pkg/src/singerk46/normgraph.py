"""Projective norm graphs NG(q, t) and their K_{4,6} subgraphs.

Vertices are pairs (A, a) with A in F_{q^(t-1)} and a in F_q*; (A, a) and
(B, b) are adjacent iff N(A + B) = ab.  Loops are allowed: (A, a) is its own
neighbour iff N(2A) = a^2, which never happens in characteristic 2.

Vertex indices are ``code(A) * (q - 1) + j`` where ``j`` is the position of
``a`` among the nonzero base-field elements in enumeration order.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BoundExceeded,
    BudgetExceeded,
    NoGoodShift,
    OracleMismatch,
    PreconditionFailed,
    VerificationFailed,
)
from .field import Elt
from .normsys import NormSystemGen, SixSolutionCert, solve_general, verify_six_cert
from .tower import TowerCtx, norm

DEFAULT_VERTEX_BOUND = 1 << 20
BITSET_VERTEX_BOUND = 500  # NG(5, 4)

Vertex = tuple  # (Elt, Elt)


class NGGraph:
    def __init__(self, q: int, t: int, *, bound: int = DEFAULT_VERTEX_BOUND):
        if t < 3:
            raise ValueError("NG(q, t) needs t >= 3")
        n = q ** (t - 1) * (q - 1)
        if n > bound:
            raise BoundExceeded(f"NG({q},{t}) has {n} vertices, above the bound {bound}")
        self.q, self.t = q, t
        self.tower = TowerCtx.build(q, t - 1)
        self.F = self.tower.ambient
        self.n = n
        self.base = self.tower.base_elements()[1:]
        self._base_idx = {b.code: j for j, b in enumerate(self.base)}
        self._norm = [self.tower.norm_c(c) for c in range(self.F.order)]
        self._bits: list[int] | None = None

    # -- vertices --------------------------------------------------------------
    def index(self, v: Vertex) -> int:
        A, a = v
        return A.code * (self.q - 1) + self._base_idx[a.code]

    def vertex(self, i: int) -> Vertex:
        c, j = divmod(i, self.q - 1)
        return self.F.elt(c), self.base[j]

    def vertices(self):
        return (self.vertex(i) for i in range(self.n))

    def descriptor(self) -> dict:
        return {"q": self.q, "t": self.t, "vertices": self.n}

    def __repr__(self):
        return f"NG({self.q},{self.t})"

    # -- adjacency ---------------------------------------------------------------
    def adjacent_i(self, i: int, j: int) -> bool:
        F, m = self.F, self.q - 1
        (ca, ja), (cb, jb) = divmod(i, m), divmod(j, m)
        nv = self._norm[F.add_c(ca, cb)]
        return nv != 0 and nv == F.mul_c(self.base[ja].code, self.base[jb].code)

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return norm(self.tower, u[0] + v[0]) == u[1] * v[1]

    def neighbors_i(self, i: int) -> list[int]:
        """Every B != -A gives exactly one neighbour (B, N(A+B)/a)."""
        F, m = self.F, self.q - 1
        ca, ja = divmod(i, m)
        ainv = F.inv_c(self.base[ja].code)
        out = []
        for cb in range(F.order):
            nv = self._norm[F.add_c(ca, cb)]
            if nv:
                out.append(cb * m + self._base_idx[F.mul_c(nv, ainv)])
        return out

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return [self.vertex(j) for j in self.neighbors_i(self.index(v))]

    def materialize(self) -> list[int]:
        """Per-vertex neighbour bitsets (Python ints)."""
        if self._bits is None:
            if self.n > BITSET_VERTEX_BOUND:
                raise BoundExceeded(f"bitset adjacency limited to {BITSET_VERTEX_BOUND} vertices")
            bits = []
            for i in range(self.n):
                b = 0
                for j in self.neighbors_i(i):
                    b |= 1 << j
                bits.append(b)
            self._bits = bits
        return self._bits

    @property
    def materialized(self) -> bool:
        return self._bits is not None


def ng_build(q: int, t: int, *, bound: int = DEFAULT_VERTEX_BOUND, materialize: bool | None = None) -> NGGraph:
    g = NGGraph(q, t, bound=bound)
    if materialize or (materialize is None and g.n <= BITSET_VERTEX_BOUND):
        g.materialize()
    return g


def _bits_to_list(b: int) -> list[int]:
    out = []
    while b:
        low = b & -b
        out.append(low.bit_length() - 1)
        b ^= low
    return out


def degree_law(g: NGGraph) -> dict:
    """Check that each vertex has q^(t-1) - 1 neighbours (itself included if looped)."""
    want = g.q ** (g.t - 1) - 1
    degs = [len(g.neighbors_i(i)) for i in range(g.n)]
    loops = sum(1 for i in range(g.n) if g.adjacent_i(i, i))
    ordered = sum(degs)
    return {
        "q": g.q, "t": g.t, "vertices": g.n, "expected_degree": want,
        "min_degree": min(degs), "max_degree": max(degs),
        "ok": min(degs) == max(degs) == want,
        "loops": loops,
        "loopless": loops == 0,
        "ordered_adjacent_pairs": ordered,
        # half the ordered pair count, i.e. the undirected edge count
        "edge_count": ordered // 2 if ordered % 2 == 0 else ordered / 2,
    }


# ---------------------------------------------------------------------------
# common neighbourhoods


def _direct_common(g: NGGraph, idx: Sequence[int]) -> list[int]:
    if g.materialized:
        acc = g._bits[idx[0]]
        for i in idx[1:]:
            acc &= g._bits[i]
        return _bits_to_list(acc)
    cand = g.neighbors_i(idx[0])
    return sorted(j for j in cand if all(g.adjacent_i(i, j) for i in idx[1:]))


def _system_common(g: NGGraph, S: Sequence[Vertex]) -> list[int]:
    """Common neighbours through the shifted norm system in Z = 1/(X + B_l)."""
    tc = g.tower
    Bl, bl = S[-1]
    shifts, targets = [], []
    for Bi, bi in S[:-1]:
        diff = Bi - Bl
        shifts.append(diff.inv())
        targets.append(bi / bl / norm(tc, diff))
    zs = solve_general(tc, NormSystemGen(tc, shifts, targets))
    out = []
    for Z in zs:
        if not Z:
            continue  # Z = 0 is not the image of any vertex
        X = Z.inv() - Bl
        x = (norm(tc, Z) * bl).inv()
        out.append(g.index((X, x)))
    return sorted(out)


def common_neighborhood(g: NGGraph, S: Sequence[Vertex], *, check: bool = True) -> list[Vertex]:
    if len(S) < 2:
        raise ValueError("need at least two vertices")
    if len({A.code for A, _ in S}) != len(S):
        return []
    direct = _direct_common(g, [g.index(v) for v in S])
    if check:
        other = _system_common(g, S)
        if other != direct:
            raise OracleMismatch(f"common neighbourhood routes disagree on {S!r}")
    return [g.vertex(j) for j in direct]


# ---------------------------------------------------------------------------
# certificates


@dataclass
class BicliqueCert:
    graph: NGGraph
    left: list[Vertex]
    right: list[Vertex]
    construction: dict = field(default_factory=dict)


def verify_biclique(cert: BicliqueCert) -> bool:
    """Re-check distinctness and every left-right adjacency with the oracle only."""
    g = cert.graph
    allv = [(A.code, a.code) for A, a in cert.left + cert.right]
    if len(set(allv)) != len(allv):
        raise VerificationFailed("biclique vertices are not pairwise distinct")
    for u in cert.left:
        for v in cert.right:
            if not g.adjacent(u, v):
                raise VerificationFailed(f"{u!r} and {v!r} are not adjacent")
    return True


def build_k46(tc: TowerCtx, cert: SixSolutionCert, *, graph: NGGraph | None = None) -> BicliqueCert:
    """K_{4,6} in NG(q, 4) from a six-solution certificate for q."""
    if tc.t != 3:
        raise PreconditionFailed("cubic tower required")
    verify_six_cert(cert, full_scan=False)
    g = graph or NGGraph(tc.q, 4)
    F = tc.ambient
    if g.F is not F:
        raise PreconditionFailed("certificate and graph live in different fields")
    A = cert.A
    excluded = {0, F.neg_c(1), F.neg_c(A.code)}
    C = None
    for k in range(F.order - 1):
        c = F.exp_c(k) if F.has_tables else F.pow_c(F.primitive_code, k)
        if c not in excluded and tc.norm_c(c) != 1:
            C = F.elt(c)
            break
    m1 = F.elt(F.neg_c(1))
    shifts = [C, C + 1, C + A]
    tags = [F.one, m1, m1]
    left = [(s.inv(), a / norm(tc, s)) for s, a in zip(shifts, tags)] + [(F.zero, F.one)]
    ys = [y - C for y in cert.solutions]
    right = [(y.inv(), norm(tc, y).inv()) for y in ys]
    D = F.zero
    if tc.p != 2:
        bad = {F.sub_c(v[0].code, u[0].code) for u in left for v in right}
        half = F.inv_c(2)
        bad = {F.mul_c(b, half) for b in bad}
        for d in range(F.order):
            if d not in bad:
                D = F.elt(d)
                break
        else:
            raise NoGoodShift("every shift collides")
        left = [(B + D, b) for B, b in left]
        right = [(Y - D, y) for Y, y in right]
    out = BicliqueCert(g, left, right, {"A": A, "C": C, "D": D if tc.p != 2 else None,
                                        "source": cert.method})
    verify_biclique(out)
    return out


# ---------------------------------------------------------------------------
# search


class _Budget:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


def _require_bits(g: NGGraph) -> list[int]:
    if not g.materialized:
        g.materialize()
    return g._bits


def search_biclique(g: NGGraph, s: int, t_left: int = 4, *, budget_seconds: float | None = None,
                    stats: dict | None = None) -> BicliqueCert | None:
    """First K_{t_left, s} (disjoint sides) in index order, or None after exhausting the graph."""
    if t_left < 2:
        raise ValueError("t_left must be at least 2")
    bits = _require_bits(g)
    n = g.n
    budget = _Budget(budget_seconds)
    st = stats if stats is not None else {}
    st.update(pairs=0, nodes=0)

    def extend(S: list[int], common: int):
        if len(S) == t_left:
            return S, common
        budget.check()
        for x in range(S[-1] + 1, n):
            c = common & bits[x]
            c &= ~(1 << x)
            if c.bit_count() < s:
                continue
            st["nodes"] += 1
            found = extend(S + [x], c)
            if found:
                return found
        return None

    for u in range(n):
        budget.check()
        for v in range(u + 1, n):
            c = bits[u] & bits[v] & ~((1 << u) | (1 << v))
            if c.bit_count() < s:
                continue
            st["pairs"] += 1
            found = extend([u, v], c)
            if found:
                S, common = found
                left = [g.vertex(i) for i in S]
                right = [g.vertex(j) for j in _bits_to_list(common)[:s]]
                cert = BicliqueCert(g, left, right, {"A": None, "C": None, "D": None, "source": "search"})
                verify_biclique(cert)
                return cert
    return None


def _all_sets_with(g: NGGraph, size: int, s: int, budget: _Budget):
    """Yield (indices, common bitset) for every size-set with >= s common neighbours."""
    bits = _require_bits(g)
    n = g.n

    def rec(S, common):
        if len(S) == size:
            yield S, common
            return
        for x in range(S[-1] + 1, n):
            c = common & bits[x]
            if c.bit_count() >= s:
                yield from rec(S + [x], c)

    for u in range(n):
        budget.check()
        yield from rec([u], bits[u])


@dataclass
class FreenessReport:
    graph: str
    t_size: int
    s: int
    mode: str
    free: bool
    checked: int | None
    max_common: int | None
    seed: int | None = None
    counterexample: list | None = None


def check_ktt_free(g: NGGraph, t_size: int, s: int, *, samples: int | None = None, seed: int = 0,
                   budget_seconds: float | None = None) -> FreenessReport:
    """No t_size-set may have s or more common neighbours (loops counted).

    Without ``samples`` the check is exhaustive (pruned); with ``samples`` it
    draws that many seeded random t_size-sets.
    """
    budget = _Budget(budget_seconds)
    if samples is None:
        for S, common in _all_sets_with(g, t_size, s, budget):
            return FreenessReport(str(g), t_size, s, "full", False, None, common.bit_count(),
                                  None, [g.vertex(i) for i in S])
        # pruning never looks at sets below s, so no maximum is reported
        return FreenessReport(str(g), t_size, s, "full", True, math.comb(g.n, t_size), None)
    rng = random.Random(seed)
    worst = 0
    use_bits = g.n <= BITSET_VERTEX_BOUND
    if use_bits:
        bits = _require_bits(g)
    for k in range(samples):
        if k % 4096 == 0:
            budget.check()
        S = rng.sample(range(g.n), t_size)
        if use_bits:
            acc = bits[S[0]]
            for i in S[1:]:
                acc &= bits[i]
            size = acc.bit_count()
        else:
            size = len(_direct_common(g, S))
        worst = max(worst, size)
        if size >= s:
            return FreenessReport(str(g), t_size, s, "sampled", False, k + 1, worst, seed,
                                  [g.vertex(i) for i in S])
    return FreenessReport(str(g), t_size, s, "sampled", True, samples, worst, seed)


@dataclass
class K46Count:
    graph: str
    exact: bool
    value: float
    low: float | None = None
    high: float | None = None
    samples: int | None = None
    seed: int | None = None

    @property
    def label(self) -> str:
        return "EXACT" if self.exact else "ESTIMATE"


def count_k46(g: NGGraph, *, samples: int = 100_000, seed: int = 0, exact_max_q: int = 3) -> K46Count:
    """Copies of K_{4,6} with disjoint sides: sum over 4-sets L of C(|N(L) minus L|, 6)."""
    bits = _require_bits(g)
    if g.q <= exact_max_q:
        total = 0
        for S, common in _all_sets_with(g, 4, 6, _Budget(None)):
            for i in S:
                common &= ~(1 << i)
            total += math.comb(common.bit_count(), 6)
        return K46Count(str(g), True, total)
    rng = random.Random(seed)
    vals = []
    for _ in range(samples):
        S = rng.sample(range(g.n), 4)
        acc = bits[S[0]] & bits[S[1]] & bits[S[2]] & bits[S[3]]
        for i in S:
            acc &= ~(1 << i)
        vals.append(math.comb(acc.bit_count(), 6))
    scale = math.comb(g.n, 4)
    mean = sum(vals) / samples
    var = sum((v - mean) ** 2 for v in vals) / max(samples - 1, 1)
    half = 1.96 * math.sqrt(var / samples)
    return K46Count(str(g), False, mean * scale, max(0.0, mean - half) * scale, (mean + half) * scale,
                    samples, seed)
