"""Cyclic extension view F_{q^t}/F_q inside one ambient field.

The base field F_q is never materialised separately: it is the fixed set of
x -> x^q in the ambient field.  Frobenius, norm and trace read the degree
from the :class:`TowerCtx`, because the norm graph NG(q, t) works with a
degree t-1 extension while the difference sets use degree t.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import BoundExceeded, NoCompatibleRoot, ZeroElement
from .field import Elt, FieldCtx, PrimePower, make_extension, prime_factors

DEFAULT_ENUM_BOUND = 1 << 22


class TowerCtx:
    def __init__(self, ambient: FieldCtx, q: int, t: int):
        if t < 2:
            raise ValueError("extension degree must be at least 2")
        if ambient.order != q ** t:
            raise ValueError(f"ambient field has {ambient.order} elements, expected {q}^{t}")
        self.ambient = ambient
        self.q = q
        self.t = t
        self.p = ambient.p
        # norm(x) = x^(1 + q + ... + q^(t-1))
        self.norm_exp = (q ** t - 1) // (q - 1)
        self._base_step = (ambient.order - 1) // (q - 1)

    @classmethod
    def build(cls, q: int, t: int) -> "TowerCtx":
        """Shared tower over the default ambient field F_{q^t}."""
        return _default_tower(q, t)

    # -- int kernels -------------------------------------------------------
    def frob_c(self, a: int, j: int = 1) -> int:
        return self.ambient.pow_c(a, self.q ** (j % self.t))

    def norm_c(self, a: int) -> int:
        return self.ambient.pow_c(a, self.norm_exp)

    def in_base_c(self, a: int) -> bool:
        if not a:
            return True
        F = self.ambient
        if F.has_tables:
            return F.log_c(a) % self._base_step == 0
        return self.frob_c(a) == a

    # -- element level -------------------------------------------------------
    def in_base(self, x: Elt) -> bool:
        return self.in_base_c(x.code)

    def base_elements(self) -> list[Elt]:
        """F_q as a subset of the ambient field, in enumeration order."""
        F = self.ambient
        codes = [0] + sorted(F.exp_c(j * self._base_step) for j in range(self.q - 1))
        return [F.elt(c) for c in codes]

    def __repr__(self):
        return f"TowerCtx(q={self.q}, t={self.t}, ambient=F_{self.p}^{self.ambient.n})"


@functools.lru_cache(maxsize=None)
def _default_tower(q: int, t: int) -> TowerCtx:
    pp = PrimePower.from_q(q)
    return TowerCtx(make_extension(pp.p, pp.k * t), q, t)


def frobenius(tc: TowerCtx, x: Elt, j: int = 1) -> Elt:
    """x^(q^j)."""
    return Elt(tc.ambient, tc.frob_c(x.code, j))


def norm(tc: TowerCtx, x: Elt) -> Elt:
    return Elt(tc.ambient, tc.norm_c(x.code))


def trace(tc: TowerCtx, x: Elt) -> Elt:
    F = tc.ambient
    acc = 0
    for j in range(tc.t):
        acc = F.add_c(acc, tc.frob_c(x.code, j))
    return Elt(F, acc)


@dataclass
class NormOneGroup:
    tower: TowerCtx
    elements: list[Elt]
    generator: Elt
    _index: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {e.code: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: Elt) -> bool:
        return x.code in self._index

    def index(self, x: Elt) -> int:
        """Exponent k with generator^k = x."""
        return self._index[x.code]


def norm_one_group(tc: TowerCtx, bound: int = DEFAULT_ENUM_BOUND) -> NormOneGroup:
    F = tc.ambient
    if F.order > bound:
        raise BoundExceeded(f"field of order {F.order} above enumeration bound {bound}")
    size = tc.norm_exp
    g = F.pow_c(F.primitive_code, tc.q - 1)
    codes = [1]
    for _ in range(size - 1):
        codes.append(F.mul_c(codes[-1], g))
    assert F.mul_c(codes[-1], g) == 1
    assert all(tc.norm_c(c) == 1 for c in codes)
    assert len(set(codes)) * (tc.q - 1) == F.order - 1
    return NormOneGroup(tc, [F.elt(c) for c in codes], F.elt(g))


def hilbert90_map(tc: TowerCtx, x: Elt) -> Elt:
    """x -> phi(x)/x = x^(q-1); its image is exactly the norm-one group."""
    if not x:
        raise ZeroElement("hilbert90_map is undefined at 0")
    return Elt(tc.ambient, tc.ambient.pow_c(x.code, tc.q - 1))


# ---------------------------------------------------------------------------
# subfield embeddings


def _minpoly_over_prime_field(ctx: FieldCtx, code: int) -> list[int]:
    """Ascending F_p coefficients of the minimal polynomial of an element."""
    conj = [code]
    while True:
        nxt = ctx.pow_c(conj[-1], ctx.p)
        if nxt == code:
            break
        conj.append(nxt)
    coeffs = [1]  # product of (Y - c)
    for c in conj:
        shifted = [0] + coeffs
        for i, a in enumerate(coeffs):
            shifted[i] = ctx.sub_c(shifted[i], ctx.mul_c(a, c))
        coeffs = shifted
    assert all(a < ctx.p for a in coeffs), "minimal polynomial not over F_p"
    return coeffs


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism small -> big sending small.primitive to ``image``."""

    small: FieldCtx
    big: FieldCtx
    image: int
    s: int

    @property
    def exponent(self) -> int:
        """log_big(embed(x)) = exponent * log_small(x) mod (|big| - 1)."""
        return (self.big.order - 1) // (self.small.order - 1) * self.s

    def __call__(self, x: Elt) -> Elt:
        if x.ctx is not self.small:
            raise ValueError("element is not in the source field")
        if not x:
            return self.big.zero
        return Elt(self.big, self.big.pow_c(self.image, self.small.log_c(x.code)))


def embed_subfield(small: FieldCtx, big: FieldCtx) -> Embedding:
    if small.p != big.p or big.n % small.n:
        raise ValueError(f"F_{small.p}^{small.n} does not embed in F_{big.p}^{big.n}")
    mp = _minpoly_over_prime_field(small, small.primitive_code)
    m_small = small.order - 1
    c = (big.order - 1) // m_small
    for s in range(1, m_small + 1):
        if math.gcd(s, m_small) != 1:
            continue
        h = big.pow_c(big.primitive_code, c * s)
        acc = 0
        for a in reversed(mp):
            acc = big.add_c(big.mul_c(acc, h), a)
        if acc == 0:
            return Embedding(small, big, h, s)
    raise NoCompatibleRoot("no element of the big field matches the minimal polynomial")


def compose(outer: Embedding, inner: Embedding) -> Callable[[Elt], Elt]:
    return lambda x: outer(inner(x))


def order_of(ctx: FieldCtx, x: Elt) -> int:
    m = ctx.order - 1
    k = m
    for r in prime_factors(m):
        while k % r == 0 and ctx.pow_c(x.code, k // r) == 1:
            k //= r
    return k
