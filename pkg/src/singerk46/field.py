"""Exact arithmetic in prime fields and their extensions F_{p^n}.

Elements are stored as power-basis coordinate vectors over F_p, packed into
a single integer ``code = c_0 + c_1 p + ... + c_{n-1} p^{n-1}``.  The code
order is the element enumeration order used throughout the package: every
"least element" or "scan in enumeration order" refers to increasing code.

When the field is small enough (``log_table_bound``), exp/log and Zech
logarithm tables are built once and every operation becomes a handful of
list lookups.  Larger fields fall back to plain polynomial arithmetic.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BoundExceeded,
    DegreeMismatch,
    DivisionByZero,
    MixedContexts,
    NonPrime,
    NotASquare,
    NotMonic,
    ReduciblePoly,
    ZeroElement,
)

DEFAULT_LOG_TABLE_BOUND = 1 << 22
DEFAULT_DLOG_BOUND = 1 << 26


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("exponent must be positive")

    @property
    def q(self) -> int:
        q = 1
        for _ in range(self.k):
            q *= self.p
        return q

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        if q < 2:
            raise NonPrime(f"{q} is not a prime power")
        p = prime_factors(q)[0]
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r != 1:
            raise NonPrime(f"{q} is not a prime power")
        return cls(p, k)


# ---------------------------------------------------------------------------
# polynomials over F_p


@dataclass(frozen=True)
class Poly:
    """Polynomial over F_p with ascending coefficients, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int]):
        c = [int(a) % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.p, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(self.p, out)

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        d = other.coeffs
        inv_lead = pow(d[-1], p - 2, p)
        qt = [0] * max(len(r) - len(d) + 1, 0)
        for i in range(len(r) - len(d), -1, -1):
            c = r[i + len(d) - 1] * inv_lead % p
            qt[i] = c
            if c:
                for j, dj in enumerate(d):
                    r[i + j] = (r[i + j] - c * dj) % p
        return Poly(p, qt), Poly(p, r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self) -> "Poly":
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return Poly(self.p, [c * inv for c in self.coeffs])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly(base.p, (1,))
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def is_irreducible(p: int, f: Poly) -> bool:
    """gcd test of f against X^{p^d} - X for every d <= deg(f)/2."""
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    n = f.degree
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > 1 and any(f(a) == 0 for a in range(p)):
        return False
    x = Poly.x(p)
    h = x % f
    for _ in range(n // 2):
        h = _powmod(h, p, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


def least_irreducible(p: int, n: int) -> Poly:
    """Lexicographically least monic irreducible of degree n.

    Coefficients are compared from the constant term upward.
    """
    for low in itertools.product(range(p), repeat=n):
        f = Poly(p, list(low) + [1])
        if is_irreducible(p, f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# the field context


class FieldCtx:
    """The field F_{p^n} = F_p[X]/(modulus) with a distinguished primitive.

    Immutable after construction.  Use :func:`make_extension` rather than
    calling the constructor directly so contexts are shared.
    """

    def __init__(self, p: int, n: int, modulus: Poly, *, log_table_bound: int = DEFAULT_LOG_TABLE_BOUND,
                 dlog_bound: int = DEFAULT_DLOG_BOUND):
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p ** n
        self.log_table_bound = log_table_bound
        self.dlog_bound = dlog_bound
        self._pows = [p ** i for i in range(n)]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        x_code = self._code_of_poly(Poly.x(p) % modulus)
        self.primitive_code = self._find_primitive(x_code)
        if self.order <= log_table_bound:
            self._build_tables()

    # -- encoding ---------------------------------------------------------
    def coords(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code_of(self, coords: Sequence[int]) -> int:
        if len(coords) > self.n:
            raise ValueError(f"expected at most {self.n} coordinates")
        return sum((int(c) % self.p) * w for c, w in zip(coords, self._pows))

    def _code_of_poly(self, f: Poly) -> int:
        return self.code_of(f.coeffs)

    def _poly(self, code: int) -> Poly:
        return Poly(self.p, self.coords(code))

    # -- int kernels --------------------------------------------------------
    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def add_c(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._zech is not None:
            m = self.order - 1
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % m]
            return 0 if z < 0 else self._exp[(la + z) % m]
        return self.code_of([x + y for x, y in zip(self.coords(a), self.coords(b))])

    def neg_c(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        return self.code_of([-x for x in self.coords(a)])

    def sub_c(self, a: int, b: int) -> int:
        return self.add_c(a, self.neg_c(b))

    def mul_c(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._code_of_poly((self._poly(a) * self._poly(b)) % self.modulus)

    def pow_c(self, a: int, e: int) -> int:
        m = self.order - 1
        if not a:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % m]
        e %= m
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_c(result, base)
            base = self.mul_c(base, base)
            e >>= 1
        return result

    def inv_c(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self.pow_c(a, self.order - 2)

    def log_c(self, a: int) -> int:
        if not a:
            raise ZeroElement("discrete log of zero")
        if self._log is not None:
            return self._log[a]
        return bsgs_log(self, a)

    def exp_c(self, k: int) -> int:
        if self._exp is not None:
            return self._exp[k % (self.order - 1)]
        return self.pow_c(self.primitive_code, k)

    # -- construction helpers ---------------------------------------------
    def _has_full_order(self, code: int, factors: list[int]) -> bool:
        m = self.order - 1
        if not code or self.pow_c(code, m) != 1:
            return False
        return all(self.pow_c(code, m // r) != 1 for r in factors)

    def _find_primitive(self, x_code: int) -> int:
        factors = prime_factors(self.order - 1) if self.order > 2 else []
        if self._has_full_order(x_code, factors):
            return x_code
        for code in range(1, self.order):
            if self._has_full_order(code, factors):
                return code
        raise AssertionError("unreachable: the multiplicative group is cyclic")

    def _mult_matrix(self, code: int) -> np.ndarray:
        """Row i holds the coordinates of element * X^i."""
        h = self._poly(code)
        rows = []
        xi = Poly(self.p, (1,))
        for _ in range(self.n):
            rows.append(self.coords(self._code_of_poly((h * xi) % self.modulus)))
            xi = xi * Poly.x(self.p)
        return np.array(rows, dtype=np.int64)

    def _build_tables(self) -> None:
        p, m = self.p, self.order - 1
        g = self._mult_matrix(self.primitive_code)
        powers = np.zeros((1, self.n), dtype=np.int64)
        powers[0, 0] = 1
        # doubling: powers[k:2k] = powers[0:k] * g^k
        while len(powers) < m:
            last = powers[-1:] @ g % p
            step = self._mult_matrix(int(last[0] @ np.array(self._pows, dtype=np.int64)))
            powers = np.vstack([powers, powers @ step % p])
        powers = powers[:m]
        codes = powers @ np.array(self._pows, dtype=np.int64)
        exp = codes.tolist()
        log = [-1] * self.order
        for k, c in enumerate(exp):
            log[c] = k
        zech = [-1] * m
        for k, c in enumerate(exp):
            c0 = c % p
            succ = c - c0 + (c0 + 1) % p
            zech[k] = log[succ] if succ else -1
        self._exp, self._log, self._zech = exp, log, zech

    # -- element construction ---------------------------------------------
    def __call__(self, value) -> "Elt":
        if isinstance(value, Elt):
            if value.ctx is not self:
                raise MixedContexts("element belongs to another field")
            return value
        if isinstance(value, int):
            return Elt(self, value % self.p)
        return Elt(self, self.code_of(value))

    def elt(self, code: int) -> "Elt":
        return Elt(self, code)

    @property
    def zero(self) -> "Elt":
        return Elt(self, 0)

    @property
    def one(self) -> "Elt":
        return Elt(self, 1)

    @property
    def primitive(self) -> "Elt":
        return Elt(self, self.primitive_code)

    def gen_power(self, k: int) -> "Elt":
        return Elt(self, self.exp_c(k))

    def elements(self):
        """All elements in enumeration order."""
        for code in range(self.order):
            yield Elt(self, code)

    def nonzero(self):
        for code in range(1, self.order):
            yield Elt(self, code)

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus.coeffs),
            "primitive": list(self.coords(self.primitive_code)),
        }

    def __repr__(self) -> str:
        return f"FieldCtx(F_{self.p}^{self.n}, modulus={self.modulus})"


class Elt:
    """An element of a :class:`FieldCtx`."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, Elt):
            if other.ctx is not self.ctx:
                raise MixedContexts("operands belong to different fields")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.add_c(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.sub_c(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.sub_c(b, self.code))

    def __neg__(self):
        return Elt(self.ctx, self.ctx.neg_c(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.mul_c(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.mul_c(self.code, self.ctx.inv_c(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Elt(self.ctx, self.ctx.mul_c(b, self.ctx.inv_c(self.code)))

    def __pow__(self, e: int):
        return Elt(self.ctx, self.ctx.pow_c(self.code, e))

    def inv(self) -> "Elt":
        return Elt(self.ctx, self.ctx.inv_c(self.code))

    def __eq__(self, other):
        if isinstance(other, Elt):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __bool__(self):
        return self.code != 0

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.coords(self.code)

    def log(self) -> int:
        return discrete_log(self.ctx, self)

    def __repr__(self):
        if self.code and self.ctx.has_tables:
            return f"U^{self.ctx.log_c(self.code)}"
        return f"Elt{list(self.coords)}"


# ---------------------------------------------------------------------------
# construction


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, n: int) -> tuple[int, ...]:
    return least_irreducible(p, n).coeffs


@functools.lru_cache(maxsize=None)
def _make_extension(p: int, n: int, modulus: tuple[int, ...], log_table_bound: int) -> FieldCtx:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be positive")
    f = Poly(p, modulus)
    if f.degree != n:
        raise DegreeMismatch(f"modulus has degree {f.degree}, expected {n}")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not is_irreducible(p, f):
        raise ReduciblePoly(f"{f} is reducible over F_{p}")
    return FieldCtx(p, n, f, log_table_bound=log_table_bound)


def make_extension(p: int, n: int, modulus: Poly | Sequence[int] | None = None, *,
                   log_table_bound: int = DEFAULT_LOG_TABLE_BOUND) -> FieldCtx:
    """Build (or fetch the cached) context for F_{p^n}.

    Without a modulus the lexicographically least monic irreducible is used.
    The primitive element is the class of X when that is primitive, else
    the least element of full multiplicative order.
    """
    if modulus is None:
        # resolve first, so an explicit copy of the default modulus shares the context
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if n < 1:
            raise ValueError("degree must be positive")
        modulus = _default_modulus(p, n)
    elif isinstance(modulus, Poly):
        modulus = modulus.coeffs
    else:
        modulus = tuple(int(c) for c in modulus)
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        modulus = tuple(c % p for c in modulus)
    return _make_extension(p, n, modulus, log_table_bound)


# ---------------------------------------------------------------------------
# discrete logs, squares, roots


def bsgs_log(ctx: FieldCtx, a: int) -> int:
    """Baby-step giant-step log of the code ``a`` to the primitive base."""
    m_order = ctx.order - 1
    m = math.isqrt(m_order - 1) + 1 if m_order > 1 else 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = ctx.mul_c(cur, ctx.primitive_code)
    giant = ctx.inv_c(ctx.pow_c(ctx.primitive_code, m)) if m_order > 1 else 1
    cur = a
    for i in range(m + 1):
        j = baby.get(cur)
        if j is not None:
            return (i * m + j) % m_order
        cur = ctx.mul_c(cur, giant)
    raise AssertionError("element outside the multiplicative group")


def discrete_log(ctx: FieldCtx, e: Elt, *, method: str = "auto") -> int:
    """k in [0, p^n - 1) with primitive^k = e.

    ``method`` is "table", "bsgs" or "auto" (table lookup when available).
    """
    if not e:
        raise ZeroElement("discrete log of zero")
    if ctx.order - 1 > ctx.dlog_bound:
        raise BoundExceeded(f"group order {ctx.order - 1} above dlog bound {ctx.dlog_bound}")
    if method == "bsgs" or (method == "auto" and not ctx.has_tables):
        return bsgs_log(ctx, e.code)
    if method not in ("auto", "table"):
        raise ValueError(f"unknown method {method!r}")
    return ctx.log_c(e.code)


def is_square(ctx: FieldCtx, e: Elt) -> bool:
    if ctx.p == 2 or not e:
        return True
    return ctx.pow_c(e.code, (ctx.order - 1) // 2) == 1


def sqrt(ctx: FieldCtx, e: Elt) -> Elt:
    """Square root with the least code among the (at most two) roots."""
    if not e:
        return ctx.zero
    if ctx.p == 2:
        return Elt(ctx, ctx.pow_c(e.code, ctx.order // 2))
    if not is_square(ctx, e):
        raise NotASquare(f"{e!r} is not a square")
    k = ctx.log_c(e.code)
    r1 = ctx.exp_c(k // 2)
    r2 = ctx.neg_c(r1)
    return Elt(ctx, min(r1, r2))


def poly_eval(ctx: FieldCtx, terms: Mapping[int, Elt | int], x: Elt) -> Elt:
    """Evaluate a sparse polynomial {exponent: coefficient} at x."""
    acc = 0
    for e, c in terms.items():
        c = ctx(c).code
        if c:
            acc = ctx.add_c(acc, ctx.mul_c(c, ctx.pow_c(x.code, e)))
    return Elt(ctx, acc)


def poly_roots(ctx: FieldCtx, terms: Mapping[int, Elt | int], domain: Iterable[Elt]) -> list[Elt]:
    return [x for x in domain if not poly_eval(ctx, terms, x)]
