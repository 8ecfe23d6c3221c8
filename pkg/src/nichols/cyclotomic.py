"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored as rational coefficient vectors of length N, i.e. as
classes in Q[x]/(x^N - 1).  That ring is not a field, so equality and
zero-testing go through reduction modulo the N-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    # x^n - 1 = prod_{d | n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_poly_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_poly_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def power_reduction(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds x^k mod Phi_n in the basis 1, x, ..., x^{phi(n)-1}, k < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg == 0:
        return tuple(() for _ in range(n))
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce by the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def reduce_mod_phi(coeffs: Sequence, n: int) -> tuple:
    """Reduce a length-n coefficient vector (in Q[x]/(x^n-1)) modulo Phi_n."""
    red = power_reduction(n)
    deg = totient(n)
    out = [0] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = red[k]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


def _integral(coeffs) -> tuple[int, list[int]]:
    d = 1
    for c in coeffs:
        if c.denominator != 1:
            d = lcm(d, c.denominator)
    if d == 1:
        return 1, [c.numerator for c in coeffs]
    return d, [c.numerator * (d // c.denominator) for c in coeffs]


class CycNum:
    """An element sum_k c_k zeta_N^k of Q(zeta_N), c_k rational."""

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 1:
            raise ValueError("order must be >= 1")
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) > order:
            folded = [Fraction(0)] * order
            for k, c in enumerate(cs):
                folded[k % order] += c
            cs = folded
        cs.extend([Fraction(0)] * (order - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)
        self._canon = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "CycNum":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "CycNum":
        return cls(order, [1])

    @classmethod
    def rational(cls, order: int, value) -> "CycNum":
        return cls(order, [value])

    @classmethod
    def root(cls, order: int, exponent: int) -> "CycNum":
        cs = [0] * order
        cs[exponent % order] = 1
        return cls(order, cs)

    # -- canonical data -----------------------------------------------
    def canonical(self) -> tuple[Fraction, ...]:
        """Coordinates in the basis 1, zeta, ..., zeta^{phi(N)-1}."""
        if self._canon is None:
            self._canon = reduce_mod_phi(self.coeffs, self.order)
        return self._canon

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        c = self.canonical()
        return not any(c[1:])

    def as_root_exponent(self) -> int | None:
        """Return e with self == zeta_N^e, or None if self is not such a root."""
        can = self.canonical()
        for e in range(self.order):
            if reduce_mod_phi(_unit_vector(e, self.order), self.order) == can:
                return e
        return None

    # -- coercion -----------------------------------------------------
    def embed(self, order: int) -> "CycNum":
        """Image under zeta_N -> zeta_M^{M/N}; requires N | M."""
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        if order == self.order:
            return self
        step = order // self.order
        cs = [Fraction(0)] * order
        for k, c in enumerate(self.coeffs):
            cs[k * step] = c
        return CycNum(order, cs)

    def _coerce(self, other) -> tuple["CycNum", "CycNum"]:
        if isinstance(other, (int, Fraction)):
            return self, CycNum.rational(self.order, other)
        if not isinstance(other, CycNum):
            return NotImplemented, NotImplemented
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.order
        # integer convolution over a common denominator
        da, an = _integral(a.coeffs)
        db, bn = _integral(b.coeffs)
        out = [0] * n
        bnz = [(j, y) for j, y in enumerate(bn) if y]
        for i, x in enumerate(an):
            if not x:
                continue
            for j, y in bnz:
                out[(i + j) % n] += x * y
        den = da * db
        return CycNum(n, [Fraction(v, den) if v else 0 for v in out])

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "CycNum":
        """Galois image zeta -> zeta^k (k coprime to N)."""
        n = self.order
        out = [Fraction(0)] * n
        for i, x in enumerate(self.coeffs):
            out[(i * k) % n] += x
        return CycNum(n, out)

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        n = self.order
        # a^{-1} = prod_{sigma != 1} sigma(a) / Norm(a)
        other = CycNum.one(n)
        for k in range(2, n + 1):
            if gcd(k, n) == 1 and k % n != 1:
                other = other * self.conjugate(k)
        norm = (self * other).canonical()
        if any(norm[1:]) or norm[0] == 0:
            raise ArithmeticError("norm computation failed")
        return other * Fraction(1) / norm[0]

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            f = Fraction(other)
            return CycNum(self.order, [x / f for x in self.coeffs])
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = CycNum.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(self.order, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        # equal elements of different ambient orders hash alike only when
        # both are rational; that is enough for dict use within one order.
        if self.is_rational():
            return hash(self.canonical()[0] if self.canonical() else 0)
        return hash((self.order, self.canonical()))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{k}" if k else f"{c}")
        return "CycNum(" + (" + ".join(terms) or "0") + ")"

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        can = self.canonical()
        reduced = list(can) + [Fraction(0)] * (self.order - len(can))
        return {"order": self.order, "coeffs": [str(c) for c in reduced]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNum":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


def _unit_vector(e: int, n: int) -> list[int]:
    v = [0] * n
    v[e % n] = 1
    return v


class RootOfUnity:
    """zeta_N^e kept symbolically as an exponent."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self.exponent = exponent % order

    def mult_order(self) -> int:
        return self.order // gcd(self.order, self.exponent)

    def to_cyc(self) -> CycNum:
        return CycNum.root(self.order, self.exponent)

    @classmethod
    def from_cyc(cls, q: CycNum) -> "RootOfUnity":
        e = q.as_root_exponent()
        if e is None:
            raise ValueError("not a root of unity of the ambient order")
        return cls(q.order, e)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def __eq__(self, other):
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        m = lcm(self.order, other.order)
        return (self.exponent * (m // self.order) - other.exponent * (m // other.order)) % m == 0

    def __hash__(self):
        g = gcd(self.order, self.exponent)
        return hash((self.order // g, self.exponent // g))

    def __repr__(self):
        return f"RootOfUnity({self.order}, {self.exponent})"


def mult_order(q) -> int | None:
    """Least n >= 1 with q^n = 1, or None when q is not a root of unity.

    Roots of unity of the ambient order are handled by exponent arithmetic;
    anything else is tried by bounded iteration (bound 2N, which covers every
    root of unity lying in Q(zeta_N)).
    """
    if isinstance(q, RootOfUnity):
        return q.mult_order()
    if q.is_zero():
        raise ValueError("0 has no multiplicative order")
    e = q.as_root_exponent()
    if e is not None:
        return q.order // gcd(q.order, e)
    bound = 2 * q.order
    p = q
    for n in range(1, bound + 1):
        if p == 1:
            return n
        p = p * q
    return None


def q_number(n: int, q: CycNum) -> CycNum:
    """(n)_q = 1 + q + ... + q^{n-1}."""
    if n < 0:
        raise ValueError("q-numbers need n >= 0")
    total = CycNum.zero(q.order)
    p = CycNum.one(q.order)
    for _ in range(n):
        total = total + p
        p = p * q
    return total


def q_factorial(n: int, q: CycNum) -> CycNum:
    out = CycNum.one(q.order)
    for k in range(1, n + 1):
        out = out * q_number(k, q)
    return out


def q_binomial(n: int, k: int, q: CycNum) -> CycNum:
    """Gaussian binomial via the q-Pascal rule, so no division is needed."""
    if k < 0 or k > n:
        return CycNum.zero(q.order)
    row = [CycNum.one(q.order)]
    for m in range(1, n + 1):
        new = [CycNum.one(q.order)]
        qp = CycNum.one(q.order)
        for j in range(1, m):
            qp = qp * q
            # binom(m, j) = binom(m-1, j-1) + q^j binom(m-1, j)
            new.append(row[j - 1] + qp * row[j])
        new.append(CycNum.one(q.order))
        row = new
    return row[k]
