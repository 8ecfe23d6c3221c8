"""The braided tensor algebra T(V) of a diagonal braiding.

Elements are stored packed: one block per word length holding int64 word
codes and integer coefficient vectors in Z[x]/(x^N - 1), plus a common
positive denominator.  ``x_i`` is letter ``i`` (1-based).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels as K
from .cartanweyl import Bicharacter
from .cyclotomic import CycNum
from .words import Word, WordError, degree, is_lyndon, shirshov_split

_MAXCODE = 1 << 62


class HomogeneityError(ValueError):
    pass


@lru_cache(maxsize=None)
def _red(N: int) -> np.ndarray:
    return K.reduction_matrix(N)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def encode(word: Sequence[int], theta: int) -> int:
    c = 0
    for a in word:
        if not 1 <= a <= theta:
            raise WordError(f"letter {a} outside 1..{theta}")
        c = c * theta + (a - 1)
    return c


def decode(code: int, length: int, theta: int) -> Word:
    out = [0] * length
    code = int(code)
    for p in range(length - 1, -1, -1):
        out[p] = code % theta + 1
        code //= theta
    return tuple(out)


def _check_length(length: int, theta: int) -> None:
    if theta > 1 and theta**length >= _MAXCODE:
        raise OverflowError(f"words of length {length} over {theta} letters do not fit int64 codes")


def cyc_to_vector(c, N: int) -> tuple[list[int], int]:
    """Integer vector v and denominator d with c = (sum v_k zeta_N^k) / d."""
    if isinstance(c, (int, Fraction)):
        f = Fraction(c)
        v = [0] * N
        v[0] = f.numerator
        return v, f.denominator
    if not isinstance(c, CycNum):
        raise TypeError(f"unsupported coefficient {c!r}")
    if N % c.order:
        raise ValueError(f"coefficient in Q(zeta_{c.order}) does not live in Q(zeta_{N})")
    c = c.embed(N)
    d = 1
    for x in c.coeffs:
        d = _lcm(d, x.denominator)
    return [int(x * d) for x in c.coeffs], d


def braiding_scalar(alpha: Sequence[int], beta: Sequence[int], chi: Bicharacter) -> CycNum:
    return chi.chi(alpha, beta)


class TensorElem:
    """A finite linear combination of words with coefficients in Q(zeta_N)."""

    __slots__ = ("chi", "parts", "den")

    def __init__(self, chi: Bicharacter, parts=None, den: int = 1):
        self.chi = chi
        self.parts: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for L, (codes, num) in (parts or {}).items():
            if codes.size:
                self.parts[L] = (codes, num)
        self.den = den
        self._normalize()

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, chi: Bicharacter) -> "TensorElem":
        return cls(chi)

    @classmethod
    def from_terms(cls, chi: Bicharacter, terms: Mapping[Sequence[int], object]) -> "TensorElem":
        N, th = chi.N, chi.theta
        den = 1
        conv = []
        for w, c in terms.items():
            v, d = cyc_to_vector(c, N)
            den = _lcm(den, d)
            conv.append((tuple(w), v, d))
        by_len: dict[int, tuple[list, list]] = {}
        for w, v, d in conv:
            _check_length(len(w), th)
            s = den // d
            codes, rows = by_len.setdefault(len(w), ([], []))
            codes.append(encode(w, th))
            rows.append([x * s for x in v])
        parts = {}
        for L, (codes, rows) in by_len.items():
            num = K.normalize_dtype(np.array(rows, dtype=object).reshape(len(rows), N))
            parts[L] = K.collect(np.array(codes, dtype=np.int64), num, _red(N))
        return cls(chi, parts, den)

    @classmethod
    def word(cls, chi: Bicharacter, w: Sequence[int], coeff=1) -> "TensorElem":
        return cls.from_terms(chi, {tuple(w): coeff})

    @classmethod
    def one(cls, chi: Bicharacter) -> "TensorElem":
        return cls.word(chi, ())

    @classmethod
    def letter(cls, chi: Bicharacter, i: int) -> "TensorElem":
        return cls.word(chi, (i,))

    # -- internal helpers ---------------------------------------------
    def _normalize(self) -> None:
        if not self.parts:
            self.den = 1
            return
        g = self.den
        for _, num in self.parts.values():
            if g == 1:
                break
            for v in np.unique(num):
                g = gcd(g, int(v))
                if g == 1:
                    break
        if g > 1:
            self.parts = {L: (c, K.normalize_dtype(_exact_div(n, g))) for L, (c, n) in self.parts.items()}
            self.den //= g

    def _scaled_parts(self, factor: int):
        if factor == 1:
            return self.parts
        out = {}
        for L, (c, n) in self.parts.items():
            n2 = n.astype(object) * factor
            out[L] = (c, K.normalize_dtype(n2))
        return out

    def _same_space(self, other: "TensorElem") -> None:
        if self.chi != other.chi:
            raise ValueError("elements belong to different braidings")

    @property
    def N(self) -> int:
        return self.chi.N

    @property
    def theta(self) -> int:
        return self.chi.theta

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def num_terms(self) -> int:
        return sum(c.size for c, _ in self.parts.values())

    def lengths(self) -> list[int]:
        return sorted(self.parts)

    def terms(self) -> dict[Word, CycNum]:
        out = {}
        N, th = self.N, self.theta
        for L in sorted(self.parts):
            codes, num = self.parts[L]
            for c, row in zip(codes, num):
                out[decode(c, L, th)] = CycNum(N, [Fraction(int(x), self.den) for x in row])
        return out

    def coefficient(self, w: Sequence[int]) -> CycNum:
        w = tuple(w)
        part = self.parts.get(len(w))
        if part is None:
            return CycNum.zero(self.N)
        codes, num = part
        c = encode(w, self.theta)
        k = np.searchsorted(codes, c)
        if k < codes.size and codes[k] == c:
            return CycNum(self.N, [Fraction(int(x), self.den) for x in num[k]])
        return CycNum.zero(self.N)

    def degrees(self) -> set[tuple[int, ...]]:
        out = set()
        th = self.theta
        for L, (codes, _) in self.parts.items():
            if L == 0:
                out.add((0,) * th)
                continue
            digits = K._np_digits(codes, L, th)
            counts = np.stack([(digits == a).sum(axis=1) for a in range(th)], axis=1)
            for row in np.unique(counts, axis=0):
                out.add(tuple(int(x) for x in row))
        return out

    def degree(self) -> tuple[int, ...]:
        """The Z^theta-degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise HomogeneityError("element is zero or not Z^theta-homogeneous")
        return next(iter(degs))

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading(self) -> tuple[Word, CycNum]:
        """The lex-smallest word among the longest ones, with its coefficient."""
        L = max(self.parts)
        codes, _ = self.parts[L]
        w = decode(codes[0], L, self.theta)
        return w, self.coefficient(w)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "TensorElem") -> "TensorElem":
        if not isinstance(other, TensorElem):
            return NotImplemented
        self._same_space(other)
        if not other.parts:
            return self
        if not self.parts:
            return other
        den = _lcm(self.den, other.den)
        a = self._scaled_parts(den // self.den)
        b = other._scaled_parts(den // other.den)
        red = _red(self.N)
        parts = dict(a)
        for L, (c, n) in b.items():
            if L in parts:
                c0, n0 = parts[L]
                parts[L] = K.collect(np.concatenate([c0, c]), _stack(n0, n), red)
            else:
                parts[L] = (c, n)
        return TensorElem(self.chi, parts, den)

    def __neg__(self) -> "TensorElem":
        return TensorElem(self.chi, {L: (c, -n) for L, (c, n) in self.parts.items()}, self.den)

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + (-other)

    def scale(self, c) -> "TensorElem":
        if isinstance(c, TensorElem):
            raise TypeError("use * for products")
        if not self.parts:
            return self
        v, d = cyc_to_vector(c, self.N)
        if not any(v):
            return TensorElem(self.chi)
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) == 1:
            # monomial scalar: rotate then rescale
            k = nz[0]
            out = self.rotate(k)
            if v[k] != 1:
                out = TensorElem(
                    self.chi,
                    {L: (cc, K.normalize_dtype(n.astype(object) * v[k])) for L, (cc, n) in out.parts.items()},
                    out.den,
                )
            return out if d == 1 else TensorElem(self.chi, out.parts, out.den * d)
        vec = K.normalize_dtype(np.array([v], dtype=object))
        red = _red(self.N)
        one = np.zeros(1, dtype=np.int64)
        parts = {L: K.product(cc, n, one, vec, 1, red) for L, (cc, n) in self.parts.items()}
        return TensorElem(self.chi, parts, self.den * d)

    def rotate(self, e: int) -> "TensorElem":
        """Multiply by zeta_N^e."""
        e %= self.N
        if e == 0 or not self.parts:
            return self
        red = _red(self.N)
        parts = {}
        for L, (c, n) in self.parts.items():
            parts[L] = K.collect(c, np.roll(n, e, axis=1), red)
        return TensorElem(self.chi, parts, self.den)

    def __mul__(self, other):
        if not isinstance(other, TensorElem):
            return self.scale(other)
        self._same_space(other)
        if not self.parts or not other.parts:
            return TensorElem(self.chi)
        th = self.theta
        red = _red(self.N)
        acc: dict[int, list] = {}
        for La, (ca, na) in self.parts.items():
            for Lb, (cb, nb) in other.parts.items():
                _check_length(La + Lb, th)
                acc.setdefault(La + Lb, []).append(K.product(ca, na, cb, nb, th**Lb, red))
        parts = {}
        for L, blocks in acc.items():
            if len(blocks) == 1:
                parts[L] = blocks[0]
            else:
                parts[L] = K.collect(
                    np.concatenate([b[0] for b in blocks]), _stack(*[b[1] for b in blocks]), red
                )
        return TensorElem(self.chi, parts, self.den * other.den)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int) -> "TensorElem":
        if n < 0:
            raise ValueError("negative power")
        out = TensorElem.one(self.chi)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElem):
            return NotImplemented
        return self.chi == other.chi and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        items = list(self.terms().items())
        shown = ", ".join(f"{w}: {c}" for w, c in items[:6])
        more = "" if len(items) <= 6 else f", ... ({len(items)} terms)"
        return f"TensorElem({{{shown}{more}}})"

    # -- serialization ------------------------------------------------
    def to_json(self) -> list:
        return [{"word": list(w), "coeff": c.to_json()} for w, c in self.terms().items()]

    @classmethod
    def from_json(cls, chi: Bicharacter, data: Iterable[dict]) -> "TensorElem":
        return cls.from_terms(chi, {tuple(t["word"]): CycNum.from_json(t["coeff"]) for t in data})


def _stack(*nums):
    if any(n.dtype == object for n in nums):
        return np.concatenate([n.astype(object) for n in nums])
    return np.concatenate(nums)


def _exact_div(num, g: int):
    if num.dtype == object:
        return np.array([[int(x) // g for x in row] for row in num], dtype=object).reshape(num.shape)
    return num // g


# ----------------------------------------------------------------------
# brackets and hyperletters
# ----------------------------------------------------------------------


def braided_bracket(x: TensorElem, y: TensorElem) -> TensorElem:
    """[x, y]_c = xy - chi(deg x, deg y) yx for homogeneous x, y."""
    if x.is_zero() or y.is_zero():
        return TensorElem(x.chi)
    a, b = x.degree(), y.degree()
    return x * y - (y * x).rotate(x.chi.e_pair(a, b))


def ad_c_power(i: int, m: int, y: TensorElem) -> TensorElem:
    """(ad_c x_i)^m y."""
    xi = TensorElem.letter(y.chi, i)
    for _ in range(m):
        y = braided_bracket(xi, y)
    return y


@lru_cache(maxsize=4096)
def _hyperletter(chi: Bicharacter, u: Word) -> TensorElem:
    if len(u) == 1:
        return TensorElem.letter(chi, u[0])
    left, right = shirshov_split(u)
    return braided_bracket(_hyperletter(chi, left), _hyperletter(chi, right))


def hyperletter(u: Sequence[int], chi: Bicharacter) -> TensorElem:
    u = tuple(u)
    if not u or not is_lyndon(u):
        raise WordError(f"{u} is not a Lyndon word")
    return _hyperletter(chi, u)


def hyperword(factors: Sequence[Sequence[int]], chi: Bicharacter) -> TensorElem:
    out = TensorElem.one(chi)
    for f in factors:
        out = out * hyperletter(f, chi)
    return out


# ----------------------------------------------------------------------
# skew derivations and the pairing
# ----------------------------------------------------------------------


def _derivative(i: int, x: TensorElem, side: int) -> TensorElem:
    chi = x.chi
    th = chi.theta
    if side == 0:
        expvec = [chi.e(i - 1, l) for l in range(th)]
    else:
        expvec = [chi.e(l, i - 1) for l in range(th)]
    red = _red(chi.N)
    parts = {}
    for L, (c, n) in x.parts.items():
        if L == 0:
            continue
        parts[L - 1] = K.derivative(c, n, L, th, i - 1, expvec, side, red)
    return TensorElem(chi, parts, x.den)


def skew_derivation_K(i: int, x: TensorElem) -> TensorElem:
    """Delta_{n-1,1}(x) = sum_i d^K_i(x) (x) x_i."""
    return _derivative(i, x, 0)


def skew_derivation_L(i: int, x: TensorElem) -> TensorElem:
    """Delta_{1,n-1}(x) = sum_i x_i (x) d^L_i(x)."""
    return _derivative(i, x, 1)


def strip_last(i: int, y: TensorElem) -> TensorElem:
    """The element w with y = w x_i + (terms not ending in x_i)."""
    th = y.theta
    parts = {}
    for L, (c, n) in y.parts.items():
        if L == 0:
            continue
        mask = (c % th) == (i - 1)
        if mask.any():
            parts[L - 1] = (c[mask] // th, n[mask])
    return TensorElem(y.chi, parts, y.den)


def constant_term(x: TensorElem) -> CycNum:
    part = x.parts.get(0)
    if part is None:
        return CycNum.zero(x.N)
    return CycNum(x.N, [Fraction(int(v), x.den) for v in part[1][0]])


def pairing(x: TensorElem, y: TensorElem) -> CycNum:
    """(x | y), peeling the last letter of y with d^K on x."""
    x.chi is y.chi or x._same_space(y)
    total = CycNum.zero(x.N)
    for L in set(x.parts) & set(y.parts):
        xs = TensorElem(x.chi, {L: x.parts[L]}, x.den)
        ys = TensorElem(y.chi, {L: y.parts[L]}, y.den)
        total = total + _pair_same_length(xs, ys, L)
    return total


def _pair_same_length(x: TensorElem, y: TensorElem, L: int) -> CycNum:
    if x.is_zero() or y.is_zero():
        return CycNum.zero(x.N)
    if L == 0:
        return constant_term(x) * constant_term(y)
    total = CycNum.zero(x.N)
    for i in range(1, x.theta + 1):
        yi = strip_last(i, y)
        if yi.is_zero():
            continue
        dx = skew_derivation_K(i, x)
        if dx.is_zero():
            continue
        total = total + _pair_same_length(dx, yi, L - 1)
    return total


# ----------------------------------------------------------------------
# coproduct: an independent route through braided multiplicativity
# ----------------------------------------------------------------------


class Tensor2:
    """Element of T(V) (x) T(V), stored as {(left, right): exponent counter}.

    Coefficients are kept as multisets of roots zeta_N^e with integer
    multiplicity, scaled by an optional rational-coefficient map on top.
    """

    __slots__ = ("chi", "terms")

    def __init__(self, chi: Bicharacter, terms: dict | None = None):
        self.chi = chi
        self.terms: dict[tuple[Word, Word], CycNum] = terms or {}

    def items(self):
        return self.terms.items()

    def coefficient(self, left: Sequence[int], right: Sequence[int]) -> CycNum:
        return self.terms.get((tuple(left), tuple(right)), CycNum.zero(self.chi.N))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, CycNum.zero(self.chi.N)) - c
        return Tensor2(self.chi, {k: c for k, c in out.items() if not c.is_zero()})


@lru_cache(maxsize=65536)
def _coproduct_word(chi: Bicharacter, w: Word) -> tuple:
    """Delta(w) as ((left, right, exponent, multiplicity), ...).

    Built as Delta(w[:-1]) * Delta(x_last) with
    (a (x) b)(c (x) d) = chi(deg b, deg c) ac (x) bd.
    """
    th = chi.theta
    if not w:
        return (((), (), 0, 1),)
    prev = _coproduct_word(chi, w[:-1])
    i = w[-1]
    alpha = tuple(1 if k == i - 1 else 0 for k in range(th))
    acc: Counter = Counter()
    for a, b, e, m in prev:
        # times (x_i (x) 1): crossing b past x_i
        acc[(a + (i,), b, (e + chi.e_pair(degree(b, th), alpha)) % chi.N)] += m
        # times (1 (x) x_i): no crossing
        acc[(a, b + (i,), e)] += m
    return tuple((a, b, e, m) for (a, b, e), m in sorted(acc.items()) if m)


def coproduct(x: TensorElem) -> Tensor2:
    chi = x.chi
    N = chi.N
    out: dict[tuple[Word, Word], list] = {}
    for w, c in x.terms().items():
        for a, b, e, m in _coproduct_word(chi, w):
            vec = out.setdefault((a, b), [Fraction(0)] * N)
            for k, v in enumerate(c.embed(N).coeffs):
                if v:
                    vec[(k + e) % N] += m * v
    terms = {}
    for k, vec in out.items():
        c = CycNum(N, vec)
        if not c.is_zero():
            terms[k] = c
    return Tensor2(chi, terms)


def reduced_coproduct(x: TensorElem) -> Tensor2:
    """Delta(x) - x (x) 1 - 1 (x) x."""
    d = coproduct(x)
    terms = dict(d.terms)
    for w, c in x.terms().items():
        for key in ((w, ()), ((), w)):
            v = terms.get(key, CycNum.zero(x.N)) - c
            if v.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = v
    return Tensor2(x.chi, terms)


def _ring_mul(p: tuple, q: tuple, shift: int, m: int, N: int, acc: list) -> None:
    """acc += m * zeta^shift * p * q in the group ring Z[C_N]."""
    for s, a in enumerate(p):
        if a:
            for t, b in enumerate(q):
                if b:
                    acc[(s + t + shift) % N] += m * a * b


@lru_cache(maxsize=None)
def _pair_words_ring(chi: Bicharacter, u: Word, v: Word) -> tuple | None:
    """(u | v) as an integer vector over 1, zeta, ..., zeta^{N-1}; None for 0.

    All values are integer combinations of roots of unity, so the recursion
    stays in Z[C_N] and reduction modulo Phi_N is left to the caller.
    """
    N = chi.N
    if len(u) != len(v):
        return None
    if len(u) <= 1:
        return (1,) + (0,) * (N - 1) if u == v else None
    th = chi.theta
    if degree(u, th) != degree(v, th):
        return None
    # (u | y y') = sum (u_(1) | y) (u_(2) | y') with a middle split of v
    k = len(v) // 2
    y, y2 = v[:k], v[k:]
    acc = [0] * N
    for a, b, e, m in _coproduct_word(chi, u):
        if len(a) != len(y):
            continue
        p = _pair_words_ring(chi, a, y)
        if p is None:
            continue
        q = _pair_words_ring(chi, b, y2)
        if q is None:
            continue
        _ring_mul(p, q, e, m, N, acc)
    return tuple(acc) if any(acc) else None


def _pair_words_coproduct(chi: Bicharacter, u: Word, v: Word) -> CycNum:
    r = _pair_words_ring(chi, u, v)
    return CycNum.zero(chi.N) if r is None else CycNum(chi.N, r)


def pairing_coproduct(x: TensorElem, y: TensorElem) -> CycNum:
    """(x | y) computed only from the coproduct and the defining axioms."""
    total = CycNum.zero(x.N)
    ty = y.terms()
    for u, a in x.terms().items():
        for v, b in ty.items():
            if len(u) == len(v):
                p = _pair_words_coproduct(x.chi, u, v)
                if not p.is_zero():
                    total = total + a * b * p
    return total
