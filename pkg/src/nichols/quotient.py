"""B(V) = T(V)/I(V) with I(V) the radical of the canonical pairing.

Per Z^theta-degree d we keep a table with

* the words of degree d (lex order) and their int64 codes,
* a set D_d of "dual words" whose functionals (. | w), w in D_d, form a
  basis of the dual of B(V)_d,
* K_d[u, c] = (u | D_d[c]) for every word u, as cyclotomic integers.

Since (u | w x_i) = (d^K_i u | w), the columns (i, w) with w in D_{d - a_i}
already span all functionals on degree d, and their values are obtained
from the lower tables without any division.  Everything is exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from . import linalg
from .braided import TensorElem, _red, _check_length, decode, skew_derivation_K
from .cartanweyl import Bicharacter
from .cyclotomic import CycNum, totient
from .words import Word, degrees_up_to, is_lyndon, words_of_degree

DEFAULT_MAX_DEGREE = 8
# in_radical stops the derivative recursion at degrees with at most this
# many words and checks against the table there
DEFAULT_LEAF_WORDS = 2500


class CapExceeded(ValueError):
    pass


def max_degree_from_env(default: int = DEFAULT_MAX_DEGREE) -> int:
    raw = os.environ.get("NICHOLS_MAX_DEGREE")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NICHOLS_MAX_DEGREE must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("NICHOLS_MAX_DEGREE must be non-negative")
    return value


def _multinomial(delta: Sequence[int]) -> int:
    from math import factorial

    out = factorial(sum(delta))
    for d in delta:
        out //= factorial(d)
    return out


@dataclass
class DegreeTable:
    degree: tuple[int, ...]
    words: list[Word]
    codes: np.ndarray
    K: np.ndarray
    good: list[Word]
    good_codes: np.ndarray
    dual: list[Word]

    @property
    def dim(self) -> int:
        return len(self.good)

    def index(self, codes) -> np.ndarray:
        idx = np.searchsorted(self.codes, codes)
        if np.any(idx >= self.codes.size) or np.any(self.codes[np.minimum(idx, self.codes.size - 1)] != codes):
            raise KeyError("word not of this degree")
        return idx


@dataclass
class DegreeComponent:
    """Full Gram matrix of one degree (small degrees only)."""

    degree: tuple[int, ...]
    words: list[Word]
    gram: np.ndarray  # (W, W, N), reduced cyclotomic integers
    N: int
    rank: int
    good: list[bool]

    def entry(self, i: int, j: int) -> CycNum:
        return CycNum(self.N, [int(x) for x in self.gram[i, j]])


@dataclass
class PBWGenerator:
    word: Word
    degree: tuple[int, ...]
    q_exp: int  # q_{u,u} = zeta_N^q_exp
    order: int  # ord q_{u,u}
    height: int | None  # None: no degradation within the cap


@dataclass
class PBWData:
    generators: list[PBWGenerator]
    predicted: dict[tuple[int, ...], int]
    max_degree: int
    height_mismatches: list[Word] = field(default_factory=list)


def _overflow_safe(arr, factor: int):
    if arr.dtype == object:
        return arr
    if arr.size and int(np.abs(arr).max()) * factor >= (1 << 62):
        return arr.astype(object)
    return arr


class Nichols:
    """Lazily built degree tables for one braiding."""

    def __init__(self, chi: Bicharacter, max_degree: int | None = None, leaf_words: int = DEFAULT_LEAF_WORDS):
        self.chi = chi
        self.max_degree = max_degree_from_env() if max_degree is None else max_degree
        self.leaf_words = leaf_words
        self._tables: dict[tuple[int, ...], DegreeTable] = {}
        self._grams: dict[tuple[int, ...], np.ndarray] = {}
        self.red = _red(chi.N)

    # -- helpers --------------------------------------------------------
    def _unit(self, i: int) -> tuple[int, ...]:
        return tuple(1 if k == i else 0 for k in range(self.chi.theta))

    def _check_cap(self, delta, cap: int | None = None) -> None:
        cap = self.max_degree if cap is None else cap
        if sum(delta) > cap:
            raise CapExceeded(f"degree {tuple(delta)} exceeds the cap {cap}")

    def _derived_columns(self, delta, codes, lower):
        """Columns (i, c) -> sum over positions of zeta^shift * lower_i[u minus p, c].

        ``lower(i)`` returns (codes, matrix) of degree delta - alpha_i.
        """
        chi = self.chi
        th, N = chi.theta, chi.N
        L = sum(delta)
        digits = K._np_digits(codes, L, th)
        blocks = []
        for i in range(th):
            if delta[i] == 0:
                continue
            lcodes, M = lower(i)
            ncol = M.shape[1]
            M = _overflow_safe(M, L * N * 4)
            acc = np.zeros((codes.size, ncol, N), dtype=M.dtype)
            if ncol:
                ev = np.array([chi.e(i, l) for l in range(th)], dtype=np.int64)
                w = ev[digits]
                suffix = np.cumsum(w[:, ::-1], axis=1)[:, ::-1]
                cols = np.arange(N)
                for p in range(L):
                    rows = np.flatnonzero(digits[:, p] == i)
                    if rows.size == 0:
                        continue
                    hi, lo = th ** (L - p), th ** (L - 1 - p)
                    c = codes[rows]
                    t = np.searchsorted(lcodes, (c // hi) * lo + c % lo)
                    sh = (suffix[rows, p + 1] if p + 1 < L else np.zeros(rows.size, dtype=np.int64)) % N
                    idx = (cols[None, :] - sh[:, None]) % N
                    src = M[t]
                    acc[rows] += np.take_along_axis(src, np.broadcast_to(idx[:, None, :], src.shape), axis=2)
                acc = acc @ (self.red.astype(acc.dtype))
            blocks.append(acc)
        H = np.concatenate(blocks, axis=1) if blocks else np.zeros((codes.size, 0, N), dtype=np.int64)
        return H

    # -- tables ---------------------------------------------------------
    def table(self, delta: Sequence[int]) -> DegreeTable:
        delta = tuple(int(x) for x in delta)
        if len(delta) != self.chi.theta or any(x < 0 for x in delta):
            raise ValueError(f"bad degree {delta}")
        tab = self._tables.get(delta)
        if tab is not None:
            return tab
        # build lower tables first, smallest total degree first
        pending = [delta]
        order = []
        seen = set()
        while pending:
            d = pending.pop()
            if d in seen or d in self._tables:
                continue
            seen.add(d)
            order.append(d)
            for i in range(len(d)):
                if d[i]:
                    pending.append(d[:i] + (d[i] - 1,) + d[i + 1 :])
        for d in sorted(order, key=sum):
            self._tables[d] = self._build(d)
        return self._tables[delta]

    def _build(self, delta: tuple[int, ...]) -> DegreeTable:
        chi = self.chi
        th, N = chi.theta, chi.N
        L = sum(delta)
        _check_length(L, th)
        if L == 0:
            one = np.zeros((1, 1, N), dtype=np.int64)
            one[0, 0, 0] = 1
            return DegreeTable(delta, [()], np.zeros(1, dtype=np.int64), one, [()], np.zeros(1, dtype=np.int64), [()])
        words = words_of_degree(delta)
        codes = np.array([_code(w, th) for w in words], dtype=np.int64)

        def lower(i):
            t = self._tables[delta[:i] + (delta[i] - 1,) + delta[i + 1 :]]
            return t.codes, t.K

        H = self._derived_columns(delta, codes, lower)
        col_words = []
        for i in range(th):
            if delta[i]:
                t = self._tables[delta[:i] + (delta[i] - 1,) + delta[i + 1 :]]
                col_words.extend(w + (i + 1,) for w in t.dual)

        # only words whose prefix and suffix of length L-1 are good can be good
        pref = codes // th
        suff = codes % (th ** (L - 1))
        cand = np.ones(codes.size, dtype=bool)
        for i in range(th):
            if not delta[i]:
                continue
            t = self._tables[delta[:i] + (delta[i] - 1,) + delta[i + 1 :]]
            last = (codes % th) == i
            first = (codes // th ** (L - 1)) == i
            cand &= ~last | np.isin(pref, t.good_codes)
            cand &= ~first | np.isin(suff, t.good_codes)
        cand_idx = np.flatnonzero(cand)[::-1]  # lex descending
        if H.shape[1] == 0 or cand_idx.size == 0:
            prof = []
        else:
            prof = linalg.row_profile(H[cand_idx], N)
        good_idx = sorted(int(cand_idx[p]) for p in prof)
        if good_idx:
            cols = linalg.column_profile(H[good_idx], N)
        else:
            cols = []
        Kd = H[:, cols] if cols else np.zeros((codes.size, 0, N), dtype=np.int64)
        return DegreeTable(
            degree=delta,
            words=words,
            codes=codes,
            K=Kd,
            good=[words[k] for k in good_idx],
            good_codes=codes[good_idx] if good_idx else np.zeros(0, dtype=np.int64),
            dual=[col_words[c] for c in cols],
        )

    def dim(self, delta: Sequence[int]) -> int:
        self._check_cap(delta)
        return self.table(delta).dim

    # -- full Gram matrices (small degrees) -----------------------------
    def full_gram(self, delta: Sequence[int]) -> np.ndarray:
        delta = tuple(delta)
        G = self._grams.get(delta)
        if G is not None:
            return G
        th, N = self.chi.theta, self.chi.N
        L = sum(delta)
        if L == 0:
            G = np.zeros((1, 1, N), dtype=np.int64)
            G[0, 0, 0] = 1
        else:
            words = words_of_degree(delta)
            codes = np.array([_code(w, th) for w in words], dtype=np.int64)

            def lower(i):
                d = delta[:i] + (delta[i] - 1,) + delta[i + 1 :]
                lw = words_of_degree(d)
                return np.array([_code(w, th) for w in lw], dtype=np.int64), self.full_gram(d)

            H = self._derived_columns(delta, codes, lower)
            # column (i, w') is the word w' x_i; reorder columns to match words
            col_codes = []
            for i in range(th):
                if delta[i]:
                    d = delta[:i] + (delta[i] - 1,) + delta[i + 1 :]
                    col_codes.extend(_code(w + (i + 1,), th) for w in words_of_degree(d))
            perm = np.argsort(np.array(col_codes, dtype=np.int64))
            G = H[:, perm]
        self._grams[delta] = G
        return G

    def gram(self, delta: Sequence[int]) -> DegreeComponent:
        delta = tuple(delta)
        self._check_cap(delta)
        G = self.full_gram(delta)
        tab = self.table(delta)
        words = tab.words
        goodset = set(tab.good)
        return DegreeComponent(
            degree=delta,
            words=words,
            gram=G,
            N=self.chi.N,
            rank=linalg.rank(G, self.chi.N),
            good=[w in goodset for w in words],
        )

    # -- radical membership -----------------------------------------------
    def in_radical(self, x: TensorElem, cap: int | None = None) -> bool:
        if x.chi != self.chi:
            raise ValueError("element belongs to a different braiding")
        if x.is_zero():
            return True
        delta = x.degree()
        if cap is not None:
            self._check_cap(delta, cap)
        return self._in_radical(x, delta)

    def _in_radical(self, x: TensorElem, delta: tuple[int, ...]) -> bool:
        if x.is_zero():
            return True
        if sum(delta) == 0:
            return False
        if delta in self._tables or _multinomial(delta) <= self.leaf_words:
            return self._leaf_zero(x, delta)
        for i in range(self.chi.theta):
            if delta[i] == 0:
                continue
            y = skew_derivation_K(i + 1, x)
            if not self._in_radical(y, delta[:i] + (delta[i] - 1,) + delta[i + 1 :]):
                return False
        return True

    def _leaf_zero(self, x: TensorElem, delta) -> bool:
        tab = self.table(delta)
        if tab.dim == 0:
            return True
        L = sum(delta)
        codes, num = x.parts[L]
        idx = tab.index(codes)
        vals = linalg.cyc_matmul(num[None, :, :], tab.K[idx], self.red)
        return not np.any(vals != 0)

    def coordinates(self, x: TensorElem) -> np.ndarray:
        """The vector ((x | w))_{w in D_d} (times the denominator of x)."""
        delta = x.degree()
        tab = self.table(delta)
        L = sum(delta)
        codes, num = x.parts[L]
        return linalg.cyc_matmul(num[None, :, :], tab.K[tab.index(codes)], self.red)[0]

    # -- PBW data -------------------------------------------------------
    def good_words(self, delta: Sequence[int]) -> list[Word]:
        """Good words of degree delta, lex-largest first."""
        self._check_cap(delta)
        return sorted(self.table(delta).good, reverse=True)

    def pbw_generators(self, max_degree: int | None = None) -> PBWData:
        cap = self.max_degree if max_degree is None else max_degree
        th = self.chi.theta
        gens = []
        mismatches = []
        for delta in degrees_up_to(th, cap, lower=1):
            tab = self.table(delta)
            for u in sorted(tab.good):
                if not is_lyndon(u):
                    continue
                e = self.chi.e_pair(delta, delta)
                order = self.chi.order_of(e)
                height = None
                t = 2
                while t * sum(delta) <= cap:
                    tt = self.table(tuple(t * x for x in delta))
                    if u * t not in set(tt.good):
                        height = t
                        break
                    t += 1
                if height is not None and height != order:
                    mismatches.append(u)
                gens.append(PBWGenerator(u, delta, e, order, height))
        predicted = _pbw_series(gens, th, cap)
        return PBWData(gens, predicted, cap, mismatches)

    def hilbert_series(self, max_degree: int | None = None) -> dict[tuple[int, ...], tuple[int, int]]:
        cap = self.max_degree if max_degree is None else max_degree
        pbw = self.pbw_generators(cap)
        out = {}
        for delta in degrees_up_to(self.chi.theta, cap):
            out[delta] = (self.table(delta).dim, pbw.predicted.get(delta, 0))
        return out


def _code(w: Sequence[int], th: int) -> int:
    c = 0
    for a in w:
        c = c * th + (a - 1)
    return c


def _pbw_series(gens: Iterable[PBWGenerator], theta: int, cap: int) -> dict[tuple[int, ...], int]:
    """Count ordered monomials prod x_u^{n_u}, n_u < height_u, per degree."""
    series = {(0,) * theta: 1}
    for g in gens:
        top = g.height if g.height is not None else cap // sum(g.degree) + 1
        nxt: dict = {}
        for d, c in series.items():
            for k in range(top):
                e = tuple(a + k * b for a, b in zip(d, g.degree))
                if sum(e) > cap:
                    break
                nxt[e] = nxt.get(e, 0) + c
        series = nxt
    return series


@lru_cache(maxsize=64)
def nichols(chi: Bicharacter, max_degree: int | None = None) -> Nichols:
    return Nichols(chi, max_degree)


def gram(delta: Sequence[int], chi: Bicharacter) -> DegreeComponent:
    return nichols(chi).gram(delta)


def in_radical(x: TensorElem, chi: Bicharacter | None = None) -> bool:
    return nichols(chi or x.chi).in_radical(x)


def good_words(delta: Sequence[int], chi: Bicharacter) -> list[Word]:
    return nichols(chi).good_words(delta)


def pbw_generators(chi: Bicharacter, max_degree: int | None = None) -> PBWData:
    return nichols(chi).pbw_generators(max_degree)


def hilbert_series(chi: Bicharacter, max_degree: int | None = None):
    return nichols(chi).hilbert_series(max_degree)
