"""Hot loops on packed homogeneous tensor components.

A homogeneous component of length L is stored as

    codes : int64[n]      word codes, digit p = letter_p - 1 in base theta
    num   : int[n, N]     integer coefficient vectors in Z[x]/(x^N - 1)

Codes of equal-length words compare like the words themselves under lex
order.  Every kernel exists twice: a numba ``@njit`` loop version and a
vectorised numpy version.  ``NICHOLS_NUMBA=0`` forces the numpy path; the
numpy path is also used whenever coefficients are Python integers (object
dtype), which happens once values could overflow int64.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

# coefficients are kept below this bound in int64 mode; products of two such
# values summed over a cyclic convolution still fit.
SAFE_BOUND = 1 << 26


def numba_enabled() -> bool:
    if not HAVE_NUMBA:
        return False
    flag = os.environ.get("NICHOLS_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


# ----------------------------------------------------------------------
# numpy implementations (work for int64 and object dtype)
# ----------------------------------------------------------------------


def _np_collect(codes, num, red):
    if codes.size == 0:
        return codes.astype(np.int64), num
    order = np.argsort(codes, kind="stable")
    codes = codes[order]
    num = num[order]
    starts = np.flatnonzero(np.concatenate(([True], codes[1:] != codes[:-1])))
    if starts.size != codes.size:
        num = np.add.reduceat(num, starts, axis=0)
        codes = codes[starts]
    num = num @ red
    keep = np.any(num != 0, axis=1)
    return codes[keep], num[keep]


def _np_product(ca, na, cb, nb, shift, red):
    n_a, n_b = ca.size, cb.size
    N = na.shape[1]
    codes = (ca[:, None] * shift + cb[None, :]).reshape(-1)
    dtype = object if (na.dtype == object or nb.dtype == object) else np.int64
    out = np.zeros((n_a, n_b, N), dtype=dtype)
    for s in range(N):
        col = nb[:, s]
        if not np.any(col != 0):
            continue
        # x^r * x^s lands in x^{(r+s) mod N}
        rolled = np.roll(na, s, axis=1)
        out += rolled[:, None, :] * col[None, :, None]
    num = out.reshape(n_a * n_b, N) @ red
    keep = np.any(num != 0, axis=1)
    return codes[keep], num[keep]


def _np_digits(codes, L, theta):
    digits = np.zeros((codes.size, L), dtype=np.int64)
    rest = codes.copy()
    for p in range(L - 1, -1, -1):
        digits[:, p] = rest % theta
        rest //= theta
    return digits


def _np_derivative(codes, num, L, theta, letter, expvec, side, red):
    N = num.shape[1]
    if codes.size == 0 or L == 0:
        return np.zeros(0, dtype=np.int64), num[:0]
    digits = _np_digits(codes, L, theta)
    weights = np.asarray(expvec, dtype=np.int64)[digits]
    if side == 0:
        # exponent of chi(alpha_i, degree of the suffix after p)
        acc = np.cumsum(weights[:, ::-1], axis=1)[:, ::-1]
        shifts = np.concatenate([acc[:, 1:], np.zeros((codes.size, 1), dtype=np.int64)], axis=1)
    else:
        acc = np.cumsum(weights, axis=1)
        shifts = np.concatenate([np.zeros((codes.size, 1), dtype=np.int64), acc[:, :-1]], axis=1)
    out_codes = []
    out_num = []
    cols = np.arange(N)
    for p in range(L):
        rows = np.flatnonzero(digits[:, p] == letter)
        if rows.size == 0:
            continue
        hi = theta ** (L - p)
        lo = theta ** (L - 1 - p)
        c = codes[rows]
        out_codes.append((c // hi) * lo + c % lo)
        sh = shifts[rows, p] % N
        idx = (cols[None, :] - sh[:, None]) % N
        out_num.append(np.take_along_axis(num[rows], idx, axis=1))
    if not out_codes:
        return np.zeros(0, dtype=np.int64), num[:0]
    return _np_collect(np.concatenate(out_codes), np.concatenate(out_num), red)


# ----------------------------------------------------------------------
# numba implementations (int64 only)
# ----------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_reduce_sorted(codes, num, order, red):
        """Merge equal neighbours of codes[order] (sorted), reduce mod Phi_N, drop zeros."""
        n = codes.size
        N = num.shape[1]
        out_codes = np.empty(n, dtype=np.int64)
        out_num = np.zeros((n, N), dtype=np.int64)
        m = -1
        for t in range(n):
            r = order[t]
            c = codes[r]
            if m < 0 or c != out_codes[m]:
                m += 1
                out_codes[m] = c
            for k in range(N):
                out_num[m, k] += num[r, k]
        m += 1
        # rows below phi(N) of red are unit vectors
        phi = 0
        while phi < N and red[phi, phi] == 1 and np.count_nonzero(red[phi]) == 1:
            phi += 1
        tmp = np.zeros(N, dtype=np.int64)
        cnt = 0
        for t in range(m):
            for j in range(N):
                tmp[j] = out_num[t, j] if j < phi else 0
            for k in range(phi, N):
                v = out_num[t, k]
                if v != 0:
                    for j in range(N):
                        tmp[j] += v * red[k, j]
            nz = False
            for j in range(N):
                if tmp[j] != 0:
                    nz = True
            if nz:
                out_codes[cnt] = out_codes[t]
                for j in range(N):
                    out_num[cnt, j] = tmp[j]
                cnt += 1
        return out_codes[:cnt].copy(), out_num[:cnt].copy()

    @njit(cache=True)
    def _nb_collect(codes, num, red):
        n = codes.size
        ordered = True
        for t in range(1, n):
            if codes[t] < codes[t - 1]:
                ordered = False
                break
        if ordered:
            return _nb_reduce_sorted(codes, num, np.arange(n), red)
        return _nb_reduce_sorted(codes, num, np.argsort(codes, kind="mergesort"), red)

    @njit(cache=True)
    def _nb_merge_runs(codes, bounds):
        """Permutation sorting codes made of sorted runs codes[bounds[r]:bounds[r+1]]."""
        n = codes.size
        idx = np.arange(n)
        buf = np.empty(n, dtype=np.int64)
        b = bounds.copy()
        nruns = b.size - 1
        while nruns > 1:
            nb = np.empty(nruns // 2 + nruns % 2 + 1, dtype=np.int64)
            nb[0] = 0
            w = 0
            r = 0
            k = 1
            while r < nruns:
                lo = b[r]
                mid = b[r + 1]
                hi = b[r + 2] if r + 1 < nruns else mid
                i, j = lo, mid
                while i < mid and j < hi:
                    if codes[idx[j]] < codes[idx[i]]:
                        buf[w] = idx[j]
                        j += 1
                    else:
                        buf[w] = idx[i]
                        i += 1
                    w += 1
                while i < mid:
                    buf[w] = idx[i]
                    i += 1
                    w += 1
                while j < hi:
                    buf[w] = idx[j]
                    j += 1
                    w += 1
                nb[k] = w
                k += 1
                r += 2
            idx, buf = buf, idx
            b = nb
            nruns = b.size - 1
        return idx

    @njit(cache=True)
    def _nb_product(ca, na, cb, nb, shift, red):
        n_a = ca.size
        n_b = cb.size
        N = na.shape[1]
        codes = np.empty(n_a * n_b, dtype=np.int64)
        num = np.zeros((n_a * n_b, N), dtype=np.int64)
        tmp = np.zeros(N, dtype=np.int64)
        keep = np.zeros(n_a * n_b, dtype=np.bool_)
        for a in range(n_a):
            for b in range(n_b):
                t = a * n_b + b
                codes[t] = ca[a] * shift + cb[b]
                for j in range(N):
                    tmp[j] = 0
                for r in range(N):
                    x = na[a, r]
                    if x == 0:
                        continue
                    for s in range(N):
                        y = nb[b, s]
                        if y != 0:
                            tmp[(r + s) % N] += x * y
                nz = False
                for k in range(N):
                    v = tmp[k]
                    if v != 0:
                        for j in range(N):
                            num[t, j] += v * red[k, j]
                for j in range(N):
                    if num[t, j] != 0:
                        nz = True
                keep[t] = nz
        cnt = 0
        for t in range(n_a * n_b):
            if keep[t]:
                cnt += 1
        rc = np.empty(cnt, dtype=np.int64)
        rn = np.empty((cnt, N), dtype=np.int64)
        s = 0
        for t in range(n_a * n_b):
            if keep[t]:
                rc[s] = codes[t]
                for j in range(N):
                    rn[s, j] = num[t, j]
                s += 1
        return rc, rn

    @njit(cache=True)
    def _nb_derivative(codes, num, L, theta, letter, expvec, side, red):
        n = codes.size
        N = num.shape[1]
        digits = np.empty(L, dtype=np.int64)
        # outputs are grouped by the deleted position p; for sorted input
        # each group comes out sorted, so the groups only need merging
        counts = np.zeros(L + 1, dtype=np.int64)
        ordered = True
        for t in range(n):
            if t > 0 and codes[t] < codes[t - 1]:
                ordered = False
            c = codes[t]
            for p in range(L - 1, -1, -1):
                if c % theta == letter:
                    counts[p + 1] += 1
                c //= theta
        bounds = np.cumsum(counts)
        fill = bounds[:L].copy()
        total = bounds[L]
        out_codes = np.empty(total, dtype=np.int64)
        out_num = np.empty((total, N), dtype=np.int64)
        pw = np.empty(L + 1, dtype=np.int64)
        pw[0] = 1
        for p in range(1, L + 1):
            pw[p] = pw[p - 1] * theta
        for t in range(n):
            c = codes[t]
            for p in range(L - 1, -1, -1):
                digits[p] = c % theta
                c //= theta
            acc = 0
            for q in range(L):
                # side 0 walks from the right: shift = suffix after p
                p = L - 1 - q if side == 0 else q
                if digits[p] == letter:
                    s = fill[p]
                    fill[p] += 1
                    out_codes[s] = (codes[t] // pw[L - p]) * pw[L - 1 - p] + codes[t] % pw[L - 1 - p]
                    sh = acc % N
                    for k in range(N):
                        out_num[s, (k + sh) % N] = num[t, k]
                acc += expvec[digits[p]]
        if not ordered:
            return _nb_collect(out_codes, out_num, red)
        return _nb_reduce_sorted(out_codes, out_num, _nb_merge_runs(out_codes, bounds), red)


# ----------------------------------------------------------------------
# dispatch with overflow guards
# ----------------------------------------------------------------------


def _maxabs(num) -> int:
    if num.size == 0:
        return 0
    if num.dtype == object:
        return int(max(abs(int(v)) for v in num.flat))
    return int(np.abs(num).max())


def normalize_dtype(num):
    """Return num as int64 when its entries are small enough, else as object."""
    if num.dtype == object:
        if num.size == 0 or _maxabs(num) < SAFE_BOUND:
            return num.astype(np.int64)
        return num
    if num.size and _maxabs(num) >= SAFE_BOUND:
        return num.astype(object)
    return num.astype(np.int64, copy=False)


def _red_factor(red) -> int:
    return int(np.abs(red).sum(axis=1).max()) if red.size else 1


def collect(codes, num, red):
    codes = np.asarray(codes, dtype=np.int64)
    N = red.shape[0]
    if num.dtype != object:
        bound = _maxabs(num) * max(1, codes.size) * _red_factor(red)
        if bound < (1 << 62):
            if numba_enabled():
                c, n = _nb_collect(codes, num.astype(np.int64), red)
            else:
                c, n = _np_collect(codes, num.astype(np.int64), red)
            return c, normalize_dtype(n)
    c, n = _np_collect(codes, num.astype(object) if num.dtype != object else num, red.astype(object))
    return c, normalize_dtype(n)


def product(ca, na, cb, nb, shift, red):
    N = red.shape[0]
    if na.dtype != object and nb.dtype != object:
        bound = _maxabs(na) * _maxabs(nb) * N * _red_factor(red)
        if bound < (1 << 62):
            if numba_enabled():
                c, n = _nb_product(ca, na, cb, nb, np.int64(shift), red)
            else:
                c, n = _np_product(ca, na, cb, nb, shift, red)
            return c, normalize_dtype(n)
    c, n = _np_product(ca, na.astype(object), cb, nb.astype(object), shift, red.astype(object))
    return c, normalize_dtype(n)


def derivative(codes, num, L, theta, letter, expvec, side, red):
    expvec = np.asarray(expvec, dtype=np.int64)
    if num.dtype != object:
        bound = _maxabs(num) * max(1, L) * _red_factor(red)
        if bound < (1 << 62):
            if numba_enabled():
                c, n = _nb_derivative(codes, num, L, theta, letter, expvec, side, red)
            else:
                c, n = _np_derivative(codes, num, L, theta, letter, expvec, side, red)
            return c, normalize_dtype(n)
    c, n = _np_derivative(codes, num.astype(object), L, theta, letter, expvec, side, red.astype(object))
    return c, normalize_dtype(n)


def numpy_collect(codes, num, red):
    """Pure-numpy path, exposed for the benchmark and for cross-checks."""
    c, n = _np_collect(np.asarray(codes, dtype=np.int64), num, red)
    return c, n


def numpy_product(ca, na, cb, nb, shift, red):
    return _np_product(ca, na, cb, nb, shift, red)


def numpy_derivative(codes, num, L, theta, letter, expvec, side, red):
    return _np_derivative(codes, num, L, theta, letter, np.asarray(expvec, dtype=np.int64), side, red)


def reduction_matrix(N: int) -> np.ndarray:
    """N x N integer matrix: row k is x^k mod Phi_N, padded with zeros."""
    from .cyclotomic import power_reduction, totient

    red = np.zeros((N, N), dtype=np.int64)
    rows = power_reduction(N)
    phi = totient(N)
    for k in range(N):
        red[k, :phi] = rows[k]
    return red
