"""Words over the letters 1..theta, Lyndon words and their decompositions.

A word is a plain tuple of 1-based letter indices.  Python's tuple
comparison is exactly the lexicographic order with 1 < 2 < ... < theta in
which a proper prefix is smaller, which is the order used throughout.
"""

from __future__ import annotations

from functools import cmp_to_key, lru_cache
from itertools import product
from typing import Iterator, Sequence

Word = tuple[int, ...]


class WordError(ValueError):
    pass


def degree(u: Sequence[int], theta: int) -> tuple[int, ...]:
    deg = [0] * theta
    for a in u:
        deg[a - 1] += 1
    return tuple(deg)


def is_lyndon(u: Sequence[int]) -> bool:
    """True iff u is strictly smaller than each of its proper suffixes."""
    u = tuple(u)
    if not u:
        raise WordError("the empty word is not Lyndon")
    return all(u < u[k:] for k in range(1, len(u)))


def lyndon_decomposition(u: Sequence[int]) -> list[Word]:
    """Non-increasing factorisation into Lyndon words (Duval's algorithm)."""
    s = tuple(u)
    if not s:
        raise WordError("empty word has no Lyndon decomposition")
    n = len(s)
    out: list[Word] = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(s[i : i + j - k])
            i += j - k
    return out


def shirshov_split(u: Sequence[int]) -> tuple[Word, Word]:
    """Split a Lyndon word u = u1 u2 with u2 its smallest proper Lyndon suffix."""
    u = tuple(u)
    if len(u) < 2:
        raise WordError("Shirshov decomposition needs length >= 2")
    if not is_lyndon(u):
        raise WordError(f"{u} is not a Lyndon word")
    best = None
    for k in range(1, len(u)):
        left, right = u[:k], u[k:]
        if is_lyndon(right) and is_lyndon(left):
            if best is None or right < best[1]:
                best = (left, right)
    assert best is not None
    return best


def deglex_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """Return 1 if u > v in deg-lex (shorter is greater), -1 if u < v, 0 if equal."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return 1 if len(u) < len(v) else -1
    if u == v:
        return 0
    return 1 if u > v else -1


deglex_key = cmp_to_key(deglex_compare)


def words_of_degree(gamma: Sequence[int], max_length: int | None = None) -> list[Word]:
    """All words with letter multiplicities gamma, in increasing lex order."""
    gamma = tuple(int(g) for g in gamma)
    if any(g < 0 for g in gamma):
        raise WordError("negative degree")
    if max_length is not None and sum(gamma) > max_length:
        raise WordError(f"degree {gamma} exceeds the length cap {max_length}")
    return list(_words_of_degree(gamma))


@lru_cache(maxsize=4096)
def _words_of_degree(gamma: tuple[int, ...]) -> tuple[Word, ...]:
    out: list[Word] = []
    counts = list(gamma)
    n = sum(gamma)
    cur: list[int] = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for a, c in enumerate(counts):
            if c:
                counts[a] -= 1
                cur.append(a + 1)
                rec()
                cur.pop()
                counts[a] += 1

    rec()
    return tuple(out)


def lyndon_words_of_degree(gamma: Sequence[int]) -> list[Word]:
    return [w for w in _words_of_degree(tuple(gamma)) if is_lyndon(w)]


def lyndon_words_up_to(theta: int, length: int) -> Iterator[Word]:
    """Lyndon words of length <= length in increasing lex order (Duval's generator)."""
    w = [0]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == theta:
            w.pop()


def all_words(theta: int, length: int) -> Iterator[Word]:
    return (tuple(w) for w in product(range(1, theta + 1), repeat=length))


def degrees_up_to(theta: int, total: int, lower: int = 0) -> Iterator[tuple[int, ...]]:
    """All gamma in N^theta with lower <= |gamma| <= total, by total then lex."""
    for n in range(lower, total + 1):
        yield from _compositions(n, theta)


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest
