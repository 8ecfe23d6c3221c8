from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nichols.words import (
    WordError,
    all_words,
    deglex_compare,
    degree,
    degrees_up_to,
    is_lyndon,
    lyndon_decomposition,
    lyndon_words_of_degree,
    lyndon_words_up_to,
    shirshov_split,
    words_of_degree,
)

words = st.lists(st.integers(1, 3), min_size=1, max_size=10).map(tuple)


def mobius(n):
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def necklace_count(theta, n):
    """Number of Lyndon words of length n over theta letters (Witt's formula)."""
    return sum(mobius(d) * theta ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def lyndon_by_rotation(u):
    rots = [u[k:] + u[:k] for k in range(1, len(u))]
    return all(u < r for r in rots)


@settings(max_examples=200, deadline=None)
@given(words)
def test_lyndon_matches_rotation_test(u):
    assert is_lyndon(u) == lyndon_by_rotation(u)


@settings(max_examples=200, deadline=None)
@given(words)
def test_decomposition(u):
    parts = lyndon_decomposition(u)
    assert sum(parts, ()) == u
    assert all(is_lyndon(p) for p in parts)
    assert all(a >= b for a, b in zip(parts, parts[1:]))


@settings(max_examples=200, deadline=None)
@given(words.filter(lambda u: len(u) > 1 and is_lyndon(u)))
def test_shirshov_split(u):
    left, right = shirshov_split(u)
    assert left + right == u
    assert is_lyndon(left) and is_lyndon(right)
    assert right == min(u[k:] for k in range(1, len(u)))


def test_shirshov_examples():
    assert shirshov_split((1, 2)) == ((1,), (2,))
    assert shirshov_split((1, 1, 2)) == ((1,), (1, 2))
    assert shirshov_split((1, 1, 2, 1, 2)) == ((1, 1, 2), (1, 2))
    assert shirshov_split((1, 2, 2)) == ((1, 2), (2,))


def test_split_errors():
    with pytest.raises(WordError):
        shirshov_split((2, 1))
    with pytest.raises(WordError):
        shirshov_split((1,))
    with pytest.raises(WordError):
        is_lyndon(())


@pytest.mark.parametrize("theta", [1, 2, 3])
def test_generator_counts(theta):
    gen = list(lyndon_words_up_to(theta, 7))
    assert gen == sorted(gen)
    for n in range(1, 8):
        assert sum(len(w) == n for w in gen) == necklace_count(theta, n)
        assert sorted(w for w in all_words(theta, n) if is_lyndon(w)) == [w for w in gen if len(w) == n]


def test_words_of_degree():
    for gamma in [(2, 1), (1, 1, 1), (3, 0, 2), (0, 0)]:
        ws = words_of_degree(gamma)
        n = sum(gamma)
        count = factorial(n)
        for g in gamma:
            count //= factorial(g)
        assert len(ws) == count
        assert ws == sorted(ws)
        assert all(degree(w, len(gamma)) == gamma for w in ws)
    assert lyndon_words_of_degree((2, 1)) == [(1, 1, 2)]


def test_lyndon_words_of_degree_two_two():
    assert lyndon_words_of_degree((2, 2)) == [(1, 1, 2, 2)]
    assert lyndon_words_of_degree((3, 2)) == [(1, 1, 1, 2, 2), (1, 1, 2, 1, 2)]


def test_deglex():
    assert deglex_compare((1,), (1, 1)) == 1
    assert deglex_compare((2, 1), (1, 2)) == 1
    assert deglex_compare((1, 2), (1, 2)) == 0
    assert deglex_compare((1, 1, 2), (2,)) == -1


def test_degrees_up_to():
    degs = list(degrees_up_to(2, 3))
    assert len(degs) == 10
    assert degs[0] == (0, 0)
    assert [sum(d) for d in degs] == sorted(sum(d) for d in degs)
    assert list(degrees_up_to(3, 2, 2)) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
