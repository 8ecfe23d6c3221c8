import numpy as np
import pytest

from conftest import example_case
from nichols.braided import TensorElem, ad_c_power, braided_bracket
from nichols.cartanweyl import Bicharacter
from nichols.cli import example_names
from nichols.cyclotomic import CycNum
from nichols.quotient import CapExceeded, Nichols, hilbert_series, in_radical, max_degree_from_env
from nichols.relations import root_vector
from nichols.words import all_words, degrees_up_to

A2_4 = Bicharacter(4, [[1, 3], [0, 1]])
PLANE = Bicharacter(2, [[1, 1], [0, 1]])


def test_rank_one_grams():
    assert Nichols(Bicharacter(2, [[1]])).gram((2,)).rank == 0
    g = Nichols(Bicharacter(3, [[1]])).gram((2,))
    assert g.rank == 1
    assert g.entry(0, 0) == 1 + CycNum.root(3, 1)
    for d in [(1, 0), (0, 1)]:
        assert Nichols(A2_4).gram(d).rank == 1


def test_symmetric_braiding_gives_symmetric_gram():
    chi = Bicharacter(6, [[1, 2, 5], [2, 3, 1], [5, 1, 4]])
    nq = Nichols(chi)
    for d in [(1, 1, 0), (1, 1, 1), (2, 1, 1), (1, 2, 0)]:
        G = nq.full_gram(d)
        assert np.array_equal(G, G.transpose(1, 0, 2))


@pytest.mark.parametrize("name", ["cartan_a2", "minus_one_plane", "super_a11", "standard_b2", "triangle"])
def test_gram_rank_equals_good_word_count(name):
    nq = example_case(name).nq
    th = nq.chi.theta
    for d in degrees_up_to(th, 5 if th == 2 else 4, 1):
        assert nq.gram(d).rank == nq.dim(d) == sum(nq.gram(d).good)


def test_in_radical_examples():
    chi = Bicharacter(2, [[1]])
    x1 = TensorElem.letter(chi, 1)
    assert in_radical(x1 * x1)
    assert not in_radical(x1)
    commuting = Bicharacter(6, [[1, 2], [4, 5]])  # q12 q21 = 1
    y1, y2 = TensorElem.letter(commuting, 1), TensorElem.letter(commuting, 2)
    assert in_radical(braided_bracket(y1, y2))
    assert in_radical(y1 * y2 - (y2 * y1).scale(commuting.q(0, 1)))


def test_good_words():
    nq = Nichols(A2_4)
    assert sorted(nq.good_words((1, 1))) == [(1, 2), (2, 1)]
    assert len(Nichols(Bicharacter(6, [[1, 2], [4, 5]])).good_words((1, 1))) == 1
    for n in range(1, 4):
        assert nq.good_words((n, 0)) == [(1,) * n]
    assert nq.good_words((4, 0)) == []


def test_pbw_generators():
    pbw = Nichols(A2_4).pbw_generators(6)
    # x_{12}^4 has degree 8, beyond the cap, so no height is observed for it
    assert [(g.word, g.height) for g in pbw.generators] == [((1,), 4), ((2,), 4), ((1, 2), None)]
    assert all(g.order == 4 for g in pbw.generators)
    plane = Nichols(PLANE).pbw_generators(6)
    assert sorted(g.degree for g in plane.generators) == [(0, 1), (1, 0), (1, 1)]
    assert [g.height for g in plane.generators] == [2, 2, 2]
    one = Nichols(Bicharacter(5, [[2]])).pbw_generators(6)
    assert [(g.word, g.height) for g in one.generators] == [((1,), 5)]


def test_hilbert_series():
    series = hilbert_series(A2_4, 6)
    assert all(g == p for g, p in series.values())
    assert series[(0, 0)] == (1, 1)
    one = hilbert_series(Bicharacter(2, [[1]]), 4)
    assert [one[(k,)][0] for k in range(5)] == [1, 1, 0, 0, 0]
    plane = hilbert_series(PLANE, 6)
    by_total = [sum(g for d, (g, _) in plane.items() if sum(d) == n) for n in range(7)]
    assert by_total == [1, 2, 2, 2, 1, 0, 0]


@pytest.mark.parametrize("name", ["cartan_a2_n4", "minus_one_plane", "super_a11", "standard_b2"])
def test_radical_is_an_ideal(name):
    case = example_case(name)
    nq = case.nq
    chi = case.chi
    elems = [r.element for r in case.relations if r.element is not None and sum(r.degree) <= 4]
    assert elems
    for x in elems:
        for n in (1, 2):
            for w in all_words(chi.theta, n):
                wt = TensorElem.word(chi, w)
                assert nq.in_radical(x * wt) and nq.in_radical(wt * x)


@pytest.mark.parametrize("name", ["cartan_b2", "super_a21", "triangle", "two_alpha_case2"])
def test_good_words_closed_under_factors(name):
    nq = example_case(name).nq
    th = nq.chi.theta
    good = {}
    for d in degrees_up_to(th, 5, 1):
        good.update({w: True for w in nq.table(d).good})
    for u in good:
        for k in range(1, len(u)):
            assert u[:k] in good and u[k:] in good


@pytest.mark.parametrize("name", example_names())
def test_heights_are_orders(name):
    case = example_case(name)
    pbw = case.nq.pbw_generators(min(case.cap, 6))
    assert pbw.height_mismatches == []


def test_coordinates_detect_the_radical():
    chi = Bicharacter(5, [[1, 4], [0, 1]])
    nq = Nichols(chi)
    serre = ad_c_power(1, 2, TensorElem.letter(chi, 2))
    assert nq.in_radical(serre)
    assert not np.any(nq.coordinates(serre))
    other = serre + TensorElem.word(chi, (1, 2, 1))
    assert not nq.in_radical(other)
    assert np.any(nq.coordinates(other))


def test_recursion_matches_direct_leaf():
    chi = Bicharacter(5, [[1, 4], [0, 1]])
    direct = Nichols(chi, leaf_words=10**6)
    tiny = Nichols(chi, leaf_words=2)
    x = root_vector(chi, (1, 1), direct)
    y = TensorElem.word(chi, (1, 2, 1, 2, 1, 2, 2, 1, 1, 2))
    for e in (x**5, x**4, x**4 * x.scale(3) + y, y):
        assert direct.in_radical(e) == tiny.in_radical(e)


def test_caps(monkeypatch):
    nq = Nichols(A2_4, max_degree=3)
    with pytest.raises(CapExceeded):
        nq.dim((2, 2))
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "5")
    assert max_degree_from_env() == 5
    assert Nichols(A2_4).max_degree == 5
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "lots")
    with pytest.raises(ValueError):
        max_degree_from_env()
