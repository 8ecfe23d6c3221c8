import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import example_case
from nichols.cartanweyl import (
    Bicharacter,
    CartanError,
    RootOfUnity,
    RootSystemError,
    cartan_matrix,
    reflect,
    reflect_vector,
    root_scalars,
    root_system,
)
from nichols.cli import example_names

A2 = Bicharacter(5, [[1, 4], [0, 1]])
B2 = Bicharacter(5, [[1, 3], [0, 2]])
G2 = Bicharacter(5, [[1, 2], [0, 3]])
A3 = Bicharacter(5, [[1, 4, 0], [0, 1, 4], [0, 0, 1]])
PLANE = Bicharacter(2, [[1, 1], [0, 1]])


def test_cartan_matrices():
    assert cartan_matrix(A2).a == ((2, -1), (-1, 2))
    assert cartan_matrix(B2).a == ((2, -2), (-1, 2))
    assert cartan_matrix(G2).a == ((2, -3), (-1, 2))
    assert cartan_matrix(A3).a == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert all(cartan_matrix(A2).cartan_vertex)


def test_commuting_vertices_give_zero():
    chi = Bicharacter(7, [[3, 2], [5, 6]])  # q12 q21 = 1
    assert cartan_matrix(chi).a[0][1] == 0


def test_minus_one_vertex_is_not_cartan():
    c = cartan_matrix(PLANE)
    assert c.a == ((2, -1), (-1, 2))
    assert c.cartan_vertex == (False, False)


def test_no_finite_entry():
    with pytest.raises(CartanError):
        cartan_matrix(Bicharacter(24, [[1, 3], [0, 1]]))


@pytest.mark.parametrize("chi,count", [(A2, 3), (B2, 4), (G2, 6), (A3, 6)])
def test_classical_root_counts(chi, count):
    rs = root_system(chi)
    assert len(rs.positive) == count
    assert len(rs.objects) == 1


def test_b2_roots():
    assert sorted(root_system(B2).positive) == [(0, 1), (1, 0), (1, 1), (2, 1)]


def test_rank_one():
    for N, e in [(2, 1), (3, 1), (7, 4)]:
        assert root_system(Bicharacter(N, [[e]])).positive == [(1,)]


def test_cartan_orbit():
    assert sorted(root_system(A2).cartan_orbit) == [(0, 1), (1, 0), (1, 1)]
    assert root_system(PLANE).cartan_orbit == []
    # a single vertex is Cartan by vacuity, so x^N carries the power relation
    assert root_system(Bicharacter(2, [[1]])).cartan_orbit == [(1,)]


def test_root_scalars():
    sc = root_scalars(root_system(A2))
    assert sc[(1, 1)] == (RootOfUnity(5, 1), 5)
    sc = root_scalars(root_system(PLANE))
    assert sc[(1, 1)] == (RootOfUnity(2, 1), 2)
    assert sc[(1, 0)][0] == RootOfUnity(2, 1)


def test_infinite_root_system_is_reported():
    with pytest.raises(RootSystemError):
        root_system(Bicharacter(13, [[1, 10], [0, 1]]))


def test_reflection_moves_roots():
    a = cartan_matrix(B2)
    assert reflect_vector(a, 1, (0, 1)) == (0, -1)
    assert reflect_vector(a, 0, (0, 1)) == (2, 1)
    assert reflect_vector(a, 1, (1, 0)) == (1, 1)


@st.composite
def rank_two(draw):
    N = draw(st.sampled_from([2, 3, 4, 6, 8, 12]))
    return Bicharacter(N, [[draw(st.integers(0, N - 1)) for _ in range(2)] for _ in range(2)])


@settings(max_examples=60, deadline=None)
@given(rank_two())
def test_reflection_is_an_involution(chi):
    try:
        c = cartan_matrix(chi)
    except CartanError:
        return
    for p in range(2):
        try:
            there = reflect(chi, p)
            back = reflect(there, p)
        except CartanError:
            continue
        assert back.key() == chi.key()
        assert cartan_matrix(there).a[p] == c.a[p]
        for i in range(2):
            assert there.e(i, i) % chi.N == there.e(i, i)


@pytest.mark.parametrize("name", example_names())
def test_example_root_systems(name):
    case = example_case(name)
    rs = case.rs
    for x, c in enumerate(rs.cartan):
        a = c.a
        th = len(a)
        for i in range(th):
            assert a[i][i] == 2
            for j in range(th):
                if i != j:
                    assert a[i][j] <= 0
                    assert (a[i][j] == 0) == (a[j][i] == 0)
        roots = rs.roots[x]
        assert all(tuple(int(k == i) for k in range(th)) in roots for i in range(th))
        # positive roots other than simple ones are sums of two positive roots
        rset = set(roots)
        for b in roots:
            if sum(b) > 1:
                assert any(tuple(u - v for u, v in zip(b, r)) in rset for r in roots if r != b)
        # multiples of a simple root are not roots
        for i in range(th):
            assert tuple(2 * (k == i) for k in range(th)) not in rset
