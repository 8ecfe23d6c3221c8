"""Diagonal braidings, generalized Cartan matrices and Weyl groupoid roots.

Vertices are 0-based here (``i`` in ``range(theta)``); words use 1-based
letters.  A braiding is q_ij = zeta_N^exps[i][j].
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .cyclotomic import CycNum, RootOfUnity

DEFAULT_CARTAN_BOUND = 8
DEFAULT_MAX_OBJECTS = 1024
DEFAULT_MAX_HEIGHT = 30


class CartanError(ValueError):
    """Some m_ij does not exist below the bound: not finite at that vertex."""


class RootSystemError(ValueError):
    """Reflection closure exceeded its caps or left the positive cone."""


def _order_of_exp(e: int, n: int) -> int:
    return n // gcd(n, e % n)


class Bicharacter:
    """chi(alpha_i, alpha_j) = q_ij = zeta_N^{exps[i][j]}."""

    __slots__ = ("theta", "N", "exps")

    def __init__(self, N: int, exps: Sequence[Sequence[int]]):
        if N < 1:
            raise ValueError("N must be positive")
        rows = [tuple(int(e) % N for e in row) for row in exps]
        theta = len(rows)
        if theta == 0 or any(len(r) != theta for r in rows):
            raise ValueError("exponent matrix must be square and nonempty")
        self.theta = theta
        self.N = N
        self.exps = tuple(rows)

    # exponent arithmetic; everything below is mod N
    def e(self, i: int, j: int) -> int:
        return self.exps[i][j]

    def e_pair(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        s = 0
        for i, a in enumerate(alpha):
            if a:
                row = self.exps[i]
                for j, b in enumerate(beta):
                    if b:
                        s += a * b * row[j]
        return s % self.N

    def e_double(self, i: int, j: int) -> int:
        """Exponent of q_ij q_ji."""
        return (self.exps[i][j] + self.exps[j][i]) % self.N

    def q(self, i: int, j: int) -> CycNum:
        return CycNum.root(self.N, self.exps[i][j])

    def chi(self, alpha: Sequence[int], beta: Sequence[int]) -> CycNum:
        return CycNum.root(self.N, self.e_pair(alpha, beta))

    def root(self, alpha, beta) -> RootOfUnity:
        return RootOfUnity(self.N, self.e_pair(alpha, beta))

    def order_of(self, e: int) -> int:
        return _order_of_exp(e, self.N)

    def key(self) -> tuple:
        """The twist-invariant data (q_ii, q_ij q_ji) as exponents."""
        diag = tuple(self.exps[i][i] for i in range(self.theta))
        off = tuple(
            self.e_double(i, j) for i in range(self.theta) for j in range(i + 1, self.theta)
        )
        return (self.N, diag, off)

    def is_symmetric(self) -> bool:
        return all(
            self.exps[i][j] == self.exps[j][i]
            for i in range(self.theta)
            for j in range(self.theta)
        )

    def embed(self, M: int) -> "Bicharacter":
        if M % self.N:
            raise ValueError(f"cannot embed order {self.N} into {M}")
        k = M // self.N
        return Bicharacter(M, [[e * k for e in row] for row in self.exps])

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.N == other.N and self.exps == other.exps

    def __hash__(self):
        return hash((self.N, self.exps))

    def __repr__(self):
        return f"Bicharacter(N={self.N}, exps={[list(r) for r in self.exps]})"

    def to_json(self) -> dict:
        return {"theta": self.theta, "N": self.N, "exps": [list(r) for r in self.exps]}

    @classmethod
    def from_json(cls, data: dict) -> "Bicharacter":
        b = cls(int(data["N"]), data["exps"])
        if "theta" in data and int(data["theta"]) != b.theta:
            raise ValueError("theta does not match the exponent matrix")
        return b


@dataclass(frozen=True)
class CartanData:
    a: tuple[tuple[int, ...], ...]
    cartan_vertex: tuple[bool, ...]

    @property
    def m(self) -> tuple[tuple[int, ...], ...]:
        """m_ij = -a_ij off the diagonal (0 on it)."""
        n = len(self.a)
        return tuple(tuple(0 if i == j else -self.a[i][j] for j in range(n)) for i in range(n))


def m_ij(chi: Bicharacter, i: int, j: int, bound: int = DEFAULT_CARTAN_BOUND) -> int:
    """Least n with (n+1)_{q_ii} (1 - q_ii^n q_ij q_ji) = 0."""
    N = chi.N
    eii = chi.e(i, i)
    ord_ii = chi.order_of(eii)
    ed = chi.e_double(i, j)
    for n in range(bound + 1):
        # (n+1)_q vanishes iff q != 1 and q^{n+1} = 1
        if ord_ii > 1 and (n + 1) % ord_ii == 0:
            return n
        if (n * eii + ed) % N == 0:
            return n
    raise CartanError(f"no m_{i + 1}{j + 1} <= {bound}: root system not finite at vertex {i + 1}")


def cartan_matrix(chi: Bicharacter, bound: int = DEFAULT_CARTAN_BOUND) -> CartanData:
    th = chi.theta
    a = [[2 if i == j else -m_ij(chi, i, j, bound) for j in range(th)] for i in range(th)]
    vertex = []
    for p in range(th):
        ord_pp = chi.order_of(chi.e(p, p))
        vertex.append(all(ord_pp != -a[p][j] + 1 for j in range(th) if j != p))
    return CartanData(tuple(tuple(r) for r in a), tuple(vertex))


def reflect_vector(a: CartanData, p: int, beta: Sequence[int]) -> tuple[int, ...]:
    """s_p(beta) with s_p(alpha_j) = alpha_j - a_pj alpha_p."""
    out = list(beta)
    out[p] -= sum(a.a[p][j] * b for j, b in enumerate(beta))
    return tuple(out)


def _simple(th: int, j: int) -> tuple[int, ...]:
    return tuple(1 if k == j else 0 for k in range(th))


def reflect(chi: Bicharacter, p: int, bound: int = DEFAULT_CARTAN_BOUND) -> Bicharacter:
    """The bicharacter s_p^* chi, (s_p^* chi)(a, b) = chi(s_p a, s_p b)."""
    a = cartan_matrix(chi, bound)
    th = chi.theta
    images = [reflect_vector(a, p, _simple(th, r)) for r in range(th)]
    return Bicharacter(chi.N, [[chi.e_pair(images[r], images[s]) for s in range(th)] for r in range(th)])


@dataclass
class RootSystem:
    objects: list[Bicharacter]
    cartan: list[CartanData]
    # edges[x][p] = index of r_p(object x)
    edges: list[list[int]]
    roots: list[list[tuple[int, ...]]]
    orbit: list[list[tuple[int, ...]]]
    caps: dict = field(default_factory=dict)

    @property
    def chi(self) -> Bicharacter:
        return self.objects[0]

    @property
    def positive(self) -> list[tuple[int, ...]]:
        return self.roots[0]

    @property
    def cartan_orbit(self) -> list[tuple[int, ...]]:
        return self.orbit[0]

    def contains(self, beta: Sequence[int], obj: int = 0) -> bool:
        return tuple(beta) in self._rootset(obj)

    def _rootset(self, obj: int) -> frozenset:
        cache = self.__dict__.setdefault("_sets", {})
        if obj not in cache:
            cache[obj] = frozenset(self.roots[obj])
        return cache[obj]

    def q_beta(self, beta: Sequence[int], obj: int = 0) -> RootOfUnity:
        return self.objects[obj].root(beta, beta)

    def n_beta(self, beta: Sequence[int], obj: int = 0) -> int:
        return self.q_beta(beta, obj).mult_order()


def _sort_roots(roots) -> list[tuple[int, ...]]:
    return sorted(roots, key=lambda b: (sum(b), tuple(-x for x in b)))


def root_system(
    chi: Bicharacter,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_height: int = DEFAULT_MAX_HEIGHT,
    bound: int = DEFAULT_CARTAN_BOUND,
) -> RootSystem:
    """Objects reachable by reflections and the positive roots at each one.

    Roots are the least family containing the simple roots and closed under
    R(r_p X) >= s_p(R(X) minus alpha_p) + alpha_p.
    """
    th = chi.theta
    objects = [chi]
    index = {chi.key(): 0}
    cartan = [cartan_matrix(chi, bound)]
    edges: list[list[int]] = []
    todo = deque([0])
    while todo:
        x = todo.popleft()
        row = []
        for p in range(th):
            y = reflect(objects[x], p, bound)
            k = y.key()
            if k not in index:
                if len(objects) >= max_objects:
                    raise RootSystemError(f"more than {max_objects} objects: infinite or too large")
                index[k] = len(objects)
                objects.append(y)
                cartan.append(cartan_matrix(y, bound))
                todo.append(index[k])
            row.append(index[k])
        edges.append(row)
    nobj = len(objects)
    simples = [_simple(th, j) for j in range(th)]

    roots = [set(simples) for _ in range(nobj)]
    queue = deque((x, b) for x in range(nobj) for b in simples)
    while queue:
        x, b = queue.popleft()
        for p in range(th):
            if b == simples[p]:
                continue
            img = reflect_vector(cartan[x], p, b)
            if any(c < 0 for c in img):
                raise RootSystemError(f"reflection s_{p + 1} sent root {b} to {img}: not a root system")
            if sum(img) > max_height:
                raise RootSystemError(f"root of height > {max_height}: infinite or too large")
            y = edges[x][p]
            if img not in roots[y]:
                roots[y].add(img)
                queue.append((y, img))

    orbit = [set() for _ in range(nobj)]
    queue = deque()
    for x in range(nobj):
        for p in range(th):
            if cartan[x].cartan_vertex[p]:
                orbit[x].add(simples[p])
                queue.append((x, simples[p]))
    while queue:
        x, b = queue.popleft()
        for p in range(th):
            img = reflect_vector(cartan[x], p, b)
            if any(c < 0 for c in img):
                img = tuple(-c for c in img)
            y = edges[x][p]
            if img not in orbit[y]:
                orbit[y].add(img)
                queue.append((y, img))

    return RootSystem(
        objects=objects,
        cartan=cartan,
        edges=edges,
        roots=[_sort_roots(r) for r in roots],
        orbit=[_sort_roots(o) for o in orbit],
        caps={"max_objects": max_objects, "max_height": max_height, "bound": bound},
    )


def cartan_orbit(rs: RootSystem, chi: Bicharacter | None = None) -> list[tuple[int, ...]]:
    if chi is not None and chi.key() != rs.objects[0].key():
        raise ValueError("bicharacter is not the base object of this root system")
    return list(rs.orbit[0])


def root_scalars(rs: RootSystem, chi: Bicharacter | None = None) -> dict:
    """beta -> (q_beta as RootOfUnity, N_beta)."""
    chi = chi or rs.objects[0]
    out = {}
    for b in rs.roots[0]:
        q = chi.root(b, b)
        out[b] = (q, q.mult_order())
    return out


def report(rs: RootSystem) -> dict:
    """JSON-ready summary of a root system."""
    chi = rs.objects[0]
    orbit = set(rs.orbit[0])
    return {
        "objects": [
            {
                "exps": [list(r) for r in o.exps],
                "cartan": [list(r) for r in c.a],
                "cartan_vertex": list(c.cartan_vertex),
            }
            for o, c in zip(rs.objects, rs.cartan)
        ],
        "roots": [
            {
                "root": list(b),
                "q": {"order": chi.N, "exponent": chi.e_pair(b, b)},
                "N": chi.order_of(chi.e_pair(b, b)),
                "cartan_orbit": b in orbit,
            }
            for b in rs.roots[0]
        ],
        "rank_one_vacuous_cartan": chi.theta == 1,
    }
