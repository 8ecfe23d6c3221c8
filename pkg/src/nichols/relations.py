"""Defining relations of B(V) for a braiding with finite root system.

Two sources of relations:

* the explicit catalogue (quantum Serre relations, powers of root vectors
  and the families attached to special scalar patterns), emitted by
  :func:`emit_relations`;
* the general PBW presentation [x_{b_i}, x_{b_j}]_c = sum c^u u with the
  coefficients computed from a symmetric twist of the braiding, see
  :func:`general_relations`.

Every relation can be checked against the radical of the pairing, and the
ideal generated by a list of relations can be compared degree by degree
with B(V).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Sequence

import numpy as np

from . import linalg
from .braided import (
    TensorElem,
    _red,
    ad_c_power,
    braided_bracket,
    coproduct,
    encode,
    hyperletter,
    pairing,
)
from .cartanweyl import Bicharacter, RootSystem, cartan_matrix
from .cyclotomic import CycNum, q_factorial
from .quotient import Nichols, _multinomial
from .words import Word, degree, is_lyndon, shirshov_split


FAMILIES = {
    "PowerRootVector": "x_b^{N_b} for b in the Cartan orbit",
    "QSerre": "(ad_c x_i)^{m_ij+1} x_j, q_ii^{m_ij+1} != 1",
    "SimplePower": "x_i^{N_i}, i not a Cartan vertex",
    "MinusOneSquare": "((ad_c x_i) x_j)^2, q_ii = q_ij q_ji = q_jj = -1",
    "VertexMinusOne": "[(ad_c x_i)(ad_c x_j) x_k, x_j]_c, q_jj = -1",
    "StandardB2": "[(ad_c x_i)^2 x_j, (ad_c x_i) x_j]_c",
    "StandardB3": "[(ad_c x_i)^2 (ad_c x_j) x_k, (ad_c x_i) x_j]_c",
    "Triangle": "triangle relation, all three q_ab q_ba != 1",
    "SuperC3": "[[(ad_c x_i) x_j, (ad_c x_i)(ad_c x_j) x_k]_c, x_j]_c",
    "SuperG3": "[[(ad_c x_i) x_j, [(ad_c x_i) x_j, (ad_c x_i)(ad_c x_j) x_k]_c]_c, x_j]_c",
    "SuperC4": "[[[(ad_c x_i)(ad_c x_j)(ad_c x_k) x_l, x_k]_c, x_j]_c, x_k]_c",
    "C3Order3": "[[(ad_c x_i)(ad_c x_j) x_k, x_j]_c, x_j]_c, q_jj in G_3",
    "G3Order4": "[[[(ad_c x_i)(ad_c x_j) x_k, x_j]_c, x_j]_c, x_j]_c, q_jj in G_4",
    "LikeSuperC3": "[(ad_c x_i) x_j, (ad_c x_i)(ad_c x_j) x_k]_c, q_ii = -1",
    "TwoByTwo": "[(ad_c x_i)^2 x_j, (ad_c x_i)^2 x_k]_c, q_ii in G_3",
    "RankTwoCoeff": "[x_i, [(ad_c x_i) x_j, x_j]_c]_c against ((ad_c x_i) x_j)^2",
    "HighRootCoeff": "[x_i, [(ad_c x_i)^2 x_j, (ad_c x_i) x_j]_c]_c against ((ad_c x_i)^2 x_j)^2",
    "Case2": "[x_{3a_i+2a_j}, (ad_c x_i) x_j]_c, 4a_i+3a_j not a root",
    "TwoAlphaCase2": "[(ad_c x_i)^2 x_j, x_{3a_i+2a_j}]_c, 5a_i+3a_j not a root",
    "Case3": "[x_{4a_i+3a_j}, (ad_c x_i) x_j]_c, 5a_i+4a_j not a root",
    "TwoAlphaCase1": "[[(ad_c x_i)^3 x_j, (ad_c x_i)^2 x_j]_c, (ad_c x_i)^2 x_j]_c",
    "HighPower": "[x_{2a_i+a_j}, x_{4a_i+3a_j}]_c against x_{3a_i+2a_j}^2",
    "GeneralPBW": "[x_{b_i}, x_{b_j}]_c - sum c^u u",
}

POWER_FAMILIES = frozenset({"PowerRootVector", "SimplePower"})

# powers x_b^n whose expansion would exceed this many terms are listed
# without an element
POWER_TERM_CAP = 2_000_000


@dataclass
class Relation:
    family: str
    indices: tuple  # 1-based vertices, or a root as a tuple of ints
    degree: tuple[int, ...]
    element: TensorElem | None
    diagnostic: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return FAMILIES[self.family]

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "label": self.label,
            "indices": list(self.indices),
            "degree": list(self.degree),
        }
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        if self.element is not None:
            out["terms"] = len(self.element.terms())
        return out


class _Scalars:
    """Exponent bookkeeping for q_ij = zeta_N^e_ij, 0-based vertices."""

    def __init__(self, chi: Bicharacter):
        self.chi = chi
        self.N = chi.N
        self.a = cartan_matrix(chi)

    def q(self, i, j) -> int:
        return self.chi.e(i, j)

    def qq(self, i, j) -> int:
        return self.chi.e_double(i, j)

    def one(self, e) -> bool:
        return e % self.N == 0

    def eq(self, e, f) -> bool:
        return (e - f) % self.N == 0

    def minus(self, e) -> int | None:
        """Exponent of -zeta^e, or None when -1 is not an N-th root of unity."""
        if self.N % 2:
            return None
        return (e + self.N // 2) % self.N

    def is_minus_one(self, e) -> bool:
        m = self.minus(0)
        return m is not None and self.eq(e, m)

    def eq_minus(self, e, f) -> bool:
        """zeta^e == -zeta^f."""
        m = self.minus(f)
        return m is not None and self.eq(e, m)

    def in_G(self, e, n) -> bool:
        return self.chi.order_of(e) == n

    def m(self, i, j) -> int:
        return -self.a.a[i][j]

    def val(self, e) -> CycNum:
        return CycNum.root(self.N, e)


def _unit(th, i, c=1):
    return tuple(c if k == i else 0 for k in range(th))


def _two(th, i, a, j, b):
    v = [0] * th
    v[i] += a
    v[j] += b
    return tuple(v)


class _Builder:
    """Element constructors, letters 1-based inside TensorElem."""

    def __init__(self, chi: Bicharacter):
        self.chi = chi
        self._x = {}

    def x(self, i) -> TensorElem:
        if i not in self._x:
            self._x[i] = TensorElem.letter(self.chi, i + 1)
        return self._x[i]

    def ad(self, seq, y) -> TensorElem:
        """(ad_c x_{seq[0]}) ... (ad_c x_{seq[-1]}) y."""
        for i in reversed(seq):
            y = braided_bracket(self.x(i), y)
        return y

    def adpow(self, i, m, y) -> TensorElem:
        return ad_c_power(i + 1, m, y)

    def br(self, a, b) -> TensorElem:
        return braided_bracket(a, b)

    def root_vector(self, i, j, m) -> TensorElem:
        """x_{(m+1)a_i + m a_j} via x_{2a_i+a_j} = (ad x_i)^2 x_j and bracketing with (ad x_i) x_j."""
        if m < 1:
            raise ValueError("m >= 1")
        v = self.adpow(i, 2, self.x(j))
        xij = self.ad([i], self.x(j))
        for _ in range(m - 1):
            v = self.br(v, xij)
        return v


def root_vector(chi: Bicharacter, beta: Sequence[int], nq: Nichols | None = None) -> TensorElem | None:
    """Hyperletter of the good Lyndon word of degree beta (None if there is none)."""
    nq = nq or Nichols(chi)
    tab = nq.table(tuple(beta))
    lyn = [w for w in tab.good if is_lyndon(w)]
    if not lyn:
        return None
    if len(lyn) > 1:
        raise ArithmeticError(f"several good Lyndon words of degree {tuple(beta)}")
    return hyperletter(lyn[0], chi)


def _power_terms(xb: TensorElem, n: int) -> int:
    return min(xb.num_terms() ** n, _multinomial(tuple(n * d for d in xb.degree())))


def emit_relations(
    chi: Bicharacter,
    rs: RootSystem,
    nq: Nichols | None = None,
    powers: bool = True,
    term_cap: int = POWER_TERM_CAP,
) -> list[Relation]:
    """All instances of the catalogue whose hypotheses hold for chi.

    With ``powers=False`` the power relations are listed without building
    their (possibly large) elements; the same happens to a single power
    whose expansion would have more than ``term_cap`` terms.
    """
    nq = nq or Nichols(chi)
    S = _Scalars(chi)
    B = _Builder(chi)
    th = chi.theta
    out: list[Relation] = []
    V = range(th)

    def rel(fam, idx, elem, **extra):
        out.append(Relation(fam, tuple(k + 1 for k in idx), elem.degree(), elem, extra=extra))

    def root(i, a, j, b):
        return rs.contains(_two(th, i, a, j, b))

    # powers of root vectors in the Cartan orbit
    for beta in rs.cartan_orbit:
        e = chi.e_pair(beta, beta)
        n = chi.order_of(e)
        if n < 2:
            continue
        deg = tuple(n * b for b in beta)
        if not powers:
            out.append(Relation("PowerRootVector", beta, deg, None, extra={"N": n}))
            continue
        xb = root_vector(chi, beta, nq)
        if xb is None:
            out.append(Relation("PowerRootVector", beta, deg, None, diagnostic="no good Lyndon word of this degree"))
            continue
        size = _power_terms(xb, n)
        if size > term_cap:
            diag = f"not expanded: about {size:.2e} terms (cap {term_cap})"
            out.append(Relation("PowerRootVector", beta, deg, None, diagnostic=diag, extra={"N": n}))
            continue
        out.append(Relation("PowerRootVector", beta, deg, xb**n, extra={"N": n}))

    for i, j in permutations(V, 2):
        m = S.m(i, j)
        if not S.one((m + 1) * S.q(i, i)):
            rel("QSerre", (i, j), B.adpow(i, m + 1, B.x(j)), m=m)

    for i in V:
        if not S.a.cartan_vertex[i]:
            n = chi.order_of(S.q(i, i))
            if n >= 2 and powers:
                rel("SimplePower", (i,), B.x(i) ** n, N=n)
            elif n >= 2:
                out.append(Relation("SimplePower", (i + 1,), _unit(th, i, n), None, extra={"N": n}))

    # the hypotheses are symmetric in i, j and the swapped square is implied,
    # so one instance per unordered pair
    for i, j in permutations(V, 2):
        if i > j:
            continue
        if S.is_minus_one(S.q(i, i)) and S.is_minus_one(S.qq(i, j)) and S.is_minus_one(S.q(j, j)):
            rel("MinusOneSquare", (i, j), B.ad([i], B.x(j)) ** 2)

    for i, j, k in permutations(V, 3):
        if S.is_minus_one(S.q(j, j)) and S.one(S.qq(i, k)) and S.one(S.qq(i, j) + S.qq(j, k)):
            rel("VertexMinusOne", (i, j, k), B.br(B.ad([i, j], B.x(k)), B.x(j)))

    for i, j in permutations(V, 2):
        if (
            S.is_minus_one(S.q(j, j))
            and (
                S.in_G(S.q(i, i) + S.qq(i, j), 6)
                and (S.in_G(S.q(i, i), 3) or S.m(i, j) >= 3)
                # standard B2 at a cube root: 3a_i + 2a_j is not a root, so its vector vanishes
                or S.m(i, j) == 2 and S.in_G(S.q(i, i), 3) and not root(i, 3, j, 2)
            )
        ):
            rel("StandardB2", (i, j), B.br(B.adpow(i, 2, B.x(j)), B.ad([i], B.x(j))))

    for i, j, k in permutations(V, 3):
        qii, qqij, qqjk, qjj = S.q(i, i), S.qq(i, j), S.qq(j, k), S.q(j, j)
        if not (S.in_G(qii, 3) and (S.eq(qii, qqij) or S.eq_minus(qii, qqij)) and S.one(S.qq(i, k))):
            continue
        alt1 = S.is_minus_one(qjj) and S.one(qqij + qqjk)
        alt2 = S.eq(-qjj, qqij) and S.eq(qqij, qqjk) and not S.is_minus_one(qqij)
        if alt1 or alt2:
            rel("StandardB3", (i, j, k), B.br(B.adpow(i, 2, B.ad([j], B.x(k))), B.ad([i], B.x(j))))

    for i, j, k in permutations(V, 3):
        if S.one(S.qq(i, k)) or S.one(S.qq(i, j)) or S.one(S.qq(j, k)):
            continue
        c1 = (1 - S.val(S.qq(j, k))) / (S.val(S.q(k, j)) * (1 - S.val(S.qq(i, k))))
        c2 = S.val(S.q(i, j)) * (1 - S.val(S.qq(j, k)))
        xik = B.ad([i], B.x(k))
        elem = B.br(B.x(i), B.ad([j], B.x(k))) - B.br(xik, B.x(j)).scale(c1) - (B.x(j) * xik).scale(c2)
        rel("Triangle", (i, j, k), elem)

    for i, j, k in permutations(V, 3):
        qii, qjj, qkk = S.q(i, i), S.q(j, j), S.q(k, k)
        qqij, qqjk = S.qq(i, j), S.qq(j, k)
        if not S.one(S.qq(i, k)):
            continue
        m1 = S.is_minus_one
        alts = (
            m1(qii) and m1(qjj) and S.one(2 * qqij + qqjk),
            m1(qjj) and m1(qkk) and m1(qqjk) and S.in_G(qii, 3) and S.eq_minus(qii, qqij),
            m1(qii) and m1(qjj) and m1(qkk) and S.eq(qqij, qqjk) and S.in_G(qqij, 3),
            m1(qii)
            and m1(qkk)
            and S.in_G(qjj, 3)
            and S.eq_minus(qjj, qqjk)
            and (S.eq(qjj, qqij) or S.eq(qjj, -qqij)),
        )
        if any(alts):
            xij = B.ad([i], B.x(j))
            elem = B.br(B.br(xij, B.ad([i, j], B.x(k))), B.x(j))
            rel("SuperC3", (i, j, k), elem, alternative=[n + 1 for n, a in enumerate(alts) if a])

    for i, j, k in permutations(V, 3):
        if (
            S.is_minus_one(S.q(i, i))
            and S.is_minus_one(S.q(j, j))
            and S.one(3 * S.qq(i, j) + S.qq(j, k))
            and S.one(S.qq(i, k))
        ):
            xij = B.ad([i], B.x(j))
            elem = B.br(B.br(xij, B.br(xij, B.ad([i, j], B.x(k)))), B.x(j))
            rel("SuperG3", (i, j, k), elem)

    for i, j, k, l in permutations(V, 4):
        qjj, qkk, qll = S.q(j, j), S.q(k, k), S.q(l, l)
        if (
            S.one(qjj + S.qq(i, j))
            and S.one(qjj + S.qq(k, j))
            and S.eq(2 * S.qq(k, j), -S.qq(l, k))
            and S.eq(-S.qq(l, k), qll)
            and S.is_minus_one(qkk)
            and S.one(S.qq(i, k))
            and S.one(S.qq(i, l))
            and S.one(S.qq(j, l))
        ):
            elem = B.br(B.br(B.br(B.ad([i, j, k], B.x(l)), B.x(k)), B.x(j)), B.x(k))
            rel("SuperC4", (i, j, k, l), elem)

    for fam, n, depth in (("C3Order3", 3, 2), ("G3Order4", 4, 3)):
        for i, j, k in permutations(V, 3):
            qjj = S.q(j, j)
            if S.eq(qjj, -S.qq(i, j)) and S.eq(qjj, S.qq(j, k)) and S.in_G(qjj, n):
                elem = B.ad([i, j], B.x(k))
                for _ in range(depth):
                    elem = B.br(elem, B.x(j))
                rel(fam, (i, j, k), elem)

    for i, j, k in permutations(V, 3):
        qjj_inv = -S.q(j, j)
        if (
            S.is_minus_one(S.q(i, i))
            and S.eq_minus(qjj_inv, S.qq(i, j) + S.qq(j, k))
            and not S.is_minus_one(qjj_inv)
            and not S.eq(qjj_inv, S.qq(i, j))
            and S.one(S.qq(i, k))
        ):
            rel("LikeSuperC3", (i, j, k), B.br(B.ad([i], B.x(j)), B.ad([i, j], B.x(k))))

    for i, j, k in permutations(V, 3):
        qii = S.q(i, i)
        if (
            S.one(S.qq(j, k))
            and S.in_G(qii, 3)
            and not S.eq(S.qq(i, j), -qii)
            and not S.eq(S.qq(k, i), -qii)
        ):
            rel("TwoByTwo", (i, j, k), B.br(B.adpow(i, 2, B.x(j)), B.adpow(i, 2, B.x(k))))

    for i, j in permutations(V, 2):
        qii, qjj, z = S.q(i, i), S.q(j, j), S.qq(i, j)
        if S.is_minus_one(qii) or S.is_minus_one(qjj) or S.one(qii + z) or S.one(qjj + z):
            continue
        xij = B.ad([i], B.x(j))
        c1 = (1 - S.val(z)) * S.val(qjj + S.q(j, i))
        c2 = (1 + S.val(qjj)) * (1 - S.val(qjj + z))
        elem = B.br(B.x(i), B.br(xij, B.x(j))).scale(c1) - (xij * xij).scale(c2)
        rel("RankTwoCoeff", (i, j), elem)

    for i, j in permutations(V, 2):
        qii, z, mij = S.q(i, i), S.qq(i, j), S.m(i, j)
        if not S.is_minus_one(S.q(j, j)) or S.in_G(qii + z, 6):
            continue
        if not (mij in (4, 5) or (mij == 3 and S.in_G(qii, 4))):
            continue
        num = 1 - S.val(qii + z) - S.val(2 * qii + 2 * z + S.q(j, j))
        den = (1 - S.val(qii + z)) * S.val(S.q(j, i))
        x2 = B.adpow(i, 2, B.x(j))
        elem = B.br(B.x(i), B.br(x2, B.ad([i], B.x(j)))) - (x2 * x2).scale(num / den)
        rel("HighRootCoeff", (i, j), elem)

    for i, j in permutations(V, 2):
        mij, mji, qii = S.m(i, j), S.m(j, i), S.q(i, i)
        if root(i, 4, j, 3):
            continue
        if not (S.is_minus_one(S.q(j, j)) or mji >= 2):
            continue
        if not (mij >= 3 or (mij == 2 and S.in_G(qii, 3))):
            continue
        rel("Case2", (i, j), B.br(B.root_vector(i, j, 2), B.ad([i], B.x(j))))

    for i, j in permutations(V, 2):
        qii, z = S.q(i, i), S.qq(i, j)
        if root(i, 3, j, 2) and not root(i, 5, j, 3) and not S.one(3 * qii + z) and not S.one(4 * qii + z):
            rel("TwoAlphaCase2", (i, j), B.br(B.adpow(i, 2, B.x(j)), B.root_vector(i, j, 2)))

    for i, j in permutations(V, 2):
        if root(i, 4, j, 3) and not root(i, 5, j, 4):
            rel("Case3", (i, j), B.br(B.root_vector(i, j, 3), B.ad([i], B.x(j))))

    for i, j in permutations(V, 2):
        if root(i, 5, j, 2) and not root(i, 7, j, 3):
            x2 = B.adpow(i, 2, B.x(j))
            rel("TwoAlphaCase1", (i, j), B.br(B.br(B.adpow(i, 3, B.x(j)), x2), x2))

    for i, j in permutations(V, 2):
        if not (S.is_minus_one(S.q(j, j)) and root(i, 5, j, 4)):
            continue
        qi = S.val(S.q(i, i))
        z = S.val(S.qq(i, j))
        a = (1 - z) * (1 - qi**4 * z**3) - (1 - qi * z) * (1 + qi) * qi * z
        lhs = B.br(B.root_vector(i, j, 1), B.root_vector(i, j, 3))
        if a.is_zero():
            out.append(
                Relation("HighPower", (i + 1, j + 1), lhs.degree(), None, diagnostic="coefficient a vanishes")
            )
            continue
        b = (1 - z) * (1 - qi**6 * z**5) - a * qi * z
        num = b - (1 + qi) * (1 - qi * z) * (1 + z + qi * z**2) * qi**6 * z**4
        den = a * qi**3 * S.val(2 * S.q(i, j) + 3 * S.q(j, i))
        x32 = B.root_vector(i, j, 2)
        rel("HighPower", (i, j), lhs - (x32 * x32).scale(num / den))

    return out


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------


def check_soundness(relations: Sequence[Relation], nq: Nichols) -> list[tuple[Relation, bool | None]]:
    """Each relation paired with whether it lies in the radical.

    None marks relations that carry no element (diagnostics, or powers
    too large to expand), which could not be checked.
    """
    return [(r, None if r.element is None else nq.in_radical(r.element)) for r in relations]


def _rows_for_degree(elems: Sequence[TensorElem], words_codes: np.ndarray, L: int, N: int) -> np.ndarray:
    rows = np.zeros((len(elems), words_codes.size, N), dtype=object)
    for r, e in enumerate(elems):
        part = e.parts.get(L)
        if part is None:
            continue
        codes, num = part
        idx = np.searchsorted(words_codes, codes)
        rows[r, idx] = num.astype(object)
    return _shrink(rows)


def _shrink(a):
    if a.size == 0:
        return a.astype(np.int64)
    m = max(abs(int(x)) for x in a.flat)
    return a.astype(np.int64) if m < (1 << 40) else a


def ideal_dimensions(
    relations: Sequence[TensorElem], nq: Nichols, max_degree: int
) -> dict[tuple[int, ...], tuple[int, int]]:
    """Degree -> (dim T_d / <relations>_d, dim B(V)_d) for |d| <= max_degree.

    The ideal is built degree by degree: I_d is spanned by the relations of
    degree d and by x_i I_{d-a_i}, I_{d-a_i} x_i.
    """
    from .words import degrees_up_to

    chi = nq.chi
    th, N = chi.theta, chi.N
    by_deg: dict = {}
    for r in relations:
        by_deg.setdefault(r.degree(), []).append(r)
    basis: dict[tuple, list[TensorElem]] = {}
    out = {}
    for delta in degrees_up_to(th, max_degree):
        L = sum(delta)
        tab = nq.table(delta)
        gens = list(by_deg.get(delta, []))
        for i in range(th):
            if delta[i] == 0:
                continue
            prev = delta[:i] + (delta[i] - 1,) + delta[i + 1 :]
            xi = TensorElem.letter(chi, i + 1)
            for b in basis.get(prev, []):
                gens.append(xi * b)
                gens.append(b * xi)
        if gens and L > 0:
            M = _rows_for_degree(gens, tab.codes, L, N)
            keep = linalg.row_profile(M, N)
            basis[delta] = [gens[k] for k in keep]
        else:
            basis[delta] = []
        out[delta] = (len(tab.words) - len(basis[delta]), tab.dim)
    return out


def is_primitive_modulo(x: TensorElem, nq: Nichols) -> bool:
    """Delta(x) - x(x)1 - 1(x)x vanishes in B(V)_b (x) B(V)_c for all splits.

    Valid as a test of primitivity modulo the lower relations whenever those
    generate the radical in every degree below deg x, which the caller
    checks with :func:`ideal_dimensions`.
    """
    chi = nq.chi
    th, N = chi.theta, chi.N
    red = _red(N)
    gamma = x.degree()
    blocks: dict = {}
    for (a, b), c in coproduct(x).items():
        if not a or not b:
            continue
        da = degree(a, th)
        blocks.setdefault(da, []).append((a, b, c))
    for da, items in blocks.items():
        db = tuple(g - d for g, d in zip(gamma, da))
        ta, tb = nq.table(da), nq.table(db)
        if ta.dim == 0 or tb.dim == 0:
            continue
        den = 1
        for _, _, c in items:
            for v in c.embed(N).coeffs:
                den = den * v.denominator // np.gcd(den, v.denominator)
        C = np.zeros((len(ta.words), len(tb.words), N), dtype=object)
        for a, b, c in items:
            ia = int(ta.index(np.array([encode(a, th)]))[0])
            ib = int(tb.index(np.array([encode(b, th)]))[0])
            C[ia, ib] += np.array([int(v * den) for v in c.embed(N).coeffs], dtype=object)
        C = _shrink(C)
        left = linalg.cyc_matmul(np.ascontiguousarray(ta.K.transpose(1, 0, 2)), C, red)
        val = linalg.cyc_matmul(left, tb.K, red)
        if np.any(val != 0):
            return False
    return True


# ----------------------------------------------------------------------
# general presentation from a symmetric twist
# ----------------------------------------------------------------------


def symmetrize(chi: Bicharacter) -> tuple[Bicharacter, tuple[tuple[int, ...], ...]]:
    """Symmetric twist-equivalent braiding and the cocycle sigma.

    Both are returned over zeta_{2N}: qhat_ij = zeta_{2N}^{e_ij + e_ji} and
    sigma(a_i, a_j) = qhat_ij / q_ij for i <= j, 1 for i > j, as exponents.
    """
    N2 = 2 * chi.N
    th = chi.theta
    E = chi.exps
    hat = [[(E[i][j] + E[j][i]) % N2 for j in range(th)] for i in range(th)]
    sig = tuple(
        tuple(((E[i][j] + E[j][i]) - 2 * E[i][j]) % N2 if i <= j else 0 for j in range(th)) for i in range(th)
    )
    return Bicharacter(N2, hat), sig


def _sigma(sig, a, b, N2) -> int:
    s = 0
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            s += x * y * sig[i][j]
    return s % N2


@dataclass
class GeneralPresentation:
    chi: Bicharacter  # the braiding embedded over zeta_{2N}
    hat: Bicharacter
    sigma: tuple
    generators: list[Word]  # Lyndon words, increasing
    degrees: list[tuple[int, ...]]
    heights: list[int]


def _t_exp(word: Word, sig, th, N2, memo) -> int:
    if word in memo:
        return memo[word]
    if len(word) == 1:
        memo[word] = 0
        return 0
    l1, l2 = shirshov_split(word)
    e = _sigma(sig, degree(l1, th), degree(l2, th), N2) + _t_exp(l1, sig, th, N2, memo) + _t_exp(l2, sig, th, N2, memo)
    memo[word] = e % N2
    return memo[word]


def general_presentation(chi: Bicharacter, rs: RootSystem, nq: Nichols) -> GeneralPresentation:
    gens = []
    for beta in rs.positive:
        tab = nq.table(beta)
        lyn = [w for w in tab.good if is_lyndon(w)]
        if len(lyn) != 1:
            raise ArithmeticError(f"expected one good Lyndon word of degree {beta}")
        gens.append(lyn[0])
    gens.sort()
    th = chi.theta
    degs = [degree(w, th) for w in gens]
    heights = [chi.order_of(chi.e_pair(d, d)) for d in degs]
    hat, sig = symmetrize(chi)
    return GeneralPresentation(chi.embed(2 * chi.N), hat, sig, gens, degs, heights)


def pbw_monomials(gp: GeneralPresentation, target: Sequence[int], lo: int = 0, hi: int | None = None):
    """Exponent vectors n (indexed like gp.generators) with sum n_k beta_k = target.

    Only generators lo..hi (inclusive) are used and n_k < N_{beta_k}.
    """
    M = len(gp.generators)
    hi = M - 1 if hi is None else hi
    target = tuple(target)
    out = []
    n = [0] * M

    def rec(k, rest):
        if k > hi:
            if not any(rest):
                out.append(tuple(n))
            return
        d = gp.degrees[k]
        c = 0
        cur = rest
        while True:
            n[k] = c
            rec(k + 1, cur)
            c += 1
            if c >= gp.heights[k]:
                break
            cur = tuple(r - x for r, x in zip(cur, d))
            if any(r < 0 for r in cur):
                break
        n[k] = 0

    rec(lo, target)
    return out


def monomial_element(gp: GeneralPresentation, n: Sequence[int], chi: Bicharacter) -> TensorElem:
    """x_{b_M}^{n_M} ... x_{b_1}^{n_1} for the braiding chi."""
    out = TensorElem.one(chi)
    for k in range(len(n) - 1, -1, -1):
        if n[k]:
            out = out * hyperletter(gp.generators[k], chi) ** n[k]
    return out


def general_coefficients(gp: GeneralPresentation, i: int, j: int) -> dict[tuple, CycNum]:
    """c^u_{ij} for the monomials u of B_ij of degree b_i + b_j other than x_{b_j} x_{b_i}."""
    th = gp.hat.theta
    N2 = gp.hat.N
    sig = gp.sigma
    memo: dict = {}
    t = [_t_exp(w, sig, th, N2, memo) for w in gp.generators]
    target = tuple(a + b for a, b in zip(gp.degrees[i], gp.degrees[j]))
    hat = gp.hat
    lhs = hyperletter(gp.generators[i], hat) * hyperletter(gp.generators[j], hat)
    skip = tuple(1 if k in (i, j) else 0 for k in range(len(gp.generators)))
    norms = {}
    out = {}
    for n in pbw_monomials(gp, target, i, j):
        if n == skip:
            continue
        f = 0
        idx = [k for k in range(len(n)) if n[k]]
        for a in idx:
            for b in idx:
                if a < b:
                    f += _sigma(sig, gp.degrees[b], gp.degrees[a], N2) * n[a] * n[b]
        for a in idx:
            f += _sigma(sig, gp.degrees[a], gp.degrees[a], N2) * comb(n[a], 2) + t[a] * n[a]
        uhat = monomial_element(gp, n, hat)
        c_u = CycNum.one(N2)
        for a in idx:
            if a not in norms:
                xa = hyperletter(gp.generators[a], hat)
                norms[a] = pairing(xa, xa)
            qa = hat.chi(gp.degrees[a], gp.degrees[a])
            c_u = c_u * q_factorial(n[a], qa) * norms[a] ** n[a]
        if c_u.is_zero():
            raise ArithmeticError(f"vanishing norm for monomial {n}")
        num = CycNum.root(N2, f) * pairing(lhs, uhat)
        den = CycNum.root(N2, _sigma(sig, gp.degrees[i], gp.degrees[j], N2) + t[i] + t[j]) * c_u
        out[n] = num / den
    return out


def general_pairs(gp: GeneralPresentation) -> list[tuple[int, int]]:
    """Pairs i < j with Sh(l_i l_j) = (l_i, l_j) and l_i l_j not a generator."""
    words = set(gp.generators)
    out = []
    M = len(gp.generators)
    for i in range(M):
        for j in range(i + 1, M):
            w = gp.generators[i] + gp.generators[j]
            if w in words:
                continue
            if shirshov_split(w) == (gp.generators[i], gp.generators[j]):
                out.append((i, j))
    return out


def general_relations(chi: Bicharacter, rs: RootSystem, nq: Nichols) -> list[Relation]:
    gp = general_presentation(chi, rs, nq)
    chi2 = gp.chi
    out = []
    for i, j in general_pairs(gp):
        coeffs = general_coefficients(gp, i, j)
        xi = hyperletter(gp.generators[i], chi2)
        xj = hyperletter(gp.generators[j], chi2)
        elem = braided_bracket(xi, xj)
        for n, c in coeffs.items():
            if not c.is_zero():
                elem = elem - monomial_element(gp, n, chi2).scale(c)
        out.append(
            Relation(
                "GeneralPBW",
                (gp.generators[i], gp.generators[j]),
                elem.degree(),
                elem,
                extra={"coefficients": coeffs, "pair": (i, j)},
            )
        )
    return out


def project_bracket(gp: GeneralPresentation, i: int, j: int, nq2: Nichols) -> dict[tuple, CycNum]:
    """Coordinates of [x_{b_i}, x_{b_j}]_c in the PBW monomial basis of B(V)."""
    chi2 = gp.chi
    target = tuple(a + b for a, b in zip(gp.degrees[i], gp.degrees[j]))
    monos = pbw_monomials(gp, target)
    tab = nq2.table(target)
    if len(monos) != tab.dim:
        raise ArithmeticError(f"{len(monos)} PBW monomials but dimension {tab.dim} in degree {target}")
    br = braided_bracket(hyperletter(gp.generators[i], chi2), hyperletter(gp.generators[j], chi2))
    rows = []
    dens = []
    for n in monos:
        m = monomial_element(gp, n, chi2)
        rows.append(nq2.coordinates(m))
        dens.append(m.den)
    V = np.stack(rows) if rows else np.zeros((0, tab.dim, chi2.N), dtype=np.int64)
    b = nq2.coordinates(br)
    sol = linalg.solve_left(_shrink(V.astype(object)), _shrink(b.astype(object)[None])[0], chi2.N)
    if sol is None:
        raise ArithmeticError("bracket is not in the span of PBW monomials")
    # coordinates() scales by the element denominators
    return {n: s * Fraction(dens[k], br.den) for k, (n, s) in enumerate(zip(monos, sol))}
