"""Finite root data for the simple types A-G.

Conventions
-----------
* Simple roots are numbered as in Bourbaki's tables.
* ``cartan[i, j] = <alpha_j, alpha_i^vee>``.
* Vectors of the coweight space are given either in the simple-coroot basis
  (rational coordinates, ``CoweightVector``) or, for elements of the coweight
  lattice ``P^vee``, as integer coordinates in the basis of fundamental
  coweights.  The two are related by ``y = cartan.T @ c``.
* The invariant form is normalised so that ``(theta^vee, theta^vee) = 2``; on
  simple coroots ``(alpha_i^vee, alpha_j^vee) = cartan[i, j] * d[j]`` where
  ``d[j] = (alpha_j^vee, alpha_j^vee) / 2`` is 1 for long roots and ``r^vee``
  for short ones.  Hence ``(coroot, coweight)`` is an integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CartanKind",
    "RootSystem",
    "WeylElement",
    "LeviDatum",
    "CoweightVector",
    "build_root_system",
    "parse_kind",
    "inner",
    "levi_datum",
    "weyl_group_order",
    "weyl_group_elements",
    "classify_component",
    "EXPONENTS",
]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _exponents(family: str, n: int) -> tuple[int, ...]:
    if family == "A":
        return tuple(range(1, n + 1))
    if family in "BC":
        return tuple(range(1, 2 * n, 2))
    if family == "D":
        return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    return {
        ("E", 6): (1, 4, 5, 7, 8, 11),
        ("E", 7): (1, 5, 7, 9, 11, 13, 17),
        ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
        ("F", 4): (1, 5, 7, 11),
        ("G", 2): (1, 5),
    }[family, n]


class _Exponents(dict):
    def __missing__(self, key):
        return _exponents(*key)


#: Exponents of the Weyl group, keyed by ``(family, rank)``.
EXPONENTS = _Exponents()


@dataclass(frozen=True, order=True)
class CartanKind:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise ValueError(f"unknown Cartan family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for type {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_kind(text: str | CartanKind) -> CartanKind:
    """Parse ``"E7"`` / ``"e7"`` / ``"A_2"`` into a :class:`CartanKind`."""
    if isinstance(text, CartanKind):
        return text
    s = text.strip().replace("_", "")
    if len(s) < 2 or not s[1:].isdigit():
        raise ValueError(f"cannot parse Cartan type {text!r}")
    return CartanKind(s[0].upper(), int(s[1:]))


def _cartan_matrix(kind: CartanKind) -> np.ndarray:
    f, n = kind.family, kind.rank
    a = 2 * np.eye(n, dtype=np.int64)

    def link(i, j, aij=-1, aji=-1):
        a[i - 1, j - 1] = aij
        a[j - 1, i - 1] = aji

    if f in "ABCD":
        last = n - 1 if f == "D" else n
        for i in range(1, last):
            link(i, i + 1)
        if f == "B":
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            link(n - 1, n, -1, -2)
        elif f == "C":
            link(n - 1, n, -2, -1)
        elif f == "D":
            link(n - 2, n)
    elif f == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif f == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif f == "G":
        # alpha_1 short, alpha_2 long
        link(1, 2, -3, -1)
    return a


def _symmetrizer(a: np.ndarray) -> tuple[int, ...]:
    """Integers ``d`` with ``a[i, j] * d[j]`` symmetric and ``min(d) == 1``."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and a[i, j] != 0 and d[j] is None:
                    # a[i,j] d[j] = a[j,i] d[i]
                    d[j] = Fraction(int(a[j, i])) * d[i] / int(a[i, j])
                    queue.append(j)
    scale = lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = min(ints)
    # normalise so the shortest coroot has d = 1 in every component
    return tuple(x // g for x in ints)


def _frac_matrix_inverse(a: np.ndarray) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(int(a[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _det(a: np.ndarray) -> int:
    return int(round(np.linalg.det(a.astype(float))))


class WeylElement:
    """Element of a finite Weyl group.

    Stores the action on fundamental-coweight coordinates (``m``) and on
    simple-coroot coordinates (``mc``), both integer matrices.  The reduced
    word is computed on demand from right descents.
    """

    __slots__ = ("rs", "m", "mc", "_word", "_key")

    def __init__(self, rs: "RootSystem", m: np.ndarray, mc: np.ndarray,
                 word: tuple[int, ...] | None = None):
        self.rs = rs
        self.m = m
        self.mc = mc
        self._word = word
        self._key = m.tobytes()

    @classmethod
    def identity(cls, rs: "RootSystem") -> "WeylElement":
        n = rs.rank
        return cls(rs, np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64), ())

    @classmethod
    def from_word(cls, rs: "RootSystem", word: Iterable[int]) -> "WeylElement":
        w = cls.identity(rs)
        for i in word:
            w = w * rs.simple_reflection(i)
        return w

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.rs is not other.rs:
            raise ValueError("Weyl elements of different root systems")
        word = None
        if self._word is not None and other._word is not None:
            word = self._word + other._word
            # only keep it if it stays reduced
            if len(word) != self._count_inversions(self.mc @ other.mc):
                word = None
        return WeylElement(self.rs, self.m @ other.m, self.mc @ other.mc, word)

    def _count_inversions(self, mc: np.ndarray) -> int:
        imgs = self.rs.pos_coroot_array @ mc.T
        return int(np.sum(np.any(imgs < 0, axis=1)))

    def inverse(self) -> "WeylElement":
        mi = np.rint(np.linalg.inv(self.m)).astype(np.int64)
        mci = np.rint(np.linalg.inv(self.mc)).astype(np.int64)
        word = tuple(reversed(self._word)) if self._word is not None else None
        return WeylElement(self.rs, mi, mci, word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"WeylElement({self.rs.kind}, word={self.word})"

    @property
    def key(self) -> bytes:
        return self._key

    def act(self, y: Sequence) -> tuple:
        """Act on a coweight given in fundamental-coweight coordinates."""
        return tuple(sum(int(self.m[i, j]) * y[j] for j in range(len(y))) for i in range(len(y)))

    def act_coroot(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in self.mc @ np.asarray(c, dtype=np.int64))

    @property
    def word(self) -> tuple[int, ...]:
        if self._word is None:
            rs = self.rs
            word: list[int] = []
            mc = self.mc.copy()
            while True:
                for i in range(1, rs.rank + 1):
                    # right descent: w(alpha_i^vee) < 0
                    if np.any(mc[:, i - 1] < 0):
                        mc = mc @ rs.simple_reflection(i).mc
                        word.append(i)
                        break
                else:
                    break
            self._word = tuple(reversed(word))
        return self._word

    @property
    def length(self) -> int:
        return self._count_inversions(self.mc)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def fixed_space_dim(self) -> int:
        return self.rs.rank - int(np.linalg.matrix_rank((self.m - np.eye(self.rs.rank)).astype(float)))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.m, np.eye(self.rs.rank, dtype=np.int64)))


@dataclass(frozen=True)
class CoweightVector:
    """Rational vector in the simple-coroot basis."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def __add__(self, other):
        return CoweightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return CoweightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, s):
        return CoweightVector(tuple(Fraction(s) * a for a in self.coords))

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Exact data of a finite irreducible root system and its untwisted affinisation."""

    kind: CartanKind
    cartan: np.ndarray = field(repr=False)
    d: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.kind.rank

    @cached_property
    def lacing(self) -> int:
        """``r^vee``."""
        return max(self.d) // min(self.d)

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        """``(alpha_i^vee, alpha_j^vee)``."""
        n = self.rank
        return [[Fraction(int(self.cartan[i, j]) * self.d[j]) for j in range(n)] for i in range(n)]

    @cached_property
    def cartan_inverse(self) -> list[list[Fraction]]:
        return _frac_matrix_inverse(self.cartan)

    @cached_property
    def gram_omega(self) -> list[list[Fraction]]:
        """``(varpi_i^vee, varpi_j^vee)``."""
        ainv = self.cartan_inverse
        n = self.rank
        return [[ainv[i][j] * self.d[j] for j in range(n)] for i in range(n)]

    @cached_property
    def det(self) -> int:
        """``e = |P^vee / Q^vee|``."""
        return _det(self.cartan)

    @property
    def e(self) -> int:
        return self.det

    @cached_property
    def m(self) -> int:
        """Least ``m > 0`` with ``(P^vee, P^vee)`` contained in ``Z/m``."""
        return lcm(*(x.denominator for row in self.gram_omega for x in row))

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        """Positive coroots in simple-coroot coordinates, sorted by height."""
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            c = queue.popleft()
            for i in range(n):
                pair = sum(c[k] * int(self.cartan[k, i]) for k in range(n))
                img = tuple(c[k] - (pair if k == i else 0) for k in range(n))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        pos = [c for c in seen if all(x >= 0 for x in c)]
        return tuple(sorted(pos, key=lambda c: (sum(c), c)))

    @cached_property
    def coroot_half_norm(self) -> dict[tuple[int, ...], int]:
        """``d_alpha = (alpha^vee, alpha^vee) / 2`` for every positive coroot.

        Real affine coroots over ``alpha^vee`` are ``alpha^vee + m d_alpha c``.
        """
        n = self.rank
        g = self.gram
        out = {}
        for c in self.positive_coroots:
            v = sum(c[i] * g[i][j] * c[j] for i in range(n) for j in range(n)) / 2
            assert v.denominator == 1
            out[c] = int(v)
        return out

    def half_norm(self, coroot: Sequence[int]) -> int:
        c = tuple(coroot)
        if not self.is_positive_coroot(c):
            c = tuple(-x for x in c)
        return self.coroot_half_norm[c]

    @cached_property
    def pos_coroot_array(self) -> np.ndarray:
        return np.array(self.positive_coroots, dtype=np.int64)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates."""
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            r = queue.popleft()
            for i in range(n):
                pair = sum(r[k] * int(self.cartan[i, k]) for k in range(n))
                img = tuple(r[k] - (pair if k == i else 0) for k in range(n))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        pos = [r for r in seen if all(x >= 0 for x in r)]
        return tuple(sorted(pos, key=lambda r: (sum(r), r)))

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """``(a_0, ..., a_l)``; ``a_1..a_l`` are the coefficients of the highest root."""
        theta = self.positive_roots[-1]
        return (1,) + theta

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        """``(a_0^vee, ..., a_l^vee)``; the tail is ``theta^vee`` in coroot coordinates."""
        tail = []
        for a, d in zip(self.marks[1:], self.d):
            assert a % d == 0
            tail.append(a // d)
        return (1,) + tuple(tail)

    @cached_property
    def theta_coroot(self) -> tuple[int, ...]:
        return self.comarks[1:]

    @cached_property
    def theta_omega(self) -> tuple[int, ...]:
        return self.to_omega(self.theta_coroot)

    @cached_property
    def dual_coxeter(self) -> int:
        return sum(self.comarks)

    @cached_property
    def coxeter(self) -> int:
        return sum(self.marks)

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        return EXPONENTS[self.kind.family, self.rank]

    @cached_property
    def J(self) -> tuple[int, ...]:
        """Nodes ``j`` (1-based) with ``a_j = 1``: the minuscule fundamental coweights."""
        return tuple(i for i in range(1, self.rank + 1) if self.marks[i] == 1)

    @cached_property
    def rho_omega(self) -> tuple[Fraction, ...]:
        """``rho_bar`` transported to the coweight space, fundamental-coweight coordinates."""
        return tuple(Fraction(1, di) for di in self.d)

    @property
    def rho_bar(self) -> CoweightVector:
        """``rho_bar`` in the simple-coroot basis."""
        return CoweightVector(self.to_coroot(self.rho_omega))

    @property
    def form(self) -> list[list[Fraction]]:
        return self.gram

    @property
    def h_dual(self) -> int:
        return self.dual_coxeter

    @cached_property
    def rho_norm2(self) -> Fraction:
        return self.form_omega(self.rho_omega, self.rho_omega)

    @cached_property
    def weyl_order(self) -> int:
        return weyl_group_order(self.cartan)

    @cached_property
    def affine_cartan(self) -> np.ndarray:
        n = self.rank
        a = np.zeros((n + 1, n + 1), dtype=np.int64)
        a[1:, 1:] = self.cartan
        a[0, 0] = 2
        theta = self.marks[1:]
        thv = self.theta_coroot
        for j in range(1, n + 1):
            # a_{0j} = -<alpha_j, theta^vee>, a_{j0} = -<theta, alpha_j^vee>
            a[0, j] = -sum(thv[i] * int(self.cartan[i, j - 1]) for i in range(n))
            a[j, 0] = -sum(theta[k] * int(self.cartan[j - 1, k]) for k in range(n))
        return a

    def simple_reflection(self, i: int) -> WeylElement:
        return self._simple_reflections[i - 1]

    @cached_property
    def _simple_reflections(self) -> tuple[WeylElement, ...]:
        n = self.rank
        out = []
        for i in range(n):
            # fundamental-coweight coords: y -> y - y_i * (alpha_i^vee in varpi coords)
            m = np.eye(n, dtype=np.int64)
            m[:, i] -= self.cartan[i, :]
            # coroot coords: c -> c - <alpha_i, c> e_i
            mc = np.eye(n, dtype=np.int64)
            mc[i, :] -= self.cartan[:, i]
            out.append(WeylElement(self, m, mc, (i + 1,)))
        return tuple(out)

    @cached_property
    def theta_reflection(self) -> WeylElement:
        n = self.rank
        thv_o = np.array(self.theta_omega, dtype=np.int64)
        thv_c = np.array(self.theta_coroot, dtype=np.int64)
        marks = np.array(self.marks[1:], dtype=np.int64)
        m = np.eye(n, dtype=np.int64) - np.outer(thv_o, marks)
        # <theta, alpha_i^vee> = sum_k a_k cartan[i, k]
        mc = np.eye(n, dtype=np.int64) - np.outer(thv_c, self.cartan @ marks)
        return WeylElement(self, m, mc)

    # --- conversions and forms -------------------------------------------------

    def to_omega(self, c: Sequence) -> tuple:
        """Coroot coordinates -> fundamental-coweight coordinates."""
        n = self.rank
        return tuple(sum(int(self.cartan[k, j]) * c[k] for k in range(n)) for j in range(n))

    def to_coroot(self, y: Sequence) -> tuple[Fraction, ...]:
        ainv = self.cartan_inverse
        n = self.rank
        # c = A^{-T} y
        return tuple(sum(ainv[k][j] * y[k] for k in range(n)) for j in range(n))

    def form_omega(self, y: Sequence, z: Sequence) -> Fraction:
        g = self.gram_omega
        n = self.rank
        return sum((g[i][j] * y[i] * z[j] for i in range(n) for j in range(n)), Fraction(0))

    def pair(self, coroot: Sequence[int], y: Sequence) -> Fraction | int:
        """``(coroot, coweight)`` for a coroot in coroot coordinates and a coweight in
        fundamental-coweight coordinates."""
        return sum(c * di * yi for c, di, yi in zip(coroot, self.d, y))

    def height(self, coroot: Sequence[int]) -> int:
        """``<rho_bar, coroot>``."""
        return sum(coroot)

    def is_positive_coroot(self, c: Sequence[int]) -> bool:
        return all(x >= 0 for x in c) and any(x > 0 for x in c)


def build_root_system(kind: CartanKind | str) -> RootSystem:
    """Root system of the given finite type (Bourbaki numbering)."""
    kind = parse_kind(kind)
    a = _cartan_matrix(kind)
    a.setflags(write=False)
    rs = RootSystem(kind, a, _symmetrizer(a))
    _self_check(rs)
    return rs


def _self_check(rs: RootSystem) -> None:
    n = rs.rank
    g = rs.gram
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise AssertionError(f"{rs.kind}: form not symmetric")
            # (alpha_i^vee, alpha_j^vee) = a_ij a_j / a_j^vee
            assert g[i][j] == Fraction(int(rs.cartan[i, j]) * rs.marks[j + 1], rs.comarks[j + 1])
    if sum(x * y for x, y in zip(rs.theta_coroot, [sum(g[i][j] * rs.theta_coroot[j] for j in range(n))
                                                     for i in range(n)])) != 2:
        raise AssertionError(f"{rs.kind}: (theta^vee, theta^vee) != 2")
    aff = rs.affine_cartan
    if np.any(np.array(rs.marks) @ aff.T) or np.any(np.array(rs.comarks) @ aff):
        raise AssertionError(f"{rs.kind}: marks/comarks do not annihilate the affine Cartan matrix")
    for i in range(1, n + 1):
        s = rs.simple_reflection(i)
        if not (s * s).is_identity():
            raise AssertionError(f"{rs.kind}: s_{i}^2 != 1")
    for i, j in combinations(range(1, n + 1), 2):
        order = {0: 2, 1: 3, 2: 4, 3: 6}[int(rs.cartan[i - 1, j - 1] * rs.cartan[j - 1, i - 1])]
        st = rs.simple_reflection(i) * rs.simple_reflection(j)
        p = WeylElement.identity(rs)
        for _ in range(order):
            p = p * st
        if not p.is_identity():
            raise AssertionError(f"{rs.kind}: braid relation fails for ({i},{j})")


def inner(rs: RootSystem, v: CoweightVector, w: CoweightVector) -> Fraction:
    """Invariant form on the coweight space, both arguments in coroot coordinates."""
    if len(v) != rs.rank or len(w) != rs.rank:
        raise ValueError("dimension mismatch")
    g = rs.gram
    n = rs.rank
    return sum((v.coords[i] * g[i][j] * w.coords[j] for i in range(n) for j in range(n)), Fraction(0))


# --- Weyl groups --------------------------------------------------------------

def _orbit_size(cartan: np.ndarray, node: int, cap: int | None = None) -> int:
    """Size of the W-orbit of the fundamental coweight at ``node`` (0-based)."""
    n = len(cartan)
    start = tuple(int(i == node) for i in range(n))
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for i in range(n):
            if y[i] > 0:
                img = tuple(y[k] - y[i] * int(cartan[i, k]) for k in range(n))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
                    if cap is not None and len(seen) > cap:
                        return cap + 1
    # orbit of a dominant element: BFS going down from the dominant one only
    # visits each element once; negatives are reached through descending chains.
    return len(seen)


def _components(cartan: np.ndarray, nodes: Sequence[int]) -> list[list[int]]:
    nodes = list(nodes)
    left = set(nodes)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in list(left):
                if j not in comp and cartan[i, j] != 0:
                    comp.add(j)
                    queue.append(j)
        left -= comp
        comps.append(sorted(comp))
    return comps


def weyl_group_order(cartan: np.ndarray, nodes: Sequence[int] | None = None) -> int:
    """``|W|`` of the parabolic subsystem on ``nodes`` (0-based; default all).

    Uses ``|W| = |W . varpi_i^vee| * |W_{nodes - i}|`` recursively, peeling
    off the end node with the smallest orbit.  Independent of the exponent
    tables.
    """
    if nodes is None:
        nodes = range(len(cartan))
    nodes = list(nodes)
    if not nodes:
        return 1
    total = 1
    for comp in _components(cartan, nodes):
        sub = cartan[np.ix_(comp, comp)]
        total *= _irreducible_order(sub)
    return total


def _irreducible_order(cartan: np.ndarray) -> int:
    n = len(cartan)
    if n == 1:
        return 2
    leaves = [i for i in range(n) if sum(1 for j in range(n) if j != i and cartan[i, j]) == 1]
    best = None
    for leaf in leaves:
        size = _orbit_size(cartan, leaf, cap=best[0] if best else None)
        if best is None or size < best[0]:
            best = (size, leaf)
    size, leaf = best
    rest = [i for i in range(n) if i != leaf]
    return size * weyl_group_order(cartan[np.ix_(rest, rest)])


def weyl_group_elements(rs: RootSystem, subset: Iterable[int] | None = None,
                        limit: int = 10**6) -> list[WeylElement]:
    """All elements of the parabolic subgroup generated by ``subset`` (1-based).

    Breadth-first, so every stored word is reduced.  Raises ``ValueError`` when
    the group order exceeds ``limit``.
    """
    gens = sorted(set(range(1, rs.rank + 1) if subset is None else subset))
    order = weyl_group_order(rs.cartan, [g - 1 for g in gens])
    if order > limit:
        raise ValueError(f"|W| = {order} exceeds the enumeration limit {limit}")
    e = WeylElement.identity(rs)
    seen = {e.key: e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for i in gens:
                s = rs.simple_reflection(i)
                m = w.m @ s.m
                k = m.tobytes()
                if k not in seen:
                    x = WeylElement(rs, m, w.mc @ s.mc, w.word + (i,))
                    seen[k] = x
                    nxt.append(x)
        frontier = nxt
    out = list(seen.values())
    assert len(out) == order
    return out


# --- Levi subsystems -----------------------------------------------------------

def classify_component(rs: RootSystem, comp: Sequence[int]) -> CartanKind:
    """Type of the Dynkin subdiagram on ``comp`` (1-based nodes, connected)."""
    idx = [c - 1 for c in comp]
    a = rs.cartan[np.ix_(idx, idx)]
    n = len(idx)
    if n == 1:
        return CartanKind("A", 1)
    prods = {(i, j): int(a[i, j] * a[j, i]) for i in range(n) for j in range(n) if i < j and a[i, j]}
    deg = [sum(1 for j in range(n) if j != i and a[i, j]) for i in range(n)]
    multi = [(ij, p) for ij, p in prods.items() if p > 1]
    if not multi:
        if max(deg) <= 2:
            return CartanKind("A", n)
        branch = deg.index(3)
        arms = []
        for start in [j for j in range(n) if j != branch and a[branch, j]]:
            length, prev, cur = 1, branch, start
            while True:
                nxt = [k for k in range(n) if k not in (prev, cur) and a[cur, k]]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return CartanKind("D", n)
        return CartanKind("E", n)
    (i, j), p = multi[0]
    if p == 3:
        return CartanKind("G", 2)
    if n == 2:
        return CartanKind("B", 2)
    if n == 4 and deg[i] == 2 and deg[j] == 2:
        return CartanKind("F", 4)
    # B_n: the end node of the double bond carries the short root (larger d)
    end = i if deg[i] == 1 else j
    other = j if end == i else i
    dd = [rs.d[k] for k in idx]
    return CartanKind("B" if dd[end] > dd[other] else "C", n)


@dataclass(frozen=True)
class LeviDatum:
    """Standard Levi subsystem given by a set of simple nodes."""

    rs: RootSystem = field(repr=False)
    subset: tuple[int, ...]
    components: tuple[CartanKind, ...]
    exponents: tuple[int, ...]
    order: int

    @property
    def j(self) -> int:
        return len(self.subset)

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        inside = set(i - 1 for i in self.subset)
        return tuple(c for c in self.rs.positive_coroots
                     if all(x == 0 for k, x in enumerate(c) if k not in inside))

    @cached_property
    def coroots(self) -> frozenset[tuple[int, ...]]:
        pos = self.positive_coroots
        return frozenset(pos) | frozenset(tuple(-x for x in c) for c in pos)

    def elements(self, limit: int = 10**6) -> list[WeylElement]:
        return weyl_group_elements(self.rs, self.subset, limit=limit)

    def describe(self) -> str:
        if not self.components:
            return "0"
        return "x".join(str(c) for c in self.components)


def levi_datum(rs: RootSystem, subset: Iterable[int]) -> LeviDatum:
    subset = list(subset)
    if len(set(subset)) != len(subset):
        raise ValueError(f"duplicate Levi nodes in {subset}")
    bad = [i for i in subset if not (isinstance(i, (int, np.integer)) and 1 <= i <= rs.rank)]
    if bad:
        raise ValueError(f"Levi nodes out of range 1..{rs.rank}: {bad}")
    subset = tuple(sorted(int(i) for i in subset))
    comps = _components(rs.cartan, [i - 1 for i in subset])
    kinds = tuple(sorted((classify_component(rs, [c + 1 for c in comp]) for comp in comps),
                         key=lambda k: (-k.rank, k.family)))
    exps = tuple(sorted(m for k in kinds for m in EXPONENTS[k.family, k.rank]))
    order = weyl_group_order(rs.cartan, [i - 1 for i in subset])
    if prod(m + 1 for m in exps) != order:
        raise AssertionError(f"Shephard-Todd identity fails for Levi {subset} of {rs.kind}")
    return LeviDatum(rs, subset, kinds, exps, order)
