"""Extended affine Weyl group ``W~ = W . t_{P^vee}`` of an untwisted affine algebra.

Coweight lattice points ``b`` are integer tuples in fundamental-coweight
coordinates.  An element ``t_b w`` acts on affine coroots by

    t_b w (alpha + n c) = w(alpha) + (n - (w(alpha), b)) c,

and on the coweight space by ``x -> w(x) - b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .rootdata import RootSystem, WeylElement

__all__ = [
    "AffineCoroot",
    "AffineWeylElement",
    "PiElement",
    "compose",
    "translation",
    "antidominant_decomposition",
    "inversion_set",
    "length_closed_form",
    "alcove_walk_length",
    "omega_generators",
    "omega_u_translate",
    "is_antidominant",
]

Coweight = tuple[int, ...]


@dataclass(frozen=True, order=True)
class AffineCoroot:
    """Real affine coroot ``alpha + n c`` with ``alpha`` in simple-coroot coordinates.

    ``n`` is always a multiple of ``d_alpha = (alpha, alpha) / 2``.
    """

    finite: tuple[int, ...]
    n: int

    def is_positive(self) -> bool:
        if self.n != 0:
            return self.n > 0
        return all(x >= 0 for x in self.finite) and any(self.finite)

    def __neg__(self):
        return AffineCoroot(tuple(-x for x in self.finite), -self.n)


class AffineWeylElement:
    """``t_b w`` with ``b`` in ``P^vee`` (fundamental-coweight coordinates)."""

    __slots__ = ("rs", "b", "w")

    def __init__(self, rs: RootSystem, b: Sequence[int], w: WeylElement):
        self.rs = rs
        self.b: Coweight = tuple(int(x) for x in b)
        self.w = w

    @classmethod
    def identity(cls, rs: RootSystem) -> "AffineWeylElement":
        return cls(rs, (0,) * rs.rank, WeylElement.identity(rs))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElement) and other.rs is self.rs
                and self.b == other.b and self.w == other.w)

    def __hash__(self):
        return hash((self.b, self.w.key))

    def __repr__(self):
        return f"AffineWeylElement(b={self.b}, w={self.w.word})"

    def inverse(self) -> "AffineWeylElement":
        wi = self.w.inverse()
        return AffineWeylElement(self.rs, tuple(-x for x in wi.act(self.b)), wi)

    def act(self, beta: AffineCoroot) -> AffineCoroot:
        img = self.w.act_coroot(beta.finite)
        return AffineCoroot(img, beta.n - int(self.rs.pair(img, self.b)))

    def act_point(self, x: Sequence) -> tuple:
        """``y -> w(y) + b`` on the coweight space (fundamental-coweight coordinates).

        Dual to :meth:`act`: ``(x.beta)(x y) = beta(y)`` for affine coroots viewed
        as affine functions ``y -> (alpha, y) + n``.
        """
        return tuple(a + b for a, b in zip(self.w.act(x), self.b))

    @property
    def length(self) -> int:
        return length_closed_form(self)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1


def compose(x: AffineWeylElement, y: AffineWeylElement) -> AffineWeylElement:
    """``(t_b w)(t_b' w') = t_{b + w(b')} w w'``."""
    if x.rs is not y.rs:
        raise ValueError("cannot compose elements of different root systems")
    wb = x.w.act(y.b)
    return AffineWeylElement(x.rs, tuple(p + q for p, q in zip(x.b, wb)), x.w * y.w)


def translation(rs: RootSystem, b: Sequence[int]) -> AffineWeylElement:
    return AffineWeylElement(rs, b, WeylElement.identity(rs))


def _level_bound(x: AffineWeylElement) -> int:
    # |(w alpha, b)| over all finite coroots, plus one
    pairs = [abs(int(x.rs.pair(c, x.b))) for c in x.rs.positive_coroots]
    return max(pairs, default=0) + 1


def inversion_set(x: AffineWeylElement) -> frozenset[AffineCoroot]:
    """``Phi^vee(x) = {beta > 0 : x(beta) < 0}``.

    Scans positive affine coroots of level ``0 <= n <= N`` with
    ``N = max_alpha |(alpha, b)| + 1``.  This suffices: ``x(alpha + n c)`` has
    level ``n - (w alpha, b)`` which is positive once ``n > |(w alpha, b)|``.
    """
    rs = x.rs
    bound = _level_bound(x)
    out = set()
    for pos in rs.positive_coroots:
        d = rs.coroot_half_norm[pos]
        for sign in (1, -1):
            alpha = tuple(sign * c for c in pos)
            start = 0 if sign == 1 else d
            for n in range(start, bound + 1, d):
                beta = AffineCoroot(alpha, n)
                if not x.act(beta).is_positive():
                    out.add(beta)
    return frozenset(out)


def length_closed_form(x: AffineWeylElement) -> int:
    """Length via the per-root count of inverted affine coroots."""
    rs = x.rs
    total = 0
    for pos in rs.positive_coroots:
        img = x.w.act_coroot(pos)
        # levels over alpha run through d_alpha Z, and (w alpha, b) lies in d_alpha Z
        k = int(rs.pair(img, x.b)) // rs.coroot_half_norm[pos]
        neg = not rs.is_positive_coroot(img)
        # alpha + n c, n >= 0
        total += max(k, 0) + (1 if k >= 0 and neg else 0)
        # -alpha + n c, n >= 1
        total += max(-k - 1, 0) + (1 if k <= -1 and not neg else 0)
    return total


def alcove_walk_length(x: AffineWeylElement) -> tuple[int, ...]:
    """Reduced word for the coset ``x Omega`` in the affine simple reflections.

    Greedily strips right descents ``x(alpha_i^vee) < 0`` for ``i = 0..l``,
    with ``alpha_0^vee = -theta^vee + c``.  Returns the word (0 denotes
    ``s_0``); its length is ``l(x)``, independently of ``inversion_set``.
    """
    rs = x.rs
    thv = tuple(-c for c in rs.theta_coroot)
    simple = [AffineCoroot(thv, 1)] + [
        AffineCoroot(tuple(int(i == j) for j in range(rs.rank)), 0) for i in range(rs.rank)]
    zero = (0,) * rs.rank
    # s_0 = t_{theta^vee} s_theta
    gens = [AffineWeylElement(rs, rs.theta_omega, rs.theta_reflection)] + [
        AffineWeylElement(rs, zero, rs.simple_reflection(i)) for i in range(1, rs.rank + 1)]
    word: list[int] = []
    cur = x
    while True:
        for i, beta in enumerate(simple):
            if not cur.act(beta).is_positive():
                cur = cur * gens[i]
                word.append(i)
                break
        else:
            break
    return tuple(reversed(word))


def is_antidominant(b: Sequence) -> bool:
    """``<alpha_i, b> <= 0`` for every simple root."""
    return all(y <= 0 for y in b)


@dataclass(frozen=True, eq=False)
class PiElement:
    """``pi_b`` from the factorisation ``t_b = pi_b u_b``."""

    rs: RootSystem
    b: Coweight
    u_b: WeylElement
    b_minus: Coweight

    @cached_property
    def element(self) -> AffineWeylElement:
        return AffineWeylElement(self.rs, self.b, self.u_b.inverse())

    @property
    def length(self) -> int:
        return self.element.length

    @property
    def sign(self) -> int:
        return self.element.sign

    def __eq__(self, other):
        return isinstance(other, PiElement) and self.rs is other.rs and self.b == other.b

    def __hash__(self):
        return hash(self.b)

    def __repr__(self):
        return f"PiElement(b={self.b}, b_minus={self.b_minus}, u_b={self.u_b.word})"


def antidominant_decomposition(rs: RootSystem, b: Sequence[int]) -> PiElement:
    """Factor ``t_b = pi_b u_b`` with ``u_b`` minimal such that ``u_b(b)`` is antidominant."""
    cur = tuple(int(x) for x in b)
    if len(cur) != rs.rank:
        raise ValueError("dimension mismatch")
    steps: list[int] = []
    while True:
        i = next((i for i, y in enumerate(cur) if y > 0), None)
        if i is None:
            break
        cur = rs.simple_reflection(i + 1).act(cur)
        steps.append(i + 1)
    # u_b = s_{i_k} ... s_{i_1}
    u_b = WeylElement.from_word(rs, reversed(steps))
    return PiElement(rs, tuple(int(x) for x in b), u_b, cur)


def omega_generators(rs: RootSystem) -> list[PiElement]:
    """``pi_j = pi_{varpi_j}`` for the nodes ``j`` with mark 1."""
    out = []
    for j in rs.J:
        b = tuple(int(i == j - 1) for i in range(rs.rank))
        out.append(antidominant_decomposition(rs, b))
    return out


def omega_u_translate(p: PiElement, j: int, u: int) -> PiElement:
    """``pi_b pi_{u varpi_j} = pi_{b + u_b^{-1}(u varpi_j)}``."""
    rs = p.rs
    if j not in rs.J:
        raise ValueError(f"node {j} is not in J = {rs.J}")
    uw = tuple(u * int(i == j - 1) for i in range(rs.rank))
    shift = p.u_b.inverse().act(uw)
    return antidominant_decomposition(rs, tuple(x + y for x, y in zip(p.b, shift)))


def iter_box(rank: int, radius: int) -> Iterator[Coweight]:
    """All integer vectors with entries in ``[-radius, radius]``."""
    grid = np.indices((2 * radius + 1,) * rank).reshape(rank, -1).T - radius
    for row in grid:
        yield tuple(int(x) for x in row)
