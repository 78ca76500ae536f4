"""Boundary principal admissible levels, the set Sigma_u and its Omega_u-classes.

A level is ``k = -h^vee + h^vee / u``.  Classes of ``Sigma_u`` modulo ``Omega_u``
are in bijection with the admissible weights ``pi_b . (k varpi_0)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .affine_weyl import (
    AffineCoroot,
    AffineWeylElement,
    PiElement,
    antidominant_decomposition,
    iter_box,
    omega_u_translate,
)
from .errors import LevelError
from .rootdata import RootSystem, weyl_group_elements

__all__ = [
    "LevelData",
    "PiUSet",
    "AdmissibleWeight",
    "AdmissibleClass",
    "validate_level",
    "pi_u_set",
    "is_u_admissible",
    "sigma_u_membership",
    "dilated_alcove",
    "sigma_u_members",
    "enumerate_admissible",
    "brute_force_sigma_u",
    "realize_weight",
    "anomaly",
    "dominance_violations",
]


@dataclass(frozen=True)
class LevelData:
    u: int
    h_dual: int

    @property
    def shift(self) -> Fraction:
        """``k + h^vee``."""
        return Fraction(self.h_dual, self.u)

    @property
    def k(self) -> Fraction:
        return self.shift - self.h_dual


def validate_level(rs: RootSystem, u: int) -> LevelData:
    if not isinstance(u, int) or u < 1:
        raise LevelError(f"u must be a positive integer, got {u!r}")
    hv = rs.dual_coxeter
    if gcd(u, hv) != 1:
        raise LevelError(f"gcd(u, h^vee) = gcd({u}, {hv}) = {gcd(u, hv)} != 1 for {rs.kind}")
    if gcd(u, rs.lacing) != 1:
        raise LevelError(f"gcd(u, r^vee) = gcd({u}, {rs.lacing}) = {gcd(u, rs.lacing)} != 1 for {rs.kind}")
    return LevelData(u, hv)


@dataclass(frozen=True)
class PiUSet:
    """``{u c - theta^vee} + {alpha_i^vee}``."""

    coroots: tuple[AffineCoroot, ...]


def pi_u_set(rs: RootSystem, u: int) -> PiUSet:
    n = rs.rank
    first = AffineCoroot(tuple(-c for c in rs.theta_coroot), u)
    return PiUSet((first,) + tuple(AffineCoroot(tuple(int(i == j) for j in range(n)), 0)
                                   for i in range(n)))


def is_u_admissible(x: AffineWeylElement, pu: PiUSet) -> bool:
    """``x(Pi_u) `` contained in the positive affine coroots."""
    return all(x.act(beta).is_positive() for beta in pu.coroots)


def sigma_u_membership(rs: RootSystem, u: int, b: Sequence[int] | PiElement) -> bool:
    """``u + (theta^vee, b_-) > 0``, or ``= 0`` with ``u_b^{-1}(theta^vee) < 0``."""
    p = b if isinstance(b, PiElement) else antidominant_decomposition(rs, b)
    val = u + rs.pair(rs.theta_coroot, p.b_minus)
    if val > 0:
        return True
    if val < 0:
        return False
    img = p.u_b.inverse().act_coroot(rs.theta_coroot)
    return not rs.is_positive_coroot(img)


def dilated_alcove(rs: RootSystem, u: int) -> list[tuple[int, ...]]:
    """Antidominant ``v`` in ``P^vee`` with ``u + (theta^vee, v) >= 0``.

    Writing ``v = -sum n_i varpi_i`` this is ``n_i >= 0``, ``sum a_i n_i <= u``.
    """
    marks = rs.marks[1:]
    out: list[tuple[int, ...]] = []

    def rec(i: int, budget: int, acc: list[int]):
        if i == rs.rank:
            out.append(tuple(-x for x in acc))
            return
        for n in range(budget // marks[i] + 1):
            rec(i + 1, budget - n * marks[i], acc + [n])

    rec(0, u, [])
    return sorted(out)


def _weyl_orbit(rs: RootSystem, v: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = {v}
    queue = deque([v])
    while queue:
        y = queue.popleft()
        for i in range(rs.rank):
            if y[i] != 0:
                img = rs.simple_reflection(i + 1).act(y)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return sorted(seen)


def sigma_u_members(rs: RootSystem, u: int) -> list[PiElement]:
    """All of ``Sigma_u``, via W-orbits of the dilated alcove."""
    out = []
    for v in dilated_alcove(rs, u):
        for b in _weyl_orbit(rs, v):
            p = antidominant_decomposition(rs, b)
            assert p.b_minus == v
            if sigma_u_membership(rs, u, p):
                out.append(p)
    return out


def brute_force_sigma_u(rs: RootSystem, u: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Independent scan of ``t_b w`` with ``x(Pi_u) > 0``.

    Every coordinate ``<alpha_i, b>`` of such ``b`` is bounded by
    ``|<theta, b_->| = |(theta^vee, b_-)| <= u``, so the box of radius ``u + 1``
    is exhaustive.  Returns ``(b, word of w)`` pairs.
    """
    pu = pi_u_set(rs, u)
    ws = weyl_group_elements(rs)
    hits = []
    for b in iter_box(rs.rank, u + 1):
        for w in ws:
            x = AffineWeylElement(rs, b, w)
            if is_u_admissible(x, pu):
                hits.append((b, w.word))
    return sorted(hits)


@dataclass(frozen=True)
class AdmissibleWeight:
    """Weight in pairing coordinates ``<lambda, alpha_i^vee>`` plus level and delta part."""

    finite: tuple[Fraction, ...]
    level: Fraction
    delta: Fraction
    anomaly: Fraction
    # lambda_bar + rho_bar, transported to the coweight space (varpi^vee coordinates)
    shifted_omega: tuple[Fraction, ...] = field(repr=False, compare=False)

    def same_weight(self, other: "AdmissibleWeight") -> bool:
        # weights are compared modulo C delta
        return self.finite == other.finite and self.level == other.level


@dataclass
class AdmissibleClass:
    rep: PiElement
    orbit: tuple[PiElement, ...]
    weight: AdmissibleWeight
    class_id: int


def realize_weight(p: PiElement, lv: LevelData) -> AdmissibleWeight:
    """``pi_b . (k varpi_0)`` computed exactly.

    With ``K = k + h^vee`` the finite part of ``lambda + rho`` is
    ``u_b^{-1} rho_bar + K b`` and the delta coefficient is
    ``-((u_b^{-1} rho_bar, b) + K |b|^2 / 2)``.
    """
    rs = p.rs
    K = lv.shift
    rho = rs.rho_omega
    w_rho = p.u_b.inverse().act(rho)
    shifted = tuple(a + K * b for a, b in zip(w_rho, p.b))
    finite = tuple(rs.d[i] * (shifted[i] - rho[i]) for i in range(rs.rank))
    delta = -(rs.form_omega(w_rho, p.b) + K * rs.form_omega(p.b, p.b) / 2)
    s = rs.form_omega(shifted, shifted) / (2 * K) - rs.rho_norm2 / (2 * rs.dual_coxeter)
    return AdmissibleWeight(tuple(Fraction(x) for x in finite), lv.k, Fraction(delta),
                            Fraction(s), tuple(Fraction(x) for x in shifted))


def anomaly(w: AdmissibleWeight, rs: RootSystem, lv: LevelData) -> Fraction:
    """``s_lambda = |lambda + rho_bar|^2 / (2(k + h^vee)) - |rho_bar|^2 / (2 h^vee)``."""
    # rebuild lambda_bar + rho_bar from the pairing coordinates
    shifted = tuple(Fraction(x) / di + Fraction(1, di) for x, di in zip(w.finite, rs.d))
    return rs.form_omega(shifted, shifted) / (2 * lv.shift) - rs.rho_norm2 / (2 * rs.dual_coxeter)


def dominance_violations(w: AdmissibleWeight, rs: RootSystem, lv: LevelData,
                         max_level: int = 10) -> list[AffineCoroot]:
    """Positive affine coroots of level ``<= max_level`` with
    ``<lambda + rho, alpha^vee>`` in ``{0, -1, -2, ...}``."""
    bad = []
    for pos in rs.positive_coroots:
        d = rs.coroot_half_norm[pos]
        fin = rs.pair(pos, w.shifted_omega)
        for sign in (1, -1):
            for n in range(0 if sign == 1 else d, max_level + 1, d):
                val = sign * fin + n * lv.shift
                if val <= 0 and Fraction(val).denominator == 1:
                    bad.append(AffineCoroot(tuple(sign * c for c in pos), n))
    return bad


def _lex_key(b: Sequence[int]) -> tuple[int, ...]:
    return tuple(b)


def omega_u_orbit(p: PiElement, u: int) -> tuple[PiElement, ...]:
    rs = p.rs
    seen = {p.b: p}
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for j in rs.J:
            r = omega_u_translate(q, j, u)
            if r.b not in seen:
                seen[r.b] = r
                queue.append(r)
    return tuple(seen[b] for b in sorted(seen))


def enumerate_admissible(rs: RootSystem, u: int,
                         members: Iterable[PiElement] | None = None) -> list[AdmissibleClass]:
    """Classes of ``Sigma_u`` under ``Omega_u`` with their weights.

    Representatives are the lexicographically smallest ``b``; classes are
    ordered by ``(b_minus, b)`` of the representative.
    """
    lv = validate_level(rs, u)
    pool = list(members) if members is not None else sigma_u_members(rs, u)
    by_b = {p.b: p for p in pool}
    done: set[tuple[int, ...]] = set()
    raw = []
    for p in pool:
        if p.b in done:
            continue
        orbit = omega_u_orbit(p, u)
        for q in orbit:
            if q.b not in by_b:
                raise AssertionError(f"Omega_u moved {p.b} outside Sigma_u to {q.b}")
            done.add(q.b)
        rep = min(orbit, key=lambda q: _lex_key(q.b))
        weight = realize_weight(rep, lv)
        for q in orbit:
            if not realize_weight(q, lv).same_weight(weight):
                raise AssertionError(f"weight differs inside the class of {rep.b}")
        raw.append((rep, orbit, weight))
    raw.sort(key=lambda t: (t[0].b_minus, t[0].b))
    return [AdmissibleClass(rep, orbit, weight, i) for i, (rep, orbit, weight) in enumerate(raw)]
