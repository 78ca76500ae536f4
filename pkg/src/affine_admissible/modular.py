"""Modular S and T matrices on the admissible classes.

Two flavours are built on the same index (canonical class representatives):

* ``KW``: the character-side matrices.  ``S`` is the Kac-Wakimoto formula;
  ``T`` is the stated diagonal ``exp(pi i (u/h) (|X_b|^2 - |rho|^2 / 2u))``
  and ``T_lift = exp(2 pi i s_lambda)`` is the diagonal built from anomalies.
* ``DAHA``: the perfect representation at ``q = zeta = exp(-2 pi i h / u)``
  with ``q^x := exp(-2 pi i h x / u)`` and ``kappa = -u / h`` (``h`` the dual
  Coxeter number).

Phases are carried as exact rational exponents and only turned into floats
at assembly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import pi, prod, sin, sqrt
from typing import Sequence

import numpy as np

from .admissible import AdmissibleClass, enumerate_admissible, validate_level
from .affine_weyl import PiElement, inversion_set
from .errors import GateError, MuBulletError
from .rootdata import LeviDatum, RootSystem
from .spaltenstein import BRUTE_FORCE_GATE, count_closed_form

__all__ = [
    "PhasePower",
    "ModularMatrices",
    "ComparisonReport",
    "kw_matrices",
    "daha_specialized_matrices",
    "mu_bullet_at_specialization",
    "daha_s_unsimplified",
    "intertwiner_comparison",
    "sl2z_residuals",
    "weyl_signed_permutation",
    "ef_projector_and_restriction",
    "EfReport",
]


class PhasePower:
    """``exp(2 pi i r)`` for an exact rational ``r`` (kept modulo 1)."""

    __slots__ = ("exponent",)

    def __init__(self, exponent):
        r = Fraction(exponent)
        self.exponent = r - (r.numerator // r.denominator)

    def __mul__(self, other: "PhasePower") -> "PhasePower":
        return PhasePower(self.exponent + other.exponent)

    def __truediv__(self, other: "PhasePower") -> "PhasePower":
        return PhasePower(self.exponent - other.exponent)

    def __pow__(self, n: int) -> "PhasePower":
        return PhasePower(self.exponent * n)

    def __eq__(self, other):
        return isinstance(other, PhasePower) and self.exponent == other.exponent

    def __hash__(self):
        return hash(self.exponent)

    def __repr__(self):
        return f"PhasePower({self.exponent})"

    def is_one(self) -> bool:
        return self.exponent == 0

    @property
    def value(self) -> complex:
        r = self.exponent
        # exact values on the real and imaginary axes keep signs clean
        quarter = {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}
        if r in quarter:
            return complex(quarter[r])
        ang = 2 * pi * float(r)
        return complex(np.cos(ang), np.sin(ang))


def q_power(rs: RootSystem, u: int, x) -> PhasePower:
    """``q^x`` at ``q = zeta`` on the fixed branch."""
    return PhasePower(-Fraction(rs.dual_coxeter) * Fraction(x) / u)


@dataclass
class ModularMatrices:
    flavor: str
    rs: RootSystem = field(repr=False)
    u: int
    index: list[AdmissibleClass] = field(repr=False)
    S: np.ndarray = field(repr=False)
    T: np.ndarray = field(repr=False)
    # exact phase data, where available
    S_phase: list[list[PhasePower]] = field(repr=False, default_factory=list)
    T_phase: list[PhasePower] = field(repr=False, default_factory=list)
    S_scalar: float = 1.0
    T_lift: np.ndarray | None = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def class_ids(self) -> list[int]:
        return [c.class_id for c in self.index]


def sine_heights(rs: RootSystem, over: str = "roots") -> list[Fraction]:
    """The values ``(alpha, rho_bar)`` entering the sine product.

    ``over="roots"`` transports the positive roots to the coweight space by
    the form, giving ``sum k_i / d_i``; ``over="coroots"`` pairs the positive
    coroots with ``rho_bar``.  They coincide for simply laced types.
    """
    if over == "roots":
        return [sum((Fraction(k, d) for k, d in zip(r, rs.d)), Fraction(0)) for r in rs.positive_roots]
    if over == "coroots":
        return [Fraction(rs.height(c)) for c in rs.positive_coroots]
    raise ValueError(over)


def sine_product(rs: RootSystem, u: int, over: str = "roots") -> float:
    hv = rs.dual_coxeter
    out = 1.0
    for x in sine_heights(rs, over):
        out *= 2 * sin(pi * u * float(x) / hv)
    return out


def lattice_index(rs: RootSystem, u: int, over: str = "roots") -> int:
    """Order of the lattice quotient in the normalisation of ``S``.

    For ``over="roots"`` this is ``|P / u h Q^vee|`` with ``Q^vee`` the coroot
    lattice transported into the weight space, which is ``prod d_i`` times
    ``|P^vee / u h Q^vee| = e (u h)^l``.
    """
    index = (u * rs.dual_coxeter) ** rs.rank * rs.e
    if over == "roots":
        index *= prod(rs.d)
    return index


def _kw_normalisation(rs: RootSystem, u: int, over: str = "roots") -> float:
    return sine_product(rs, u, over) / sqrt(lattice_index(rs, u, over))


def _reps(classes: Sequence[AdmissibleClass], reps: Sequence[PiElement] | None) -> list[PiElement]:
    if reps is None:
        return [c.rep for c in classes]
    if len(reps) != len(classes):
        raise ValueError("one representative per class is required")
    return list(reps)


def kw_matrices(rs: RootSystem, u: int, classes: Sequence[AdmissibleClass] | None = None,
                reps: Sequence[PiElement] | None = None, sines_over: str = "roots") -> ModularMatrices:
    """Kac-Wakimoto ``S``, ``T`` on the classes (optionally on other representatives).

    ``sines_over="coroots"`` gives the variant whose sine product vanishes for
    B and G types (kept for diagnostics).
    """
    lv = validate_level(rs, u)
    if classes is None:
        classes = enumerate_admissible(rs, u)
    ps = _reps(classes, reps)
    hv = rs.dual_coxeter
    rho = rs.rho_omega
    scalar = _kw_normalisation(rs, u, sines_over)
    n = len(ps)
    signs = [p.u_b.sign for p in ps]
    b_rho = [rs.form_omega(p.b, rho) for p in ps]
    phases = [[PhasePower(-(Fraction(hv, u) * rs.form_omega(ps[i].b, ps[j].b) + b_rho[i] + b_rho[j]))
               for j in range(n)] for i in range(n)]
    S = np.array([[scalar * signs[i] * signs[j] * phases[i][j].value for j in range(n)]
                  for i in range(n)], dtype=complex)
    t_phase = []
    t_lift = []
    rho2 = rs.rho_norm2
    for p in ps:
        x = p.u_b.inverse().act(rho)
        x = tuple(a + Fraction(hv, u) * b for a, b in zip(x, p.b))
        x2 = rs.form_omega(x, x)
        t_phase.append(PhasePower(Fraction(u, 2 * hv) * (x2 - rho2 / (2 * u))))
        s_lam = x2 * u / (2 * hv) - rho2 / (2 * hv)
        assert s_lam == _anomaly_of(rs, lv, p)
        t_lift.append(PhasePower(s_lam).value)
    T = np.diag([t.value for t in t_phase])
    return ModularMatrices("KW", rs, u, list(classes), S, T, phases, t_phase, scalar,
                           np.diag(t_lift))


def _anomaly_of(rs: RootSystem, lv, p: PiElement) -> Fraction:
    from .admissible import realize_weight
    return realize_weight(p, lv).anomaly


def daha_specialized_matrices(rs: RootSystem, u: int,
                              classes: Sequence[AdmissibleClass] | None = None,
                              reps: Sequence[PiElement] | None = None) -> ModularMatrices:
    """``S_{b,b'} = zeta^{(b,b')}`` and ``T_b = q^{-|b - kappa u_b^{-1} rho|^2 / 2}``."""
    validate_level(rs, u)
    if classes is None:
        classes = enumerate_admissible(rs, u)
    ps = _reps(classes, reps)
    n = len(ps)
    kappa = Fraction(-u, rs.dual_coxeter)
    rho = rs.rho_omega
    phases = [[q_power(rs, u, rs.form_omega(ps[i].b, ps[j].b)) for j in range(n)] for i in range(n)]
    t_phase = []
    for p in ps:
        y = p.u_b.inverse().act(rho)
        v = tuple(b - kappa * a for a, b in zip(y, p.b))
        t_phase.append(q_power(rs, u, -rs.form_omega(v, v) / 2))
        # the restricted Gaussian is q^{|b - u_b^{-1} rho_kappa|^2 / 2}; T is its inverse
        gauss = q_power(rs, u, rs.form_omega(v, v) / 2)
        assert (gauss * t_phase[-1]).is_one()
    S = np.array([[phases[i][j].value for j in range(n)] for i in range(n)], dtype=complex)
    T = np.diag([t.value for t in t_phase])
    return ModularMatrices("DAHA", rs, u, list(classes), S, T, phases, t_phase, 1.0)


def mu_bullet_at_specialization(p: PiElement, rs: RootSystem, u: int) -> complex:
    """Product over ``Phi^vee(pi_b)`` of
    ``(t^{-1/2} - q_a^n t^{1/2} X) / (t^{1/2} - q_a^n t^{-1/2} X)``
    with ``q_a = q^{(a,a)/2}``, ``t_a = q_a^kappa``, ``X = q^{(a, -kappa rho)}``.
    """
    validate_level(rs, u)
    kappa = Fraction(-u, rs.dual_coxeter)
    value = complex(1.0)
    for beta in sorted(inversion_set(p.element)):
        d = rs.half_norm(beta.finite)
        qn = q_power(rs, u, d * beta.n).value
        t_half = q_power(rs, u, d * kappa / 2)
        t_mhalf = q_power(rs, u, -d * kappa / 2)
        x = q_power(rs, u, -kappa * rs.height(beta.finite))
        den_exact = t_half / (t_mhalf * x)
        # denominator t^{1/2} - q^n t^{-1/2} X vanishes iff q_a^n equals t^{1/2} / (t^{-1/2} X)
        if (q_power(rs, u, d * beta.n) / den_exact).is_one():
            raise MuBulletError(beta, f"mu_bullet denominator vanishes at {beta}")
        num = t_mhalf.value - qn * t_half.value * x.value
        den = t_half.value - qn * t_mhalf.value * x.value
        value *= num / den
    return value


def daha_s_unsimplified(rs: RootSystem, u: int, p: PiElement, p2: PiElement) -> complex:
    """``zeta^{-(rho_kappa, b_-) + (b'_sharp, b)} mu(b')`` before simplification."""
    kappa = Fraction(-u, rs.dual_coxeter)
    rho = rs.rho_omega
    rho_k = tuple(kappa * r for r in rho)
    b_sharp = tuple(b - kappa * a for a, b in zip(p2.u_b.inverse().act(rho), p2.b))
    expo = -rs.form_omega(rho_k, p.b_minus) + rs.form_omega(b_sharp, p.b)
    return q_power(rs, u, expo).value * mu_bullet_at_specialization(p2, rs, u)


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass
class ComparisonReport:
    ratio_constant: complex
    max_deviation: float
    abs_a2_times_u_l: float
    abs_a2_over_u_l: float
    literal_max_deviation: float
    literal_sign_table: list[tuple[int, int, int]]
    relation_residuals: dict[str, float] = field(default_factory=dict)
    permutation: list[int] | None = None

    def as_dict(self) -> dict:
        return {
            "ratio_constant": {"re": self.ratio_constant.real, "im": self.ratio_constant.imag},
            "max_deviation": self.max_deviation,
            "abs_a2_times_u_l": self.abs_a2_times_u_l,
            "abs_a2_over_u_l": self.abs_a2_over_u_l,
            "literal_max_deviation": self.literal_max_deviation,
            "literal_sign_flips": len(self.literal_sign_table),
            **self.relation_residuals,
        }


def _f_diag(m: ModularMatrices) -> np.ndarray:
    """``D_b = eps(u_b) exp(-2 pi i (b, rho))`` (real, since ``(b, 2 rho)`` is an integer)."""
    rs = m.rs
    out = []
    for c in m.index:
        ph = PhasePower(-rs.form_omega(c.rep.b, rs.rho_omega))
        assert (ph ** 2).is_one()
        out.append(c.rep.u_b.sign * ph.value.real)
    return np.array(out)


def intertwiner_comparison(kw: ModularMatrices, daha: ModularMatrices) -> ComparisonReport:
    if kw.class_ids != daha.class_ids:
        raise ValueError("matrices are indexed differently")
    u, l = kw.u, kw.rs.rank
    D = _f_diag(kw)
    R = kw.S / (np.outer(D, D) * daha.S)
    a = complex(np.mean(R))
    dev = _max_abs(R - a)
    eps = np.array([c.rep.u_b.sign for c in kw.index], dtype=float)
    R_lit = kw.S / (np.outer(eps, eps) * daha.S)
    lit_dev = _max_abs(R_lit - a)
    flips = [(kw.index[i].class_id, kw.index[j].class_id, -1)
             for i in range(kw.size) for j in range(kw.size)
             if abs(R_lit[i, j] + a) < 1e-9 * max(1.0, abs(a))]
    return ComparisonReport(a, dev, abs(a) ** 2 * u ** l, abs(a) ** 2 / u ** l, lit_dev, flips)


def sl2z_residuals(S: np.ndarray, T: np.ndarray) -> dict[str, float]:
    """``max|(ST)^3 - S^2|`` and ``max|S^4 - I|``."""
    ST = S @ T
    S2 = S @ S
    return {
        "st3_minus_s2": _max_abs(ST @ ST @ ST - S2),
        "s4_minus_id": _max_abs(S2 @ S2 - np.eye(len(S))),
    }


def daha_square_permutation(m: ModularMatrices) -> tuple[bool, list[int]]:
    """Whether ``(u^{-l/2} S)^2`` is a permutation matrix, and the permutation."""
    P = (m.S @ m.S) / m.u ** m.rs.rank
    perm = []
    for i in range(len(P)):
        j = int(np.argmax(np.abs(P[i])))
        perm.append(j)
    target = np.zeros_like(P)
    target[np.arange(len(P)), perm] = 1
    ok = _max_abs(P - target) < 1e-8 and sorted(perm) == list(range(len(P)))
    return ok, perm


def class_lookup(classes: Sequence[AdmissibleClass], u: int) -> dict[tuple[int, ...], int]:
    """Position of each class keyed by ``b mod u P^vee``."""
    out = {}
    for pos, c in enumerate(classes):
        key = tuple(x % u for x in c.rep.b)
        if key in out:
            raise AssertionError(f"two classes share the residue {key} mod u P^vee")
        out[key] = pos
    if len(out) != u ** (len(classes[0].rep.b) if classes else 0):
        raise AssertionError("classes do not cover P^vee / u P^vee")
    return out


def weyl_signed_permutation(m: ModularMatrices, w, signed: bool) -> np.ndarray:
    """Matrix of ``chi_b -> chi_{w b}`` (``signed``: conjugated by ``D`` for the KW side)."""
    u = m.u
    look = class_lookup(m.index, u)
    n = m.size
    P = np.zeros((n, n))
    D = _f_diag(m) if signed else np.ones(n)
    for i, c in enumerate(m.index):
        wb = w.act(c.rep.b)
        j = look[tuple(x % u for x in wb)]
        P[j, i] = D[j] * D[i]
    return P


@dataclass
class EfReport:
    rank: int
    expected_rank: int
    commute_S: float
    commute_T: float
    commute_T_lift: float
    restricted_residuals: dict[str, float]
    basis_class_ids: list[int]
    S_f: np.ndarray = field(repr=False)
    T_f: np.ndarray = field(repr=False)


def ef_projector_and_restriction(rs: RootSystem, u: int, levi: LeviDatum,
                                 m: ModularMatrices) -> EfReport:
    """Anti-symmetriser ``e_f = sum eps(w) w`` over ``W_f`` and the restriction to its image.

    On the DAHA flavour ``w`` permutes classes through ``P^vee / u P^vee``; on
    the KW flavour the same permutation is conjugated by ``D``.
    """
    if levi.order > BRUTE_FORCE_GATE:
        raise GateError(f"|W_f| = {levi.order} exceeds the brute-force gate")
    signed = m.flavor == "KW"
    n = m.size
    E = np.zeros((n, n))
    for w in levi.elements():
        E += w.sign * weyl_signed_permutation(m, w, signed)
    T_main = m.T_lift if (signed and m.T_lift is not None) else m.T
    comm_S = _max_abs(m.S @ E - E @ m.S)
    comm_T = _max_abs(m.T @ E - E @ m.T)
    comm_TL = _max_abs(T_main @ E - E @ T_main)
    rank = int(np.linalg.matrix_rank(E, tol=1e-8))
    expected = count_closed_form(rs, u, levi)
    if rank != expected:
        raise AssertionError(f"rank(e_f) = {rank} but the closed-form count is {expected}")
    # basis e_f chi_b over one class per nonzero column, orbits have disjoint support
    cols, ids, seen = [], [], set()
    for i in range(n):
        v = E[:, i]
        if _max_abs(v) < 1e-9:
            continue
        support = tuple(np.nonzero(np.abs(v) > 1e-9)[0])
        if support in seen:
            continue
        seen.add(support)
        cols.append(v / np.linalg.norm(v))
        ids.append(m.index[i].class_id)
    B = np.array(cols).T if cols else np.zeros((n, 0))
    S_f = B.conj().T @ m.S @ B
    T_f = B.conj().T @ T_main @ B
    res = sl2z_residuals(S_f, T_f) if len(cols) else {"st3_minus_s2": 0.0, "s4_minus_id": 0.0}
    return EfReport(rank, expected, comm_S, comm_T, comm_TL, res, ids, S_f, T_f)
