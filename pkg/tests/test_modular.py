import cmath
from fractions import Fraction
from math import pi, sqrt

import numpy as np
import pytest

from affine_admissible import levi_datum
from affine_admissible.admissible import validate_level
from affine_admissible.affine_weyl import antidominant_decomposition
from affine_admissible.errors import MuBulletError
from affine_admissible.modular import (
    PhasePower,
    daha_s_unsimplified,
    daha_square_permutation,
    ef_projector_and_restriction,
    intertwiner_comparison,
    kw_matrices,
    lattice_index,
    mu_bullet_at_specialization,
    q_power,
    sine_heights,
    sine_product,
    sl2z_residuals,
)

from conftest import classes_of, matrices_of, members_of, rs_of


def n_of(c):
    # A1 representatives are b = -n varpi
    return -c.rep.b[0]


def test_phase_power_arithmetic():
    a, b = PhasePower(Fraction(1, 3)), PhasePower(Fraction(5, 6))
    assert (a * b).exponent == Fraction(1, 6)
    assert (a / b).exponent == Fraction(1, 2)
    assert (a ** 3).is_one()
    assert (a * b).value == pytest.approx(cmath.exp(2j * pi / 6), abs=1e-15)
    for r in [Fraction(k, 17) for k in range(-20, 20)]:
        assert abs(abs(PhasePower(r).value) - 1) < 1e-15
    assert PhasePower(Fraction(1, 2)).value == -1


def test_q_power_branch():
    rs = rs_of("A1")
    assert q_power(rs, 3, 1).exponent == Fraction(1, 3)  # -2/3 mod 1


def test_kw_golden_a1():
    kw, _ = matrices_of("A1", 3)
    cls = kw.index
    assert sorted(n_of(c) for c in cls) == [0, 1, 2]
    for i, ci in enumerate(cls):
        for j, cj in enumerate(cls):
            n, m = n_of(ci), n_of(cj)
            expected = (-1) ** (n + m + 1) * cmath.exp(-2j * pi * n * m / 3) / sqrt(3)
            assert abs(kw.S[i, j] - expected) < 1e-12


def test_kw_hand_derivation_pieces_a1():
    rs = rs_of("A1")
    assert sine_product(rs, 3) == pytest.approx(-2.0, abs=1e-14)
    assert lattice_index(rs, 3) == 12
    assert sine_heights(rs) == [1]


def test_kw_t00_a1():
    kw, _ = matrices_of("A1", 3)
    i = next(i for i, c in enumerate(kw.index) if c.rep.b == (0,))
    assert kw.T_phase[i].exponent == Fraction(5, 16)
    assert abs(kw.T[i, i] - cmath.exp(5j * pi / 8)) < 1e-15


def test_kw_representative_independence():
    rs = rs_of("A1")
    cls = classes_of("A1", 3)
    base = kw_matrices(rs, 3, cls)
    # the other member of each Omega_u orbit
    alt = [next(p for p in c.orbit if p.b != c.rep.b) for c in cls]
    other = kw_matrices(rs, 3, cls, reps=alt)
    assert np.max(np.abs(base.S - other.S)) < 1e-12
    for kind, u in [("A2", 4), ("B2", 5), ("G2", 5)]:
        r = rs_of(kind)
        cl = classes_of(kind, u)
        alt = [c.orbit[-1] for c in cl]
        a = kw_matrices(r, u, cl).S
        b = kw_matrices(r, u, cl, reps=alt).S
        assert np.max(np.abs(a - b)) < 1e-12


def test_daha_a1():
    _, daha = matrices_of("A1", 3)
    for i, ci in enumerate(daha.index):
        for j, cj in enumerate(daha.index):
            n, m = n_of(ci), n_of(cj)
            assert abs(daha.S[i, j] - cmath.exp(-2j * pi * n * m / 3)) < 1e-12


@pytest.mark.parametrize("kind,u", [("A1", 5), ("A2", 4), ("B2", 5), ("G2", 7)])
def test_daha_basic(kind, u):
    kw, daha = matrices_of(kind, u)
    assert np.allclose(daha.S, daha.S.T, atol=1e-14)
    zero = next(i for i, c in enumerate(daha.index) if not any(c.rep.b))
    assert np.max(np.abs(daha.S[zero] - 1)) < 1e-14
    rs = rs_of(kind)
    phase = cmath.exp(1j * pi * float(rs.rho_norm2) / (2 * rs.dual_coxeter))
    assert np.max(np.abs(daha.T - phase * kw.T)) < 1e-12
    assert daha.size == kw.size == u ** rs.rank


def test_t_diagonal_matches_anomaly():
    for kind, u in [("A2", 5), ("B2", 7), ("G2", 5)]:
        kw, _ = matrices_of(kind, u)
        rs = rs_of(kind)
        shift = rs.rho_norm2 / (2 * rs.dual_coxeter)
        for i, c in enumerate(kw.index):
            # T_lift is exp(2 pi i s_lambda); T differs by exp(2 pi i |rho|^2 / (4 h^vee))
            expected = cmath.exp(2j * pi * float(c.weight.anomaly))
            assert abs(kw.T_lift[i, i] - expected) < 1e-12
            assert abs(kw.T[i, i] - expected * cmath.exp(2j * pi * float(shift) / 2)) < 1e-12


def test_mu_bullet():
    rs = rs_of("A1")
    ident = antidominant_decomposition(rs, (0,))
    assert mu_bullet_at_specialization(ident, rs, 3) == 1
    p = antidominant_decomposition(rs, (3,))
    assert abs(mu_bullet_at_specialization(p, rs, 3) - 1) < 1e-12
    a2 = rs_of("A2")
    mem = members_of("A2", 2)
    assert len(mem) == 12
    for q in mem:
        assert abs(mu_bullet_at_specialization(q, a2, 2) - 1) < 1e-10


def test_mu_bullet_guard_reports_coroot():
    err = MuBulletError(("x",), "boom")
    assert err.coroot == ("x",)


def test_unsimplified_daha_s():
    for kind, u in [("A1", 3), ("A2", 4), ("B2", 5)]:
        rs = rs_of(kind)
        _, daha = matrices_of(kind, u)
        for i, ci in enumerate(daha.index):
            for j, cj in enumerate(daha.index):
                val = daha_s_unsimplified(rs, u, ci.rep, cj.rep)
                assert abs(val - daha.S[i, j]) < 1e-10


def test_intertwiner_a1():
    kw, daha = matrices_of("A1", 3)
    rep = intertwiner_comparison(kw, daha)
    assert rep.max_deviation < 1e-12
    assert abs(abs(rep.ratio_constant) - 1 / sqrt(3)) < 1e-12
    assert abs(rep.abs_a2_times_u_l - 1) < 1e-12
    # literal variant: the entry b = -varpi, b' = -2 varpi flips sign
    cid = {c.rep.b: c.class_id for c in kw.index}
    assert (cid[(-1,)], cid[(-2,)], -1) in rep.literal_sign_table
    assert rep.literal_max_deviation > 1


def test_intertwiner_a2():
    kw, daha = matrices_of("A2", 5)
    rep = intertwiner_comparison(kw, daha)
    assert rep.max_deviation < 1e-9
    assert abs(rep.abs_a2_times_u_l - 1) < 1e-9


def test_sl2z_residual_code():
    eye = np.eye(4)
    res = sl2z_residuals(eye, eye)
    assert res["s4_minus_id"] == 0
    kw, _ = matrices_of("A1", 3)
    res = sl2z_residuals(kw.S, kw.T_lift)
    assert max(res.values()) <= 1e-10


def test_daha_square_permutation_a1():
    _, daha = matrices_of("A1", 3)
    ok, perm = daha_square_permutation(daha)
    assert ok
    n = [n_of(c) for c in daha.index]
    for i, j in enumerate(perm):
        assert n[j] == (-n[i]) % 3


def test_ef_examples():
    rs = rs_of("A1")
    kw, daha = matrices_of("A1", 3)
    rep = ef_projector_and_restriction(rs, 3, levi_datum(rs, [1]), kw)
    assert rep.rank == rep.expected_rank == 1
    assert rep.S_f.shape == (1, 1) and abs(abs(rep.S_f[0, 0]) - 1) < 1e-12
    rep = ef_projector_and_restriction(rs, 3, levi_datum(rs, []), kw)
    assert rep.rank == 3 and np.max(np.abs(rep.S_f - kw.S)) < 1e-14
    a2 = rs_of("A2")
    kw2, daha2 = matrices_of("A2", 5)
    for m in (kw2, daha2):
        rep = ef_projector_and_restriction(a2, 5, levi_datum(a2, [1]), m)
        assert rep.rank == 10
        assert max(rep.commute_S, rep.commute_T) < 1e-9
        if m.flavor == "KW":
            assert max(rep.restricted_residuals.values()) <= 1e-8


def test_level_validation_in_builders():
    from affine_admissible import LevelError

    with pytest.raises(LevelError):
        kw_matrices(rs_of("A2"), 3)
    validate_level(rs_of("A2"), 4)
