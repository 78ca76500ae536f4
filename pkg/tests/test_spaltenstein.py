from itertools import combinations
from math import prod

import numpy as np
import pytest

from affine_admissible import count_closed_form, enumerate_levi_admissible, levi_datum, s_u_quotient
from affine_admissible.admissible import pi_u_set
from affine_admissible.rootdata import weyl_group_elements
from affine_admissible.spaltenstein import (
    fixed_point_count,
    free_orbit_count,
    is_levi_admissible,
    resolve_levi,
    signed_fixed_point_sum,
    stabilizer_order,
    table1_fixture,
    table1_scan,
    weyl_action_on_s_u,
)

from conftest import classes_of, rs_of, same_mod_uQ


def test_s_u_orders():
    q = s_u_quotient(rs_of("A1"), 3)
    assert q.order == 6 and q.moduli[-1] == 6
    assert s_u_quotient(rs_of("A2"), 2).order == 12
    for kind in ["A1", "A3", "B3", "D4", "G2", "E6"]:
        rs = rs_of(kind)
        assert s_u_quotient(rs, 1).order == rs.e


@pytest.mark.parametrize("kind,u", [("A2", 4), ("B2", 5), ("D4", 3)])
def test_reduce_agrees_with_coroot_coordinate_test(kind, u):
    rs = rs_of(kind)
    q = s_u_quotient(rs, u)
    rng = np.random.default_rng(0)
    pts = [tuple(int(v) for v in rng.integers(-3 * u, 3 * u, rs.rank)) for _ in range(40)]
    for x in pts:
        for y in pts[:10]:
            assert (q.reduce(x) == q.reduce(y)) == same_mod_uQ(rs.cartan, u, x, y)


def test_a1_reflection_on_z6():
    rs = rs_of("A1")
    q = s_u_quotient(rs, 3)
    s = rs.simple_reflection(1)
    for y in range(6):
        x = q.reduce((y,))
        assert weyl_action_on_s_u(q, s, x) == q.reduce((-y,))
    fixed = [y for y in range(6) if q.reduce((-y,)) == q.reduce((y,))]
    assert fixed == [0, 3]
    assert fixed_point_count(q, s) == 2 == rs.e * 3 ** s.fixed_space_dim()


def test_a2_fixed_points():
    rs = rs_of("A2")
    q = s_u_quotient(rs, 2)
    assert fixed_point_count(q, rs.simple_reflection(1)) == 6


def test_identity_fixes_everything():
    rs = rs_of("B2")
    q = s_u_quotient(rs, 5)
    assert fixed_point_count(q, weyl_group_elements(rs)[0]) == q.order


def test_stabilizer_examples():
    rs = rs_of("A1")
    q = s_u_quotient(rs, 3)
    lv = levi_datum(rs, [1])
    assert stabilizer_order(q, q.reduce((0,)), lv).stabilizer_order == 2
    rep = stabilizer_order(q, q.reduce((1,)), lv)
    assert rep.free and rep.orbit_size == 2
    assert set(rep.members) == {q.reduce((1,)), q.reduce((5,))}
    assert stabilizer_order(q, q.reduce((3,)), lv).stabilizer_order == 2


def test_levi_admissible_examples():
    rs = rs_of("A1")
    pu = pi_u_set(rs, 3)
    lv = levi_datum(rs, [1])
    empty = levi_datum(rs, [])
    verdict = {c.rep.b: is_levi_admissible(c.rep, pu, lv) for c in classes_of("A1", 3)}
    assert verdict == {(0,): False, (-1,): True, (-2,): True}
    assert all(is_levi_admissible(c.rep, pu, empty) for c in classes_of("A1", 3))
    a2 = rs_of("A2")
    assert enumerate_levi_admissible(a2, 2, levi_datum(a2, [1, 2])) == []


def test_count_examples():
    a1, a2, e7 = rs_of("A1"), rs_of("A2"), rs_of("E7")
    assert count_closed_form(a1, 3, levi_datum(a1, [1])) == 1
    assert count_closed_form(a2, 5, levi_datum(a2, [1])) == 10
    assert count_closed_form(a2, 2, levi_datum(a2, [1, 2])) == 0
    assert count_closed_form(e7, 7, resolve_levi(e7, ["fixture:A6"])) == 1
    for kind, u in [("A3", 5), ("G2", 7), ("B3", 7)]:
        rs = rs_of(kind)
        assert count_closed_form(rs, u, levi_datum(rs, [])) == u ** rs.rank


def test_e7_fixture_is_an_a6_diagram():
    e7 = rs_of("E7")
    sub = table1_fixture(e7, "A6")
    lv = levi_datum(e7, sub)
    assert [str(c) for c in lv.components] == ["A6"]
    # a path: six nodes, five edges
    a = e7.cartan
    edges = sum(1 for i, j in combinations(sub, 2) if a[i - 1, j - 1] != 0)
    assert edges == 5


@pytest.mark.parametrize("kind,u", [("A2", 5), ("B2", 5), ("A3", 5), ("G2", 7), ("C3", 3)])
def test_count_enumeration_and_free_orbits_agree(kind, u):
    rs = rs_of(kind)
    q = s_u_quotient(rs, u)
    for j in range(rs.rank + 1):
        for sub in combinations(range(1, rs.rank + 1), j):
            lv = levi_datum(rs, sub)
            n = count_closed_form(rs, u, lv)
            assert free_orbit_count(q, lv) == rs.e * n
            assert len(enumerate_levi_admissible(rs, u, lv, classes_of(kind, u))) == n
            # Burnside-type identity behind the closed form
            assert signed_fixed_point_sum(q, lv) == rs.e * n * lv.order
            assert signed_fixed_point_sum(q, lv, law=True) == rs.e * n * lv.order


def test_closed_form_matches_formula_by_hand():
    rs = rs_of("B3")
    lv = levi_datum(rs, [2, 3])
    u = 7
    expected = u ** (3 - 2) * prod(u - m for m in lv.exponents) // lv.order
    assert count_closed_form(rs, u, lv) == expected


def test_table1_scan_examples():
    rep = table1_scan(7, range(2, 8))
    hits = {(h["kind"], h["u"], h["levi"]): h for h in rep["hits"]}
    assert ("E7", 7, "A6") in hits and hits["E7", 7, "A6"]["row"] is not None
    assert hits["A2", 4, "A2"]["row"].startswith("principal")
    assert ("A1", 5, "A1") not in hits
    assert count_closed_form(rs_of("A1"), 5, levi_datum(rs_of("A1"), [1])) == 2
    for kind in ["A1", "A2", "G2", "B2", "A3", "C3"]:
        rs = rs_of(kind)
        assert (kind, rs.coxeter + 1) in {(k, u) for k, u, _ in hits} or rs.coxeter + 1 > 7


def test_gate_refusal():
    from affine_admissible import GateError
    from affine_admissible.spaltenstein import BRUTE_FORCE_GATE

    e8 = rs_of("E8")
    lv = levi_datum(e8, range(1, 9))
    assert lv.order > BRUTE_FORCE_GATE
    with pytest.raises(GateError):
        free_orbit_count(s_u_quotient(e8, 7), lv)
