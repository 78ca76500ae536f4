"""Levi-restricted admissible classes and the finite group ``S_u = P^vee / u Q^vee``.

For a standard Levi ``W_f`` the classes ``W_f \\ W_{u,f} / Omega_u`` are counted
by ``u^{l-j} prod(u - m_i) / |W_f|``; the brute-force side counts free
``W_f``-orbits on ``S_u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .admissible import (
    AdmissibleClass,
    PiUSet,
    enumerate_admissible,
    pi_u_set,
    validate_level,
)
from .affine_weyl import PiElement
from .errors import GateError
from .rootdata import (
    CartanKind,
    LeviDatum,
    RootSystem,
    WeylElement,
    build_root_system,
    levi_datum,
)

__all__ = [
    "BRUTE_FORCE_GATE",
    "SuQuotient",
    "TorsionClass",
    "OrbitReport",
    "s_u_quotient",
    "weyl_action_on_s_u",
    "fixed_point_count",
    "stabilizer_order",
    "free_orbit_count",
    "signed_fixed_point_sum",
    "is_levi_admissible",
    "enumerate_levi_admissible",
    "count_closed_form",
    "table1_fixture",
    "resolve_levi",
    "table1_row",
    "table1_scan",
]

#: Largest ``|W_f|`` for which orbits are enumerated element by element.
BRUTE_FORCE_GATE = 10**6


@dataclass(frozen=True)
class TorsionClass:
    """Element of ``S_u``; ``coords`` are Smith coordinates, ``lift`` lies in ``P^vee``."""

    coords: tuple[int, ...]
    lift: tuple[int, ...] = field(compare=False)


@dataclass(frozen=True, eq=False)
class SuQuotient:
    """``P^vee / u Q^vee`` through the Smith form ``U (u A) V = D``.

    ``u A`` has the coordinates of ``u alpha_i^vee`` in the ``varpi^vee`` basis as
    rows, so ``y -> (y V) mod diag(D)`` identifies the quotient with
    ``prod Z / D_ii``.
    """

    rs: RootSystem
    u: int
    V: np.ndarray = field(repr=False)
    V_inv: np.ndarray = field(repr=False)
    moduli: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def reduce(self, y: Sequence[int]) -> TorsionClass:
        z = np.asarray(y, dtype=np.int64) @ self.V
        coords = tuple(int(a) % m for a, m in zip(z, self.moduli))
        return TorsionClass(coords, self._lift(coords))

    def _lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in np.asarray(coords, dtype=np.int64) @ self.V_inv)

    def from_coords(self, coords: Sequence[int]) -> TorsionClass:
        coords = tuple(int(a) % m for a, m in zip(coords, self.moduli))
        return TorsionClass(coords, self._lift(coords))

    def elements(self) -> list[TorsionClass]:
        grid = np.indices(self.moduli).reshape(len(self.moduli), -1).T
        return [self.from_coords(row) for row in grid]

    @cached_property
    def all_lifts(self) -> np.ndarray:
        """Lifts of every element, one per row, ordered by Smith coordinates."""
        grid = np.indices(self.moduli).reshape(len(self.moduli), -1).T
        return grid @ self.V_inv

    def index_of(self, ys: np.ndarray) -> np.ndarray:
        """Row-wise flat index of the classes of the vectors in ``ys``."""
        z = (ys @ self.V) % np.array(self.moduli)
        return np.ravel_multi_index(z.T, self.moduli)


def s_u_quotient(rs: RootSystem, u: int) -> SuQuotient:
    if u < 1:
        raise ValueError("u must be positive")
    m = Matrix(u * rs.cartan.astype(object))
    D, U, V = smith_normal_decomp(m, domain=ZZ)
    assert U * m * V == D
    v = np.array(V.tolist(), dtype=np.int64)
    v_inv = np.array(V.inv().tolist(), dtype=np.int64)
    moduli = tuple(abs(int(D[i, i])) for i in range(rs.rank))
    q = SuQuotient(rs, u, v, v_inv, moduli)
    if q.order != rs.e * u ** rs.rank:
        raise AssertionError(f"|S_u| = {q.order} but e u^l = {rs.e * u ** rs.rank}")
    return q


def weyl_action_on_s_u(q: SuQuotient, w: WeylElement, x: TorsionClass) -> TorsionClass:
    return q.reduce(w.act(x.lift))


def fixed_point_count(q: SuQuotient, w: WeylElement) -> int:
    """``|S_u^w|`` by exhaustive count."""
    lifts = q.all_lifts
    return int(np.sum(q.index_of(lifts @ w.m.T) == np.arange(len(lifts))))


@dataclass(frozen=True)
class OrbitReport:
    orbit_size: int
    stabilizer_order: int
    free: bool
    members: tuple[TorsionClass, ...]
    stabilizer_sign_sum: int


def _gate(levi: LeviDatum) -> None:
    if levi.order > BRUTE_FORCE_GATE:
        raise GateError(f"|W_f| = {levi.order} exceeds the brute-force gate {BRUTE_FORCE_GATE}; "
                        "use count_closed_form instead")


def stabilizer_order(q: SuQuotient, x: TorsionClass, levi: LeviDatum) -> OrbitReport:
    _gate(levi)
    members: dict[tuple[int, ...], TorsionClass] = {}
    stab = 0
    sign_sum = 0
    for w in levi.elements():
        y = weyl_action_on_s_u(q, w, x)
        members.setdefault(y.coords, y)
        if y.coords == x.coords:
            stab += 1
            sign_sum += w.sign
    orbit = tuple(members[k] for k in sorted(members))
    assert len(orbit) * stab == levi.order
    return OrbitReport(len(orbit), stab, stab == 1, orbit, sign_sum)


def free_orbit_count(q: SuQuotient, levi: LeviDatum) -> int:
    """Number of free ``W_f``-orbits on ``S_u``, by direct stabiliser scan."""
    _gate(levi)
    lifts = q.all_lifts
    idx = np.arange(len(lifts))
    fixed_somewhere = np.zeros(len(lifts), dtype=bool)
    for w in levi.elements():
        if w.is_identity():
            continue
        fixed_somewhere |= q.index_of(lifts @ w.m.T) == idx
    free_points = int(np.sum(~fixed_somewhere))
    assert free_points % levi.order == 0
    return free_points // levi.order


def signed_fixed_point_sum(q: SuQuotient, levi: LeviDatum, law: bool = False) -> int:
    """``sum_w eps(w) |S_u^w|``; with ``law=True`` uses ``e u^{d(w)}`` instead of counting."""
    _gate(levi)
    rs = q.rs
    total = 0
    for w in levi.elements():
        n = rs.e * q.u ** w.fixed_space_dim() if law else fixed_point_count(q, w)
        total += w.sign * n
    return total


def _image_finite_coroots(p: PiElement, pu: PiUSet) -> list[tuple[int, ...]]:
    out = []
    for beta in pu.coroots:
        img = p.element.act(beta)
        if img.n == 0:
            out.append(img.finite)
    return out


def is_levi_admissible(p: PiElement, pu: PiUSet, levi: LeviDatum) -> bool:
    """``pi_b(Pi_u)`` avoids the finite coroots of the Levi."""
    coroots = levi.coroots
    return not any(c in coroots for c in _image_finite_coroots(p, pu))


def enumerate_levi_admissible(rs: RootSystem, u: int, levi: LeviDatum,
                              classes: list[AdmissibleClass] | None = None) -> list[AdmissibleClass]:
    """Classes of ``W_f \\ W_{u,f} / Omega_u``.

    Members are grouped under ``b -> w b`` (``w`` in ``W_f``) and ``Omega_u``;
    each group is represented by its smallest admissible class.
    """
    validate_level(rs, u)
    pu = pi_u_set(rs, u)
    if classes is None:
        classes = enumerate_admissible(rs, u)
    cls_of = {p.b: c.class_id for c in classes for p in c.orbit}
    good = [c for c in classes if is_levi_admissible(c.rep, pu, levi)]
    # every orbit member must agree with the representative
    for c in good:
        for p in c.orbit:
            if not is_levi_admissible(p, pu, levi):
                raise AssertionError(f"Levi admissibility is not constant on the class of {c.rep.b}")
    good_ids = {c.class_id for c in good}
    parent = {i: i for i in good_ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in good:
        for i in levi.subset:
            wb = rs.simple_reflection(i).act(c.rep.b)
            j = cls_of.get(wb)
            if j is None or j not in good_ids:
                raise AssertionError(f"s_{i} moved {c.rep.b} out of the Levi-admissible set")
            a, b = find(c.class_id), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in good_ids})
    by_id = {c.class_id: c for c in classes}
    return [by_id[r] for r in roots]


def count_closed_form(rs: RootSystem, u: int, levi: LeviDatum) -> int:
    """``u^{l-j} prod(u - m_i) / |W_f|``."""
    validate_level(rs, u)
    num = u ** (rs.rank - levi.j) * prod(u - m for m in levi.exponents)
    if num % levi.order:
        raise AssertionError(f"count {num}/{levi.order} is not an integer for {rs.kind}, u={u}, "
                             f"Levi {levi.subset}")
    return num // levi.order


# --- count-one table -----------------------------------------------------------

def table1_fixture(rs: RootSystem, name: str, u: int | None = None) -> tuple[int, ...]:
    """Named Levi subsets.

    ``principal`` (all nodes), ``zero`` (no nodes), ``A6`` for E7
    (nodes 1,3,4,5,6,7), and ``table1`` which, for classical types with
    ``u`` dividing the rank (A) or twice the rank (B, C, D), removes the nodes
    ``u, 2u, ...``.  The classical subsets are one standard choice realising
    the partitions of the table; the partitions themselves do not pin down a
    subset.
    """
    n = rs.rank
    key = name.strip()
    if key == "principal":
        return tuple(range(1, n + 1))
    if key in ("zero", "empty", "0"):
        return ()
    if key == "A6" and str(rs.kind) == "E7":
        return (1, 3, 4, 5, 6, 7)
    if key == "table1":
        if u is None:
            raise ValueError("fixture 'table1' needs u")
        fam = rs.kind.family
        if fam in "ABCD" and n % u == 0 and (fam == "A" or u % 2 == 1):
            return tuple(i for i in range(1, n + 1) if i % u)
        if fam == "E" and n == 7 and u == 7:
            return (1, 3, 4, 5, 6, 7)
        if u == rs.coxeter + 1:
            return tuple(range(1, n + 1))
        raise ValueError(f"no count-one fixture for {rs.kind} at u={u}")
    raise ValueError(f"unknown Levi fixture {name!r} for {rs.kind}")


def resolve_levi(rs: RootSystem, items: Iterable[str | int] | None, u: int | None = None) -> LeviDatum:
    """Levi from CLI-style tokens: node numbers or a single ``fixture:NAME``."""
    tokens = [] if items is None else [str(t) for t in items]
    if len(tokens) == 1 and tokens[0].startswith("fixture:"):
        return levi_datum(rs, table1_fixture(rs, tokens[0].split(":", 1)[1], u))
    nodes = []
    for t in tokens:
        for part in t.replace(",", " ").split():
            try:
                nodes.append(int(part))
            except ValueError:
                raise ValueError(f"bad Levi node {part!r}") from None
    return levi_datum(rs, nodes)


def table1_row(kind: CartanKind, u: int, components: Sequence[CartanKind]) -> str | None:
    """Name of the table row realised by ``(kind, u, Levi type)``, if any."""
    fam, n = kind.family, kind.rank
    comps = list(components)
    # the full diagram is the principal Levi (B2 and C2 share a classification)
    if len(comps) == 1 and comps[0].rank == n and u == build_root_system(kind).coxeter + 1:
        return "principal, u = h + 1"
    blocks_ok = all(c == CartanKind("A", u - 1) for c in comps) if u >= 2 else False
    if fam == "A" and blocks_ok and n == u * len(comps):
        return "sl_{ul+1}, [u^l, 1]"
    if fam in "BCD" and u % 2 == 1 and blocks_ok and n == u * len(comps):
        return {"B": "so_{ul+1}, [u^l, 1]", "C": "sp_{ul}, [u^l]", "D": "so_{ul}, [u^l]"}[fam]
    if str(kind) == "E7" and u == 7 and comps == [CartanKind("A", 6)]:
        return "e7, 7, A6"
    return None


def _kinds_up_to(max_rank: int) -> list[CartanKind]:
    out = []
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        out += [CartanKind(fam, n) for n in range(lo, max_rank + 1)]
    out += [CartanKind("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(CartanKind("F", 4))
    if max_rank >= 2:
        out.append(CartanKind("G", 2))
    return sorted(out, key=lambda k: (k.rank, k.family))


def table1_scan(max_rank: int, u_range: Iterable[int]) -> dict:
    """All ``(type, u, Levi)`` with closed-form count 1.

    Levis are grouped by component type (one representative subset each).
    Hits matching a table row are labelled; others are listed under ``extra``.
    """
    u_values = sorted(set(u_range))
    hits = []
    for kind in _kinds_up_to(max_rank):
        rs = build_root_system(kind)
        levis: dict[tuple, LeviDatum] = {}
        for j in range(rs.rank + 1):
            for subset in combinations(range(1, rs.rank + 1), j):
                lv = levi_datum(rs, subset)
                levis.setdefault(lv.components, lv)
        for u in u_values:
            if gcd(u, rs.dual_coxeter) != 1 or gcd(u, rs.lacing) != 1:
                continue
            for comps, lv in sorted(levis.items(), key=lambda kv: kv[1].subset):
                if count_closed_form(rs, u, lv) == 1:
                    hits.append({
                        "kind": str(kind),
                        "u": u,
                        "levi": lv.describe(),
                        "subset": list(lv.subset),
                        "row": table1_row(kind, u, lv.components),
                    })
    return {
        "max_rank": max_rank,
        "u_values": u_values,
        "hits": hits,
        "extra": [h for h in hits if h["row"] is None],
    }
