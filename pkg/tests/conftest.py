from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
import pytest

from affine_admissible import build_root_system, enumerate_admissible
from affine_admissible.admissible import sigma_u_members
from affine_admissible.modular import daha_specialized_matrices, kw_matrices


@lru_cache(maxsize=None)
def rs_of(kind: str):
    return build_root_system(kind)


@lru_cache(maxsize=None)
def members_of(kind: str, u: int):
    return sigma_u_members(rs_of(kind), u)


@lru_cache(maxsize=None)
def classes_of(kind: str, u: int):
    return enumerate_admissible(rs_of(kind), u, members_of(kind, u))


@lru_cache(maxsize=None)
def matrices_of(kind: str, u: int):
    rs = rs_of(kind)
    cl = classes_of(kind, u)
    return kw_matrices(rs, u, cl), daha_specialized_matrices(rs, u, cl)


# --- independent oracles -----------------------------------------------------

def naive_weyl_group(cartan: np.ndarray) -> list[np.ndarray]:
    """Closure of the simple reflections as integer matrices on coroot coordinates."""
    n = cartan.shape[0]
    gens = []
    for i in range(n):
        m = np.eye(n, dtype=np.int64)
        # s_i(c) = c - <alpha_i, c> alpha_i^vee, <alpha_i, alpha_j^vee> = a_ji
        m[i, :] -= cartan[:, i]
        gens.append(m)
    seen = {np.eye(n, dtype=np.int64).tobytes(): np.eye(n, dtype=np.int64)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s @ g
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


def same_mod_uQ(cartan: np.ndarray, u: int, x, y) -> bool:
    """``x = y`` in ``P^vee / u Q^vee`` for fundamental-coweight coordinates.

    ``y_i = sum_j a_ji c_j`` converts coroot coordinates ``c``; the difference
    lies in ``u Q^vee`` iff its coroot coordinates are integers divisible by ``u``.
    """
    from sympy import Matrix

    diff = Matrix([xi - yi for xi, yi in zip(x, y)])
    c = Matrix(cartan.tolist()).T.solve(diff)
    return all(ci.is_integer and int(ci) % u == 0 for ci in c)


def box(rank: int, radius: int):
    return product(range(-radius, radius + 1), repeat=rank)


def frac(x) -> Fraction:
    return Fraction(x)


@pytest.fixture
def a1():
    return rs_of("A1")
