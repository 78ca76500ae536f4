"""Boundary principal admissible weights, affine Spaltenstein fixed points and modular data."""

from .admissible import (
    AdmissibleClass,
    AdmissibleWeight,
    LevelData,
    enumerate_admissible,
    realize_weight,
    validate_level,
)
from .affine_weyl import AffineWeylElement, PiElement, antidominant_decomposition
from .errors import GateError, LevelError, MuBulletError
from .modular import daha_specialized_matrices, kw_matrices
from .rootdata import CartanKind, RootSystem, build_root_system, levi_datum
from .spaltenstein import count_closed_form, enumerate_levi_admissible, s_u_quotient

__all__ = [
    "AdmissibleClass",
    "AdmissibleWeight",
    "AffineWeylElement",
    "CartanKind",
    "GateError",
    "LevelData",
    "LevelError",
    "MuBulletError",
    "PiElement",
    "RootSystem",
    "antidominant_decomposition",
    "build_root_system",
    "count_closed_form",
    "daha_specialized_matrices",
    "enumerate_admissible",
    "enumerate_levi_admissible",
    "kw_matrices",
    "levi_datum",
    "realize_weight",
    "s_u_quotient",
    "validate_level",
]
