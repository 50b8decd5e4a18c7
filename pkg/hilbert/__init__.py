"""
Hilbert module package.
The standard module A^n and its adjointable operators.
"""

from hilbert.module import ModuleVec, inner, module_norm
from hilbert.operators import (
    AdjOp,
    Submodule,
    adjoint,
    apply,
    compose,
    douglas_solve,
    is_surjective,
    majorizes,
    min_gain,
    pinv,
    range_inclusion,
    rank,
    restricted_min_gain,
)

__all__ = [
    "AdjOp",
    "ModuleVec",
    "Submodule",
    "adjoint",
    "apply",
    "compose",
    "douglas_solve",
    "inner",
    "is_surjective",
    "majorizes",
    "min_gain",
    "module_norm",
    "pinv",
    "range_inclusion",
    "rank",
    "restricted_min_gain",
]
