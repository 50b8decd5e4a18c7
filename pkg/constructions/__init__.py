"""
Constructions package.
Executable frame constructions with claimed, corrected and certified constants.
"""

from constructions.results import Comparison, ConstructionResult, Verdict, compare
from constructions.sums import dual_sum, orthogonal_sum, scalar_weighted_sum, weighted_operator_sum
from constructions.transforms import (
    k_sum_frame,
    precompose_adjoint,
    range_equality_characterization,
    recover_frame_check,
    tight_surjectivity_equivalence,
    transfer_frame,
)

__all__ = [
    "Comparison",
    "ConstructionResult",
    "Verdict",
    "compare",
    "dual_sum",
    "k_sum_frame",
    "orthogonal_sum",
    "precompose_adjoint",
    "range_equality_characterization",
    "recover_frame_check",
    "scalar_weighted_sum",
    "tight_surjectivity_equivalence",
    "transfer_frame",
    "weighted_operator_sum",
]
