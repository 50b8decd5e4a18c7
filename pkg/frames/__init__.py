"""
Frames package.
g-frame families over finite measure spaces and their K-frame bounds.
"""

from frames.bounds import (
    FrameBounds,
    FrameReport,
    bessel_bound,
    check_bessel,
    check_kg_frame,
    check_kg_frame_on,
    is_k_dual,
    mixed_frame_operator,
    optimal_lower_bound,
)
from frames.family import (
    GFrameFamily,
    MeasureSpace,
    analysis,
    analysis_operator,
    canonical_dual,
    check_same_shape,
    direct_sum_inner,
    frame_operator,
    sum_families,
    synthesis,
    synthesis_operator,
)

__all__ = [
    "FrameBounds",
    "FrameReport",
    "GFrameFamily",
    "MeasureSpace",
    "analysis",
    "analysis_operator",
    "bessel_bound",
    "canonical_dual",
    "check_bessel",
    "check_kg_frame",
    "check_kg_frame_on",
    "check_same_shape",
    "direct_sum_inner",
    "frame_operator",
    "is_k_dual",
    "mixed_frame_operator",
    "optimal_lower_bound",
    "sum_families",
    "synthesis",
    "synthesis_operator",
]
