"""QoE telemetry: latency decomposition, frame statistics, image and pose quality."""

from .mtp import (
    AR_LATENCY_BUDGET_MS,
    VR_LATENCY_BUDGET_MS,
    MtpRecord,
    record_mtp,
)
from .frame_stats import ComponentStats, cpu_attribution, frame_stats
from .ssim import rgb_to_luma, ssim
from .flip import (
    DEFAULT_PIXELS_PER_DEGREE,
    flip,
    flip_error_map,
    one_minus_flip,
)
from .trajectory_error import (
    DEFAULT_MAX_GAP_NS,
    AlignmentResult,
    AteResult,
    RpeResult,
    align_trajectories,
    apply_alignment,
    associate,
    ate,
    rpe,
    umeyama_alignment,
)
from .report import QualityReport

__all__ = [
    "AR_LATENCY_BUDGET_MS",
    "VR_LATENCY_BUDGET_MS",
    "MtpRecord",
    "record_mtp",
    "ComponentStats",
    "cpu_attribution",
    "frame_stats",
    "rgb_to_luma",
    "ssim",
    "DEFAULT_PIXELS_PER_DEGREE",
    "flip",
    "flip_error_map",
    "one_minus_flip",
    "DEFAULT_MAX_GAP_NS",
    "AlignmentResult",
    "AteResult",
    "RpeResult",
    "align_trajectories",
    "apply_alignment",
    "associate",
    "ate",
    "rpe",
    "umeyama_alignment",
    "QualityReport",
]
