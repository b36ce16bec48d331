"""Rendering stand-in, pose prediction, reprojection, distortion, holograms."""

from .camera import BODY_TO_CAMERA, CameraModel
from .distortion import (
    DEFAULT_RADIAL_COEFFS,
    DistortionMesh,
    apply_distortion,
    build_distortion_mesh,
)
from .hologram import (
    MIN_PLANE_SPACING_DIOPTERS,
    HologramProblem,
    HologramResult,
    gsw_hologram,
    uniformity_of,
)
from .image_io import (
    phase_to_u16,
    read_pgm16,
    read_ppm,
    u16_to_phase,
    write_pgm16,
    write_ppm,
)
from .prediction import HISTORY_WINDOW, PredictionResult, predict_pose
from .render import RenderedFrame, render_app
from .reprojection import reproject, rotation_homography
from .warp import bilinear_sample

__all__ = [
    "BODY_TO_CAMERA",
    "CameraModel",
    "DEFAULT_RADIAL_COEFFS",
    "DistortionMesh",
    "apply_distortion",
    "build_distortion_mesh",
    "MIN_PLANE_SPACING_DIOPTERS",
    "HologramProblem",
    "HologramResult",
    "gsw_hologram",
    "uniformity_of",
    "phase_to_u16",
    "read_pgm16",
    "read_ppm",
    "u16_to_phase",
    "write_pgm16",
    "write_ppm",
    "HISTORY_WINDOW",
    "PredictionResult",
    "predict_pose",
    "RenderedFrame",
    "render_app",
    "reproject",
    "rotation_homography",
    "bilinear_sample",
]
