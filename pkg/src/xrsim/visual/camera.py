"""Pinhole camera model and the fixed body-to-camera mounting."""

from dataclasses import dataclass

import numpy as np

# Camera frame is +Z forward, +X right, +Y down; body frame is +X forward,
# +Y left, +Z up. Columns are the camera axes expressed in the body frame.
BODY_TO_CAMERA = np.array(
    [
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class CameraModel:
    """Intrinsics for a symmetric pinhole display/camera."""

    width: int
    height: int
    fov_deg: float
    fx: float
    fy: float
    cx: float
    cy: float

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError("focal lengths must be positive")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise ValueError("principal point outside image")

    @classmethod
    def from_fov(cls, width, height, fov_deg):
        """Build intrinsics from a horizontal field of view in degrees."""
        if not 0 < fov_deg < 180:
            raise ValueError("fov must be in (0, 180) degrees")
        fx = (width / 2.0) / np.tan(np.deg2rad(fov_deg) / 2.0)
        return cls(
            width=width,
            height=height,
            fov_deg=fov_deg,
            fx=fx,
            fy=fx,  # square pixels
            cx=(width - 1) / 2.0,
            cy=(height - 1) / 2.0,
        )

    @property
    def intrinsic_matrix(self):
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )

    @property
    def intrinsic_inverse(self):
        return np.array(
            [
                [1.0 / self.fx, 0.0, -self.cx / self.fx],
                [0.0, 1.0 / self.fy, -self.cy / self.fy],
                [0.0, 0.0, 1.0],
            ]
        )

    def pixel_rays(self):
        """Unit ray directions in the camera frame, shape (H, W, 3)."""
        u, v = np.meshgrid(np.arange(self.width), np.arange(self.height))
        d = np.stack(
            [(u - self.cx) / self.fx, (v - self.cy) / self.fy, np.ones_like(u, dtype=float)],
            axis=-1,
        )
        return d / np.linalg.norm(d, axis=-1, keepdims=True)
