"""Pose and sensor payload types shared across the pipelines."""

from dataclasses import dataclass, field

import numpy as np

from .quaternion import quat_normalize

POSE_SOURCES = ("vio", "integrator", "ground_truth")


@dataclass(frozen=True)
class Pose:
    """Body position (world frame, meters) and orientation (body->world)."""

    position: np.ndarray
    orientation: np.ndarray  # unit quaternion [w,x,y,z]

    def __post_init__(self):
        p = np.asarray(self.position, dtype=float).reshape(3)
        q = np.asarray(self.orientation, dtype=float).reshape(4)
        norm = np.linalg.norm(q)
        if not 0.999 < norm < 1.001:
            raise ValueError(f"orientation norm {norm} too far from 1")
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "orientation", quat_normalize(q))


@dataclass(frozen=True)
class ImuSample:
    """Body-frame gyro (rad/s) and accelerometer specific force (m/s^2)."""

    angular_velocity: np.ndarray
    linear_acceleration: np.ndarray
    ts: int

    def __post_init__(self):
        object.__setattr__(
            self, "angular_velocity", np.asarray(self.angular_velocity, dtype=float).reshape(3)
        )
        object.__setattr__(
            self,
            "linear_acceleration",
            np.asarray(self.linear_acceleration, dtype=float).reshape(3),
        )


@dataclass(frozen=True)
class CameraFrame:
    """Stereo grayscale pair; ts is aligned to an IMU sample timestamp."""

    left: np.ndarray
    right: np.ndarray
    ts: int

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise ValueError("stereo pair dimensions differ")
        if self.left.dtype != np.uint8 or self.right.dtype != np.uint8:
            raise ValueError("camera frames are 8-bit grayscale")


@dataclass(frozen=True)
class PoseSample:
    """A pose estimate or ground truth at an instant, with linear velocity."""

    pose: Pose
    ts: int
    source: str
    linear_velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        if self.source not in POSE_SOURCES:
            raise ValueError(f"unknown pose source {self.source!r}")
        object.__setattr__(
            self, "linear_velocity", np.asarray(self.linear_velocity, dtype=float).reshape(3)
        )
