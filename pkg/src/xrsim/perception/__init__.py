"""Synthetic sensors, analytic ground truth, VIO proxy, RK4 integrator."""

from .integrator import rk4_integrate
from .quaternion import (
    quat_angle_between,
    quat_conjugate,
    quat_from_axis_angle,
    quat_from_rotvec,
    quat_from_yaw,
    quat_identity,
    quat_multiply,
    quat_normalize,
    quat_rotate,
    quat_to_rot,
    rot_to_quat,
    yaw_of,
)
from .trajectory import (
    GRAVITY,
    TrajectorySpec,
    ground_truth_pose,
    make_camera_frame,
    sample_imu,
)
from .trajectory_io import TRAJECTORY_FIELDS, read_trajectory, write_trajectory
from .types import CameraFrame, ImuSample, Pose, PoseSample
from .vio import VioConfig, VioProxy

__all__ = [
    "rk4_integrate",
    "quat_angle_between",
    "quat_conjugate",
    "quat_from_axis_angle",
    "quat_from_rotvec",
    "quat_from_yaw",
    "quat_identity",
    "quat_multiply",
    "quat_normalize",
    "quat_rotate",
    "quat_to_rot",
    "rot_to_quat",
    "yaw_of",
    "GRAVITY",
    "TrajectorySpec",
    "ground_truth_pose",
    "make_camera_frame",
    "sample_imu",
    "TRAJECTORY_FIELDS",
    "read_trajectory",
    "write_trajectory",
    "CameraFrame",
    "ImuSample",
    "Pose",
    "PoseSample",
    "VioConfig",
    "VioProxy",
]
