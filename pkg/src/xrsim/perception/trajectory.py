"""Analytic head trajectory with closed-form derivatives and an IMU model.

The path is a horizontal circle with an oscillating yaw on top of the orbit
angle, so position, velocity, acceleration, orientation, and angular velocity
all have closed forms. That gives every downstream estimate an exact ground
truth to compare against.
"""

from dataclasses import dataclass, field

import numpy as np

from ..runtime.clock import to_seconds
from .quaternion import quat_from_yaw
from .quaternion import quat_to_rot
from .types import CameraFrame, ImuSample, Pose, PoseSample

GRAVITY = (0.0, 0.0, -9.81)


@dataclass(frozen=True)
class TrajectorySpec:
    """Circle of `radius_m` traversed at `angular_rate_rad_s`, with yaw
    oscillation yaw(t) = orbit_angle + yaw_amplitude*sin(2*pi*f*t)."""

    radius_m: float = 1.0
    angular_rate_rad_s: float = 0.5
    height_m: float = 1.5
    yaw_amplitude_rad: float = 0.3
    yaw_frequency_hz: float = 0.5
    gravity: tuple = GRAVITY
    seed: int = 0

    def position(self, t):
        w = self.angular_rate_rad_s
        return np.array(
            [self.radius_m * np.cos(w * t), self.radius_m * np.sin(w * t), self.height_m]
        )

    def velocity(self, t):
        w = self.angular_rate_rad_s
        return np.array(
            [-self.radius_m * w * np.sin(w * t), self.radius_m * w * np.cos(w * t), 0.0]
        )

    def acceleration(self, t):
        w = self.angular_rate_rad_s
        return np.array(
            [
                -self.radius_m * w * w * np.cos(w * t),
                -self.radius_m * w * w * np.sin(w * t),
                0.0,
            ]
        )

    def yaw(self, t):
        return self.angular_rate_rad_s * t + self.yaw_amplitude_rad * np.sin(
            2.0 * np.pi * self.yaw_frequency_hz * t
        )

    def yaw_rate(self, t):
        two_pi_f = 2.0 * np.pi * self.yaw_frequency_hz
        return self.angular_rate_rad_s + self.yaw_amplitude_rad * two_pi_f * np.cos(
            two_pi_f * t
        )


def ground_truth_pose(spec, ts_ns):
    """Exact pose and velocity of the trajectory at a timestamp."""
    t = to_seconds(ts_ns)
    pose = Pose(spec.position(t), quat_from_yaw(spec.yaw(t)))
    return PoseSample(
        pose=pose, ts=ts_ns, source="ground_truth", linear_velocity=spec.velocity(t)
    )


def sample_imu(spec, ts_ns, gyro_sigma=0.0, accel_sigma=0.0, rng=None):
    """Body-frame IMU measurement at a timestamp, optionally noisy.

    The gyro reads the body angular velocity; the accelerometer reads the
    specific force R(q)^T (a_world - g), so at rest it reports -R(q)^T g.
    Without an explicit rng, noise is a deterministic function of
    (spec.seed, ts_ns) so replays reproduce the same stream.
    """
    t = to_seconds(ts_ns)
    # Rotation is about world +Z only, so body and world z-rates coincide.
    omega_body = np.array([0.0, 0.0, spec.yaw_rate(t)])
    R = quat_to_rot(quat_from_yaw(spec.yaw(t)))
    accel_body = R.T @ (spec.acceleration(t) - np.asarray(spec.gravity, dtype=float))
    if gyro_sigma > 0.0 or accel_sigma > 0.0:
        if rng is None:
            rng = np.random.default_rng((spec.seed, ts_ns))
        omega_body = omega_body + rng.normal(0.0, gyro_sigma, 3)
        accel_body = accel_body + rng.normal(0.0, accel_sigma, 3)
    return ImuSample(angular_velocity=omega_body, linear_acceleration=accel_body, ts=ts_ns)


def make_camera_frame(spec, ts_ns, width=64, height=48, baseline_px=4):
    """Procedural stereo frame: checkerboard plus seed-hashed noise.

    Pixels exist so image-consuming stages have content; the pose estimation
    path never inspects them.
    """
    rng = np.random.default_rng((spec.seed, ts_ns, 0xCA3))
    yy, xx = np.mgrid[0:height, 0:width]
    checker = (((xx // 8) + (yy // 8)) % 2) * 128 + 64
    noise = rng.integers(0, 32, size=(height, width))
    left = np.clip(checker + noise, 0, 255).astype(np.uint8)
    right = np.roll(left, -baseline_px, axis=1)
    return CameraFrame(left=left, right=right, ts=ts_ns)
