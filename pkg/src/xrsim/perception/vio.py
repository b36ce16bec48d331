"""Stand-in visual-inertial odometry with configurable imperfections.

Emits the ground-truth pose corrupted by per-frame measurement noise and an
accumulating drift: a fixed-direction bias of `drift_rate` m/s on position
(with a small random-walk component) plus an optional fixed-rate yaw drift.
Compute latency is exposed for the scheduler to model; the pixels of the
camera frame are never inspected.
"""

from dataclasses import dataclass

import numpy as np

from ..runtime.clock import millis, to_seconds
from .quaternion import quat_from_rotvec, quat_from_yaw, quat_multiply, quat_normalize
from .types import Pose, PoseSample


@dataclass(frozen=True)
class VioConfig:
    latency_ms: float = 50.0
    pos_sigma: float = 0.0  # per-frame position measurement noise, meters
    rot_sigma_deg: float = 0.0  # per-frame orientation noise, degrees
    drift_rate: float = 0.0  # position drift magnitude growth, m/s
    walk_sigma: float = 0.0  # random-walk component of the drift, m/sqrt(s)
    yaw_drift_deg_s: float = 0.0
    seed: int = 0

    @property
    def latency_ns(self):
        return millis(self.latency_ms)


class VioProxy:
    """Stateful drift accumulator; one instance per session."""

    def __init__(self, cfg=VioConfig()):
        self.cfg = cfg
        self._rng = np.random.default_rng((cfg.seed, 0x710))
        direction = self._rng.normal(size=3)
        self._drift_dir = direction / np.linalg.norm(direction)
        self._drift = np.zeros(3)
        self._last_ts = None

    def process(self, frame, gt):
        """Pose measurement for a camera frame, given the true pose at frame.ts.

        The caller is responsible for delaying visibility by cfg.latency_ns;
        the returned sample carries the frame timestamp, not the publish time.
        """
        if frame.ts != gt.ts:
            raise ValueError(f"frame ts {frame.ts} != ground truth ts {gt.ts}")
        cfg = self.cfg
        dt = 0.0 if self._last_ts is None else to_seconds(frame.ts - self._last_ts)
        self._last_ts = frame.ts
        self._drift = (
            self._drift
            + cfg.drift_rate * dt * self._drift_dir
            + cfg.walk_sigma * np.sqrt(dt) * self._rng.normal(size=3)
        )

        position = gt.pose.position + self._drift
        orientation = gt.pose.orientation
        if cfg.yaw_drift_deg_s != 0.0:
            yaw_err = np.deg2rad(cfg.yaw_drift_deg_s) * to_seconds(frame.ts)
            orientation = quat_multiply(quat_from_yaw(yaw_err), orientation)
        if cfg.pos_sigma > 0.0:
            position = position + self._rng.normal(0.0, cfg.pos_sigma, 3)
        if cfg.rot_sigma_deg > 0.0:
            rotvec = self._rng.normal(0.0, np.deg2rad(cfg.rot_sigma_deg), 3)
            orientation = quat_multiply(quat_from_rotvec(rotvec), orientation)

        return PoseSample(
            pose=Pose(position, quat_normalize(orientation)),
            ts=frame.ts,
            source="vio",
            linear_velocity=gt.linear_velocity,
        )
