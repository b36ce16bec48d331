"""Pose extrapolation to the display time.

Position uses a constant-acceleration (quadratic) least-squares fit over the
recent history; orientation uses constant angular velocity plus the angular
acceleration implied by the two most recent orientation deltas.
"""

from dataclasses import dataclass

import numpy as np

from ..perception.quaternion import (
    quat_conjugate,
    quat_from_rotvec,
    quat_multiply,
    quat_normalize,
)
from ..perception.types import Pose
from ..runtime.clock import to_seconds

HISTORY_WINDOW = 5  # most recent samples considered by the fit


@dataclass(frozen=True)
class PredictionResult:
    pose: Pose
    fallback: bool  # True when history was too thin to extrapolate


def _rotvec_of(q_from, q_to):
    """Rotation vector (body frame) taking q_from to q_to."""
    dq = quat_multiply(quat_conjugate(q_from), q_to)
    if dq[0] < 0.0:
        dq = -dq
    vec = dq[1:]
    norm = np.linalg.norm(vec)
    if norm < 1e-15:
        return np.zeros(3)
    angle = 2.0 * np.arctan2(norm, dq[0])
    return vec / norm * angle


def predict_pose(history, display_ts_ns):
    """Extrapolate the newest pose in `history` to display_ts_ns.

    history is an ordered sequence of PoseSamples (oldest first). Fewer than
    3 distinct-timestamp samples falls back to the newest pose, flagged.
    """
    if not history:
        raise ValueError("empty pose history")
    samples = list(history)[-HISTORY_WINDOW:]
    newest = samples[-1]
    if display_ts_ns < newest.ts:
        raise ValueError("display time precedes newest sample")
    if len({s.ts for s in samples}) < 3:
        return PredictionResult(pose=newest.pose, fallback=True)

    # Quadratic fit of position against time relative to the newest sample.
    tau = np.array([to_seconds(s.ts - newest.ts) for s in samples])
    positions = np.stack([s.pose.position for s in samples])
    design = np.stack([np.ones_like(tau), tau, tau * tau], axis=1)
    coeffs, *_ = np.linalg.lstsq(design, positions, rcond=None)
    dt = to_seconds(display_ts_ns - newest.ts)
    position = coeffs[0] + coeffs[1] * dt + coeffs[2] * dt * dt

    # Angular velocity from the last two deltas; acceleration from their change.
    q1, q2, q3 = (s.pose.orientation for s in samples[-3:])
    t1, t2, t3 = (s.ts for s in samples[-3:])
    w12 = _rotvec_of(q1, q2) / to_seconds(t2 - t1)
    w23 = _rotvec_of(q2, q3) / to_seconds(t3 - t2)
    alpha = (w23 - w12) / to_seconds((t3 - t1) // 2) if t3 > t1 else np.zeros(3)
    # Interval averages sit at interval midpoints; advance to the newest
    # sample before extrapolating so acceleration is applied consistently.
    w_now = w23 + 0.5 * alpha * to_seconds(t3 - t2)
    theta = (w_now + 0.5 * alpha * dt) * dt
    orientation = quat_normalize(quat_multiply(q3, quat_from_rotvec(theta)))

    return PredictionResult(pose=Pose(position, orientation), fallback=False)
