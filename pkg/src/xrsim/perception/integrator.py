"""Strapdown IMU integration with classical RK4.

State is (position, velocity, orientation) with dynamics

    p' = v
    v' = R(q) a + g
    q' = 0.5 * q x (0, w)

where a and w are body-frame accelerometer / gyro readings. Measurements at
the RK4 half step are linear interpolations of the bracketing samples; the
quaternion is renormalized after every step.
"""

import numpy as np

from .quaternion import quat_multiply, quat_normalize, quat_to_rot
from .trajectory import GRAVITY
from .types import Pose, PoseSample


def _deriv(v, q, omega, accel, gravity):
    dp = v
    dv = quat_to_rot(q) @ accel + gravity
    dq = 0.5 * quat_multiply(q, np.concatenate(([0.0], omega)))
    return dp, dv, dq


def _rk4_step(p, v, q, h, m0, m_mid, m1, gravity):
    k1p, k1v, k1q = _deriv(v, q, m0[0], m0[1], gravity)
    k2p, k2v, k2q = _deriv(v + 0.5 * h * k1v, q + 0.5 * h * k1q, m_mid[0], m_mid[1], gravity)
    k3p, k3v, k3q = _deriv(v + 0.5 * h * k2v, q + 0.5 * h * k2q, m_mid[0], m_mid[1], gravity)
    k4p, k4v, k4q = _deriv(v + h * k3v, q + h * k3q, m1[0], m1[1], gravity)
    p = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
    v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    q = quat_normalize(q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q))
    return p, v, q


def rk4_integrate(anchor, imu, t_end_ns, gravity=GRAVITY):
    """Integrate IMU samples from a pose anchor to t_end_ns.

    Parameters
    ----------
    anchor : PoseSample
        State at the start of the window (typically the latest correction).
    imu : sequence of ImuSample
        Strictly increasing timestamps, all within [anchor.ts, t_end_ns].
    t_end_ns : int
        Query time; measurements are held constant beyond the last sample.
    gravity : 3-vector
        World-frame gravity added back to the rotated specific force.

    Returns
    -------
    PoseSample with source="integrator" at t_end_ns.
    """
    imu = list(imu)
    if not imu:
        if t_end_ns == anchor.ts:
            return anchor
        raise ValueError("no samples to integrate over a nonzero window")
    ts = [s.ts for s in imu]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("imu timestamps must be strictly increasing")
    if anchor.ts > ts[0]:
        raise ValueError(f"first sample {ts[0]} precedes anchor {anchor.ts}")
    if t_end_ns < ts[-1]:
        raise ValueError(f"t_end {t_end_ns} precedes last sample {ts[-1]}")

    gravity = np.asarray(gravity, dtype=float)
    p = anchor.pose.position.copy()
    v = anchor.linear_velocity.copy()
    q = anchor.pose.orientation.copy()

    def meas(sample):
        return (sample.angular_velocity, sample.linear_acceleration)

    def mid(a, b):
        return (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))

    # Leading gap before the first sample: hold that sample's reading.
    segments = []
    if imu[0].ts > anchor.ts:
        m = meas(imu[0])
        segments.append((anchor.ts, imu[0].ts, m, m, m))
    for a, b in zip(imu, imu[1:]):
        ma, mb = meas(a), meas(b)
        segments.append((a.ts, b.ts, ma, mid(ma, mb), mb))
    if t_end_ns > imu[-1].ts:
        m = meas(imu[-1])
        segments.append((imu[-1].ts, t_end_ns, m, m, m))

    for t0, t1, m0, m_mid, m1 in segments:
        h = (t1 - t0) * 1e-9
        if h > 0.0:
            p, v, q = _rk4_step(p, v, q, h, m0, m_mid, m1, gravity)

    return PoseSample(pose=Pose(p, q), ts=t_end_ns, source="integrator", linear_velocity=v)
