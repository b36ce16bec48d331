"""Motion-to-photon latency decomposition.

Latency of a displayed frame is the age of the IMU sample behind its
pose when pixels start to appear, split into three legs: pose age at
reprojection start, reprojection compute, and wait for the swap. Panel
persistence after the swap is excluded.
"""

from dataclasses import dataclass

from ..runtime.clock import NANOS_PER_SEC

MS_PER_NS = 1000.0 / NANOS_PER_SEC

# Commonly cited comfort bounds on total motion-to-photon latency.
VR_LATENCY_BUDGET_MS = 20.0
AR_LATENCY_BUDGET_MS = 5.0


@dataclass(frozen=True)
class MtpRecord:
    """Per-displayed-frame latency legs, milliseconds."""

    t_imu_age: float
    t_reprojection: float
    t_swap: float
    frame_seq: int
    ts: int

    @property
    def total(self):
        return self.t_imu_age + self.t_reprojection + self.t_swap


def record_mtp(imu_sample_ts, reproj_start, reproj_end, pixels_start_ts, frame_seq=0):
    """Build an MtpRecord from nanosecond event timestamps.

    Timestamps must be ordered imu_sample_ts <= reproj_start <=
    reproj_end <= pixels_start_ts; a missed vsync shows up as extra
    t_swap because pixels_start_ts lands on the next slot.
    """
    if not imu_sample_ts <= reproj_start <= reproj_end <= pixels_start_ts:
        raise ValueError("timestamps must be ordered imu <= start <= end <= pixels")
    return MtpRecord(
        t_imu_age=(reproj_start - imu_sample_ts) * MS_PER_NS,
        t_reprojection=(reproj_end - reproj_start) * MS_PER_NS,
        t_swap=(pixels_start_ts - reproj_end) * MS_PER_NS,
        frame_seq=frame_seq,
        ts=pixels_start_ts,
    )
