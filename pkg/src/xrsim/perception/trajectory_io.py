"""Trajectory CSV I/O for offline pose-error analysis and replay.

Columns: ts_ns, px, py, pz, qw, qx, qy, qz, vx, vy, vz.
"""

import csv

from .types import Pose, PoseSample

TRAJECTORY_FIELDS = ("ts_ns", "px", "py", "pz", "qw", "qx", "qy", "qz", "vx", "vy", "vz")


def write_trajectory(path, samples):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(TRAJECTORY_FIELDS)
        for s in samples:
            p, q, v = s.pose.position, s.pose.orientation, s.linear_velocity
            w.writerow(
                [s.ts]
                + [f"{x:.17g}" for x in (p[0], p[1], p[2], q[0], q[1], q[2], q[3], v[0], v[1], v[2])]
            )


def read_trajectory(path, source="ground_truth"):
    samples = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != TRAJECTORY_FIELDS:
            raise ValueError(f"unexpected trajectory header: {header}")
        for row in reader:
            ts = int(row[0])
            vals = [float(x) for x in row[1:]]
            samples.append(
                PoseSample(
                    pose=Pose(vals[0:3], vals[3:7]),
                    ts=ts,
                    source=source,
                    linear_velocity=vals[7:10],
                )
            )
    return samples
