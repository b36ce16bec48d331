"""Trajectory alignment and pose error metrics.

Estimated and ground-truth trajectories are associated by nearest
timestamp under a maximum gap, rigidly aligned with the least-squares
(Umeyama) solution over positions, then compared: ATE is the RMSE of
per-pair position and geodesic orientation errors, RPE the error of
relative motion over a fixed time delta (drift rate, invariant to any
global rigid offset of the estimate).
"""

from dataclasses import dataclass

import numpy as np

from ..perception.quaternion import (
    quat_angle_between,
    quat_conjugate,
    quat_multiply,
    quat_normalize,
    quat_to_rot,
    rot_to_quat,
)
from ..perception.types import Pose, PoseSample
from ..runtime.clock import seconds

DEFAULT_MAX_GAP_NS = seconds(0.005)


@dataclass(frozen=True)
class AlignmentResult:
    """Rigid (optionally scaled) map est -> gt: p' = scale * R @ p + t."""

    rotation: np.ndarray
    translation: np.ndarray
    scale: float
    degenerate: bool


@dataclass(frozen=True)
class AteResult:
    rotation_deg: float
    translation_m: float
    pairs: int


@dataclass(frozen=True)
class RpeResult:
    translation_errors_m: np.ndarray
    rotation_errors_deg: np.ndarray

    @property
    def translation_rmse_m(self):
        return float(np.sqrt(np.mean(self.translation_errors_m**2)))

    @property
    def rotation_rmse_deg(self):
        return float(np.sqrt(np.mean(self.rotation_errors_deg**2)))

    @property
    def pairs(self):
        return len(self.translation_errors_m)


def associate(est, gt, max_gap_ns=DEFAULT_MAX_GAP_NS):
    """Pair each estimated sample with the nearest ground-truth sample.

    Returns (est_idx, gt_idx) pairs whose timestamp gap is within
    max_gap_ns. Assumes both lists are sorted by ts_ns.
    """
    gt_ts = np.array([s.ts for s in gt])
    pairs = []
    for i, sample in enumerate(est):
        j = int(np.searchsorted(gt_ts, sample.ts))
        best = None
        for cand in (j - 1, j):
            if 0 <= cand < len(gt_ts):
                gap = abs(int(gt_ts[cand]) - sample.ts)
                if best is None or gap < best[1]:
                    best = (cand, gap)
        if best is not None and best[1] <= max_gap_ns:
            pairs.append((i, best[0]))
    return pairs


def umeyama_alignment(src, dst, with_scale=False):
    """Least-squares rigid (or similarity) transform mapping src onto dst.

    src, dst: (N, 3) point arrays. Minimizes sum |dst - (s R src + t)|^2.
    Collinear or coincident points leave a rotation axis unconstrained;
    the result is still returned but flagged degenerate.
    """
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    if src.shape != dst.shape or src.ndim != 2 or src.shape[1] != 3:
        raise ValueError("src and dst must both be (N, 3)")
    if src.shape[0] < 3:
        raise ValueError("need at least 3 point pairs")

    mu_src = src.mean(axis=0)
    mu_dst = dst.mean(axis=0)
    src_c = src - mu_src
    dst_c = dst - mu_dst
    cov = dst_c.T @ src_c / src.shape[0]

    u, d, vt = np.linalg.svd(cov)
    s = np.eye(3)
    if np.linalg.det(u) * np.linalg.det(vt) < 0:
        s[2, 2] = -1.0
    rotation = u @ s @ vt

    # Rank of the centered point cloud decides whether rotation is pinned.
    degenerate = np.linalg.matrix_rank(src_c, tol=1e-9 * max(1.0, d[0])) < 2

    if with_scale:
        var_src = np.mean(np.sum(src_c**2, axis=1))
        scale = float(np.trace(np.diag(d) @ s) / var_src) if var_src > 0 else 1.0
    else:
        scale = 1.0
    translation = mu_dst - scale * rotation @ mu_src
    return AlignmentResult(rotation, translation, scale, degenerate)


def apply_alignment(alignment, samples):
    """Map pose samples through a rigid alignment, world-frame compose."""
    rot_q = rot_to_quat(alignment.rotation)
    out = []
    for s in samples:
        p = alignment.scale * alignment.rotation @ s.pose.position + alignment.translation
        q = quat_normalize(quat_multiply(rot_q, s.pose.orientation))
        v = alignment.scale * alignment.rotation @ s.linear_velocity
        out.append(
            PoseSample(
                ts=s.ts,
                pose=Pose(position=p, orientation=q),
                source=s.source,
                linear_velocity=v,
            )
        )
    return out


def align_trajectories(est, gt, max_gap_ns=DEFAULT_MAX_GAP_NS, with_scale=False):
    """Associate, solve the alignment, and return (alignment, aligned est)."""
    pairs = associate(est, gt, max_gap_ns)
    if len(pairs) < 3:
        raise ValueError(f"only {len(pairs)} associated pairs, need at least 3")
    src = np.array([est[i].pose.position for i, _ in pairs])
    dst = np.array([gt[j].pose.position for _, j in pairs])
    alignment = umeyama_alignment(src, dst, with_scale=with_scale)
    return alignment, apply_alignment(alignment, est)


def ate(est_aligned, gt, max_gap_ns=DEFAULT_MAX_GAP_NS):
    """Absolute trajectory error: RMSE position and orientation offsets."""
    pairs = associate(est_aligned, gt, max_gap_ns)
    if not pairs:
        raise ValueError("no associated pairs")
    sq_pos = []
    sq_rot = []
    for i, j in pairs:
        dp = est_aligned[i].pose.position - gt[j].pose.position
        sq_pos.append(float(dp @ dp))
        ang = quat_angle_between(est_aligned[i].pose.orientation, gt[j].pose.orientation)
        sq_rot.append(np.degrees(ang) ** 2)
    return AteResult(
        rotation_deg=float(np.sqrt(np.mean(sq_rot))),
        translation_m=float(np.sqrt(np.mean(sq_pos))),
        pairs=len(pairs),
    )


def _relative_motion(a, b):
    """Relative pose taking a to b, expressed in a's frame."""
    ra = quat_to_rot(a.orientation)
    dp = ra.T @ (b.position - a.position)
    dq = quat_multiply(quat_conjugate(a.orientation), b.orientation)
    return dp, quat_normalize(dq)


def rpe(est, gt, delta_ns, max_gap_ns=DEFAULT_MAX_GAP_NS):
    """Relative pose error over a fixed time separation.

    For each associated pair (i, j) with ts_j = ts_i + delta, compares
    relative motion of the estimate against ground truth.
    """
    if delta_ns <= 0:
        raise ValueError("delta_ns must be positive")
    pairs = associate(est, gt, max_gap_ns)
    if not pairs:
        raise ValueError("no associated pairs")
    span = est[-1].ts - est[0].ts
    if delta_ns > span:
        raise ValueError(f"delta {delta_ns} exceeds trajectory span {span}")

    est_ts = np.array([est[i].ts for i, _ in pairs])
    trans = []
    rots = []
    for k, (i, j) in enumerate(pairs):
        target = est[i].ts + delta_ns
        m = int(np.searchsorted(est_ts, target))
        best = None
        for cand in (m - 1, m):
            if 0 <= cand < len(pairs):
                gap = abs(int(est_ts[cand]) - target)
                if best is None or gap < best[1]:
                    best = (cand, gap)
        if best is None or best[1] > max_gap_ns:
            continue
        i2, j2 = pairs[best[0]]
        dp_est, dq_est = _relative_motion(est[i].pose, est[i2].pose)
        dp_gt, dq_gt = _relative_motion(gt[j].pose, gt[j2].pose)
        trans.append(float(np.linalg.norm(dp_est - dp_gt)))
        rots.append(np.degrees(quat_angle_between(dq_est, dq_gt)))
    if not trans:
        raise ValueError("no pairs separated by delta within the gap threshold")
    return RpeResult(
        translation_errors_m=np.array(trans),
        rotation_errors_deg=np.array(rots),
    )
