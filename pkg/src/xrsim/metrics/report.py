"""Aggregate quality report and its text/CSV serialization."""

import json
from dataclasses import asdict, dataclass

import numpy as np


def _clamp01(x):
    return float(min(1.0, max(0.0, x)))


def _round12(x):
    # 12 significant digits: stable across recompute-from-disk round trips
    # while far below any tolerance the aggregates are compared at.
    return float(f"{float(x):.12g}")


@dataclass(frozen=True)
class QualityReport:
    """Session-level quality aggregates.

    Similarity scores are clamped into [0, 1] at construction; build via
    from_samples to compute the means and population deviations.
    """

    ssim_mean: float
    ssim_std: float
    one_minus_flip_mean: float
    one_minus_flip_std: float
    ate_rotation_deg: float
    ate_translation_m: float
    rpe_translation_rmse_m: float
    rpe_rotation_rmse_deg: float
    mtp_mean_ms: float
    mtp_std_ms: float

    def __post_init__(self):
        for field in ("ssim_mean", "one_minus_flip_mean"):
            object.__setattr__(self, field, _clamp01(getattr(self, field)))
        for field in self.__dataclass_fields__:
            object.__setattr__(self, field, _round12(getattr(self, field)))

    @classmethod
    def from_samples(cls, ssim_values, one_minus_flip_values, ate_result,
                     rpe_result, mtp_records):
        ssim_arr = np.asarray(ssim_values, dtype=float)
        flip_arr = np.asarray(one_minus_flip_values, dtype=float)
        mtp_arr = np.array([r.total for r in mtp_records], dtype=float)
        return cls(
            ssim_mean=float(ssim_arr.mean()),
            ssim_std=float(ssim_arr.std()),
            one_minus_flip_mean=float(flip_arr.mean()),
            one_minus_flip_std=float(flip_arr.std()),
            ate_rotation_deg=ate_result.rotation_deg,
            ate_translation_m=ate_result.translation_m,
            rpe_translation_rmse_m=rpe_result.translation_rmse_m,
            rpe_rotation_rmse_deg=rpe_result.rotation_rmse_deg,
            mtp_mean_ms=float(mtp_arr.mean()) if mtp_arr.size else 0.0,
            mtp_std_ms=float(mtp_arr.std()) if mtp_arr.size else 0.0,
        )

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self):
        items = sorted(self.to_dict().items())
        header = ",".join(k for k, _ in items)
        row = ",".join(f"{v:.9g}" for _, v in items)
        return f"{header}\n{row}\n"
