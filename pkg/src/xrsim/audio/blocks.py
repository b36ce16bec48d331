"""Audio block types and sample normalization."""

from dataclasses import dataclass

import numpy as np


def normalize(samples):
    """Convert 16-bit integer samples to float in [-1, 1): divide by 32768."""
    return np.asarray(samples, dtype=float) / 32768.0


@dataclass(frozen=True)
class AudioBlock:
    """Channel-major float samples, shape (channels, block_size)."""

    samples: np.ndarray
    sample_rate: int
    ts: int

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 2:
            raise ValueError("samples must be (channels, block_size)")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", s)

    @property
    def block_size(self):
        return self.samples.shape[1]

    @property
    def channels(self):
        return self.samples.shape[0]


@dataclass(frozen=True)
class AmbisonicBlock(AudioBlock):
    """Ambisonic soundfield block: ACN channel order, SN3D normalization."""

    order: int = 1

    def __post_init__(self):
        super().__post_init__()
        if self.order < 1:
            raise ValueError("ambisonic order must be >= 1")
        expect = (self.order + 1) ** 2
        if self.channels != expect:
            raise ValueError(
                f"order {self.order} needs {expect} channels, got {self.channels}"
            )


@dataclass(frozen=True)
class SourceSpec:
    """A mono 16-bit source at a fixed world-frame direction."""

    samples: np.ndarray  # int16 stream, any length
    direction: np.ndarray  # unit 3-vector
    gain: float = 1.0

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float).reshape(3)
        if abs(np.linalg.norm(d) - 1.0) > 1e-9:
            raise ValueError("direction must be a unit vector")
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=np.int16))
