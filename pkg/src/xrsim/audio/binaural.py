"""Binaural rendering of ambisonic blocks with FFT overlap-add.

Each ambisonic channel carries one FIR per ear; block convolution runs
in the frequency domain at the next power of two >= block + fir - 1 and
the (fir - 1)-sample tail is carried across blocks so a continuous input
produces a continuous output.
"""

from dataclasses import dataclass

import numpy as np

from .blocks import AudioBlock, AmbisonicBlock


@dataclass(frozen=True)
class HrtfSet:
    """Per-ambisonic-channel FIR pairs, shape (channels, 2, fir_len)."""

    filters: np.ndarray
    sample_rate: int = 48000

    def __post_init__(self):
        f = np.asarray(self.filters, dtype=float)
        if f.ndim != 3 or f.shape[1] != 2 or f.shape[2] < 1:
            raise ValueError("filters must be (channels, 2, fir_len)")
        if not np.all(np.isfinite(f)):
            raise ValueError("filters must be finite")
        object.__setattr__(self, "filters", f)

    @property
    def channels(self):
        return self.filters.shape[0]

    @property
    def fir_len(self):
        return self.filters.shape[2]


def make_synthetic_hrtf(order=2, fir_len=64, sample_rate=48000):
    """Delayed, attenuated impulse pairs standing in for measured HRTFs.

    Sine-phase channels (negative m) lean toward the left ear with a few
    samples of interaural delay and a level difference; the mirror image
    drives the right ear. Cosine-phase and zonal channels stay centered.
    """
    channels = (order + 1) ** 2
    filters = np.zeros((channels, 2, fir_len))
    base = fir_len // 4
    for acn in range(channels):
        degree = int(np.sqrt(acn))
        m = acn - degree * degree - degree
        lateral = (abs(m) / degree) if (degree > 0 and m < 0) else 0.0
        shift = int(round(4 * lateral))
        gain_l = 0.5 * (1.0 + 0.3 * lateral)
        gain_r = 0.5 * (1.0 - 0.3 * lateral)
        filters[acn, 0, base - shift] = gain_l
        filters[acn, 1, base + shift] = gain_r
    return HrtfSet(filters=filters, sample_rate=sample_rate)


class OverlapAddState:
    """Carried convolution tails, one row per output channel."""

    def __init__(self, num_outputs, fir_len):
        if fir_len < 1:
            raise ValueError("fir_len must be >= 1")
        self.tails = np.zeros((num_outputs, fir_len - 1))

    def reset(self):
        self.tails[:] = 0.0


def _fft_block_convolve(x, h):
    """Full linear convolution of rows of x with rows of h via FFT.

    x: (n, block), h: (n, fir) -> (n, block + fir - 1).
    """
    block = x.shape[1]
    fir = h.shape[1]
    full = block + fir - 1
    nfft = 1 << (full - 1).bit_length()
    spec = np.fft.rfft(x, nfft) * np.fft.rfft(h, nfft)
    return np.fft.irfft(spec, nfft)[:, :full]


def _overlap_add(full, state, block):
    """Fold carried tails into a full convolution, keep the new tail."""
    tail = state.tails
    full[:, : tail.shape[1]] += tail
    state.tails = full[:, block:].copy()
    return full[:, :block]


def binauralize(block, hrtf, state):
    """Render an ambisonic block to a stereo block through an HrtfSet.

    state carries the per-ear convolution tails and is updated in place;
    pass a fresh OverlapAddState(2, hrtf.fir_len) at stream start.
    """
    if hrtf.channels != block.channels:
        raise ValueError(
            f"hrtf has {hrtf.channels} channels, block has {block.channels}"
        )
    if state.tails.shape != (2, hrtf.fir_len - 1):
        raise ValueError("state shape does not match hrtf")
    ears = np.zeros((2, block.block_size + hrtf.fir_len - 1))
    for ear in range(2):
        per_channel = _fft_block_convolve(block.samples, hrtf.filters[:, ear, :])
        ears[ear] = per_channel.sum(axis=0)
    out = _overlap_add(ears, state, block.block_size)
    return AudioBlock(samples=out, sample_rate=block.sample_rate, ts=block.ts)


def psychoacoustic_filter(block, filters, state):
    """Convolve each ambisonic channel with its own FIR, overlap-add.

    filters: (channels, fir_len). Used for level/masking shaping ahead of
    binaural rendering; with unit impulses it is the identity.
    """
    filters = np.asarray(filters, dtype=float)
    if filters.ndim != 2 or filters.shape[0] != block.channels:
        raise ValueError("filters must be (channels, fir_len)")
    if state.tails.shape != (block.channels, filters.shape[1] - 1):
        raise ValueError("state shape does not match filters")
    full = _fft_block_convolve(block.samples, filters)
    out = _overlap_add(full, state, block.block_size)
    return AmbisonicBlock(
        samples=out,
        sample_rate=block.sample_rate,
        ts=block.ts,
        order=block.order,
    )
