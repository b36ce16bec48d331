"""Ambisonic encoding: real spherical harmonics, ACN order, SN3D weights.

Azimuth is measured counterclockwise from +X in the horizontal plane,
elevation upward from it, so a source straight ahead sits at (0, 0) and
one to the left at (pi/2, 0).
"""

import math

import numpy as np
from scipy.special import lpmv

from .blocks import AmbisonicBlock, normalize


def acn_index(degree, m):
    """ACN channel index of spherical-harmonic component (degree, m)."""
    return degree * degree + degree + m


def acn_degree_order(acn):
    """Inverse of acn_index: channel -> (degree, m)."""
    degree = int(math.isqrt(acn))
    return degree, acn - degree * degree - degree


def sh_coefficients(direction, order):
    """Real SH values for a unit direction, ACN order, SN3D normalization.

    lpmv carries the Condon-Shortley phase, cancelled here by (-1)^m so
    that order-1 channels come out as (W, Y, Z, X) = (1, y, z, x).
    """
    d = np.asarray(direction, dtype=float).reshape(3)
    d = d / np.linalg.norm(d)
    az = math.atan2(d[1], d[0])
    sin_el = float(np.clip(d[2], -1.0, 1.0))

    out = np.empty((order + 1) ** 2)
    for degree in range(order + 1):
        for m in range(-degree, degree + 1):
            am = abs(m)
            norm = math.sqrt(
                (2.0 if m != 0 else 1.0)
                * math.factorial(degree - am)
                / math.factorial(degree + am)
            )
            leg = (-1.0) ** am * lpmv(am, degree, sin_el)
            if m >= 0:
                trig = math.cos(m * az)
            else:
                trig = math.sin(am * az)
            out[acn_index(degree, m)] = norm * leg * trig
    return out


def encode(sources, order, block_index, block_size=1024, sample_rate=48000):
    """Mix point sources into one ambisonic block.

    Each source contributes gain * sh_coefficients(direction) times its
    normalized samples for the block_index-th window; short streams are
    zero padded.
    """
    if order < 1:
        raise ValueError("ambisonic order must be >= 1")
    if block_index < 0:
        raise ValueError("block_index must be >= 0")
    channels = (order + 1) ** 2
    mix = np.zeros((channels, block_size))
    lo = block_index * block_size
    for src in sources:
        seg = src.samples[lo : lo + block_size]
        mono = np.zeros(block_size)
        mono[: seg.shape[0]] = normalize(seg)
        mix += np.outer(sh_coefficients(src.direction, order), src.gain * mono)
    ts = int(round(lo * 1_000_000_000 / sample_rate))
    return AmbisonicBlock(samples=mix, sample_rate=sample_rate, ts=ts, order=order)
