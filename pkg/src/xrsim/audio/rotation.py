"""Soundfield rotation and zoom.

Rotation acts per spherical-harmonic degree: W passes through, the
degree-1 block is the listener rotation expressed on the (Y, Z, X) axes,
higher degrees follow the Ivanic-Ruedenberg recurrence built from the
degree-1 block. Matrices are identical for any per-degree normalization,
so they apply to SN3D channels directly.
"""

import math
import warnings

import numpy as np

from ..perception.quaternion import quat_to_rot
from .blocks import AmbisonicBlock

# Permutation picking (y, z, x) out of (x, y, z): degree-1 real SH stack
# components in m = -1, 0, +1 order.
_YZX = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])


def _delta(a, b):
    return 1.0 if a == b else 0.0


def _p(i, degree, a, b, r1, prev):
    """Recurrence helper: product of degree-1 and degree-(l-1) entries."""
    # r1 and prev are indexed by m offsets: r1[i + 1, j + 1], prev[a + l - 1, ...]
    ri1 = r1[i + 1, 2]
    rim1 = r1[i + 1, 0]
    ri0 = r1[i + 1, 1]
    lm1 = degree - 1
    if b == degree:
        return ri1 * prev[a + lm1, 2 * lm1] - rim1 * prev[a + lm1, 0]
    if b == -degree:
        return ri1 * prev[a + lm1, 0] + rim1 * prev[a + lm1, 2 * lm1]
    return ri0 * prev[a + lm1, b + lm1]


def _degree_matrix(degree, r1, prev):
    """Rotation matrix for one SH degree from the one below it."""
    size = 2 * degree + 1
    out = np.empty((size, size))
    for m in range(-degree, degree + 1):
        for n in range(-degree, degree + 1):
            if abs(n) == degree:
                denom = (2 * degree) * (2 * degree - 1)
            else:
                denom = (degree + n) * (degree - n)

            u = math.sqrt((degree + m) * (degree - m) / denom)
            v = (
                0.5
                * math.sqrt(
                    (1.0 + _delta(m, 0))
                    * (degree + abs(m) - 1)
                    * (degree + abs(m))
                    / denom
                )
                * (1.0 - 2.0 * _delta(m, 0))
            )
            w = (
                -0.5
                * math.sqrt((degree - abs(m) - 1) * (degree - abs(m)) / denom)
                * (1.0 - _delta(m, 0))
            )

            acc = 0.0
            if u != 0.0:
                acc += u * _p(0, degree, m, n, r1, prev)
            if v != 0.0:
                if m == 0:
                    term = _p(1, degree, 1, n, r1, prev) + _p(-1, degree, -1, n, r1, prev)
                elif m > 0:
                    term = _p(1, degree, m - 1, n, r1, prev) * math.sqrt(
                        1.0 + _delta(m, 1)
                    ) - _p(-1, degree, -m + 1, n, r1, prev) * (1.0 - _delta(m, 1))
                else:
                    term = _p(1, degree, m + 1, n, r1, prev) * (
                        1.0 - _delta(m, -1)
                    ) + _p(-1, degree, -m - 1, n, r1, prev) * math.sqrt(
                        1.0 + _delta(m, -1)
                    )
                acc += v * term
            if w != 0.0:
                if m > 0:
                    term = _p(1, degree, m + 1, n, r1, prev) + _p(
                        -1, degree, -m - 1, n, r1, prev
                    )
                else:
                    term = _p(1, degree, m - 1, n, r1, prev) - _p(
                        -1, degree, -m + 1, n, r1, prev
                    )
                acc += w * term
            out[m + degree, n + degree] = acc
    return out


def sh_rotation_matrix(orientation, order):
    """Block-diagonal rotation for ACN channels up to the given order.

    orientation is the listener quaternion (w, x, y, z); channels
    transform by the world-to-body rotation so a source dead ahead of a
    yawed-left listener is heard to the right.
    """
    rot = quat_to_rot(np.asarray(orientation, dtype=float)).T
    r1 = _YZX @ rot @ _YZX.T
    total = (order + 1) ** 2
    out = np.zeros((total, total))
    out[0, 0] = 1.0
    out[1:4, 1:4] = r1
    prev = r1
    for degree in range(2, order + 1):
        block = _degree_matrix(degree, r1, prev)
        lo = degree * degree
        hi = lo + 2 * degree + 1
        out[lo:hi, lo:hi] = block
        prev = block
    return out


def rotate_soundfield(block, orientation):
    """Rotate an ambisonic block into the listener's head frame."""
    mat = sh_rotation_matrix(orientation, block.order)
    return AmbisonicBlock(
        samples=mat @ block.samples,
        sample_rate=block.sample_rate,
        ts=block.ts,
        order=block.order,
    )


def zoom_soundfield(block, zoom):
    """Forward-dominance zoom: emphasize the +X hemisphere for zoom > 0.

    W and X are cross-fed by the dominance mix, every channel is then
    scaled by k = 1 / (1 + sqrt(2) * |zoom|) so no gain exceeds one.
    Values outside [-1, 1] are clamped with a warning.
    """
    z = float(zoom)
    if abs(z) > 1.0:
        warnings.warn(f"zoom {z} outside [-1, 1], clamping", stacklevel=2)
        z = max(-1.0, min(1.0, z))
    k = 1.0 / (1.0 + math.sqrt(2.0) * abs(z))
    samples = block.samples * k
    w_in = block.samples[0]
    x_in = block.samples[3]
    samples[0] = k * (w_in + (z / math.sqrt(2.0)) * x_in)
    samples[3] = k * (x_in + math.sqrt(2.0) * z * w_in)
    return AmbisonicBlock(
        samples=samples,
        sample_rate=block.sample_rate,
        ts=block.ts,
        order=block.order,
    )
