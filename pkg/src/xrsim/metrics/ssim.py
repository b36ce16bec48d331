"""Structural similarity (SSIM) with the standard windowed formulation.

11x11 Gaussian window (sigma 1.5), stabilizers C1 = (0.01*255)^2 and
C2 = (0.03*255)^2, statistics from weighted window moments (not sample
covariance), mean taken over windows that fit entirely inside the image.
RGB inputs are reduced to Rec.601 luma first.
"""

import numpy as np
from scipy.ndimage import correlate1d

WINDOW_SIZE = 11
WINDOW_SIGMA = 1.5
C1 = (0.01 * 255.0) ** 2
C2 = (0.03 * 255.0) ** 2


def rgb_to_luma(image):
    """Rec.601 luma of an RGB image; grayscale passes through as float."""
    img = np.asarray(image, dtype=float)
    if img.ndim == 2:
        return img
    if img.ndim == 3 and img.shape[2] == 3:
        return img @ np.array([0.299, 0.587, 0.114])
    raise ValueError("expected (H, W) or (H, W, 3) image")


def _gaussian_window():
    radius = WINDOW_SIZE // 2
    x = np.arange(-radius, radius + 1, dtype=float)
    g = np.exp(-0.5 * (x / WINDOW_SIGMA) ** 2)
    return g / g.sum()


def _windowed_mean(img, kernel):
    """Separable windowed mean, cropped to windows fully inside the image."""
    radius = len(kernel) // 2
    out = correlate1d(img, kernel, axis=0, mode="constant")
    out = correlate1d(out, kernel, axis=1, mode="constant")
    return out[radius:-radius, radius:-radius]


def ssim(a, b):
    """Mean SSIM between two images of equal shape.

    Can be negative for strongly anticorrelated content; the raw value
    is returned unclamped (aggregation into reports clamps to [0, 1]).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    x = rgb_to_luma(a)
    y = rgb_to_luma(b)
    if min(x.shape) < WINDOW_SIZE:
        raise ValueError(f"image smaller than {WINDOW_SIZE}x{WINDOW_SIZE} window")

    kernel = _gaussian_window()
    ux = _windowed_mean(x, kernel)
    uy = _windowed_mean(y, kernel)
    uxx = _windowed_mean(x * x, kernel)
    uyy = _windowed_mean(y * y, kernel)
    uxy = _windowed_mean(x * y, kernel)
    vx = uxx - ux * ux
    vy = uyy - uy * uy
    cov = uxy - ux * uy

    num = (2.0 * ux * uy + C1) * (2.0 * cov + C2)
    den = (ux * ux + uy * uy + C1) * (vx + vy + C2)
    return float(np.mean(num / den))
