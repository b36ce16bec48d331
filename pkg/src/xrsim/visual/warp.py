"""Bilinear image sampling shared by reprojection and distortion."""

import numpy as np


def bilinear_sample(image, xs, ys, fill=0.0):
    """Sample `image` at float coords (xs, ys); outside the frame -> fill.

    image is (H, W) or (H, W, C); xs/ys share any shape and index pixel
    centers (x right, y down). Anything outside [0, W-1] x [0, H-1] fills.
    """
    h, w = image.shape[:2]
    # Tolerate float round-trips that land a hair outside the frame.
    eps = 1e-9
    valid = (xs >= -eps) & (xs <= w - 1 + eps) & (ys >= -eps) & (ys <= h - 1 + eps)
    xs = np.clip(xs, 0.0, w - 1.0)
    ys = np.clip(ys, 0.0, h - 1.0)
    # Clamp the base corner; at the far edge fx/fy reach exactly 1.
    x0 = np.clip(np.floor(xs), 0, w - 2).astype(int)
    y0 = np.clip(np.floor(ys), 0, h - 2).astype(int)
    fx = np.clip(xs - x0, 0.0, 1.0)
    fy = np.clip(ys - y0, 0.0, 1.0)
    if image.ndim == 3:
        fx, fy, mask = fx[..., None], fy[..., None], valid[..., None]
    else:
        mask = valid

    img = image.astype(float)
    p00 = img[y0, x0]
    p01 = img[y0, x0 + 1]
    p10 = img[y0 + 1, x0]
    p11 = img[y0 + 1, x0 + 1]
    out = p00 * (1 - fx) * (1 - fy) + p01 * fx * (1 - fy) + p10 * (1 - fx) * fy + p11 * fx * fy
    return np.where(mask, out, fill)
