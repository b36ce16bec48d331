"""Mesh-based radial lens distortion with per-channel chromatic correction.

The mesh stores, for each output grid vertex and color channel, the source
pixel to sample: r_src = r_dst * (1 + k1*r_dst^2 + k2*r_dst^4) with radii in
normalized (focal-length) units about the principal point. Per-channel
coefficients differ slightly so the pass also corrects chromatic aberration.
"""

from dataclasses import dataclass

import numpy as np

from .warp import bilinear_sample

# Placeholder optics: red base, green/blue scaled -/+3%. Configurable.
DEFAULT_RADIAL_COEFFS = (
    (0.22, 0.24),
    (0.22 * 0.97, 0.24 * 0.97),
    (0.22 * 1.03, 0.24 * 1.03),
)


@dataclass(frozen=True)
class DistortionMesh:
    """Per-channel grids of source coordinates, shape (C, GH, GW, 2)."""

    grids: np.ndarray
    width: int  # target image dims the mesh was built for
    height: int

    def __post_init__(self):
        if not np.all(np.isfinite(self.grids)):
            raise ValueError("mesh coordinates must be finite")


def build_distortion_mesh(cam, radial_coeffs=DEFAULT_RADIAL_COEFFS, grid_shape=(33, 33)):
    """Sample the inverse radial map on a coarse vertex grid, per channel."""
    gh, gw = grid_shape
    if gh < 2 or gw < 2:
        raise ValueError("grid must be at least 2x2")
    us = np.linspace(0.0, cam.width - 1.0, gw)
    vs = np.linspace(0.0, cam.height - 1.0, gh)
    u, v = np.meshgrid(us, vs)
    xn = (u - cam.cx) / cam.fx
    yn = (v - cam.cy) / cam.fy
    r2 = xn * xn + yn * yn
    grids = np.empty((len(radial_coeffs), gh, gw, 2))
    for c, (k1, k2) in enumerate(radial_coeffs):
        scale = 1.0 + k1 * r2 + k2 * r2 * r2
        grids[c, ..., 0] = cam.cx + cam.fx * xn * scale
        grids[c, ..., 1] = cam.cy + cam.fy * yn * scale
    return DistortionMesh(grids=grids, width=cam.width, height=cam.height)


def _mesh_to_dense(grid, width, height):
    """Bilinearly upsample one channel's vertex grid to per-pixel coords."""
    gh, gw = grid.shape[:2]
    u = np.arange(width) * (gw - 1) / (width - 1)
    v = np.arange(height) * (gh - 1) / (height - 1)
    uu, vv = np.meshgrid(u, v)
    xs = bilinear_sample(grid[..., 0], uu, vv)
    ys = bilinear_sample(grid[..., 1], uu, vv)
    return xs, ys


def apply_distortion(image, mesh):
    """Warp each channel of (H, W, 3) `image` through its mesh grid."""
    h, w = image.shape[:2]
    if (w, h) != (mesh.width, mesh.height):
        raise ValueError(
            f"image {w}x{h} does not match mesh target {mesh.width}x{mesh.height}"
        )
    out = np.empty_like(image, dtype=float)
    for c in range(image.shape[2]):
        grid = mesh.grids[min(c, len(mesh.grids) - 1)]
        xs, ys = _mesh_to_dense(grid, w, h)
        out[..., c] = bilinear_sample(image[..., c], xs, ys, fill=0.0)
    if np.issubdtype(image.dtype, np.integer):
        return (out + 0.5).astype(image.dtype)
    return out
