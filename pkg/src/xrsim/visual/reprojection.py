"""Rotational timewarp: resample a rendered frame at a newer orientation.

Translation is deliberately ignored; the warp is the pure-rotation homography
H = K * R_delta * K^-1 mapping output pixels back to source pixels, where
R_delta rotates the predicted camera frame into the render camera frame.
"""

import numpy as np

from ..perception.quaternion import quat_to_rot
from .camera import BODY_TO_CAMERA
from .warp import bilinear_sample


def rotation_homography(cam, render_orientation, predicted_orientation):
    """Output-to-source pixel homography for a pure orientation change."""
    R_render = quat_to_rot(render_orientation) @ BODY_TO_CAMERA
    R_pred = quat_to_rot(predicted_orientation) @ BODY_TO_CAMERA
    K = cam.intrinsic_matrix
    return K @ R_render.T @ R_pred @ cam.intrinsic_inverse


def reproject(frame, predicted_pose, cam):
    """Warp `frame` to the predicted orientation; off-frame sources go black.

    Returns an (H, W, 3) uint8 image at the camera resolution.
    """
    H = rotation_homography(cam, frame.render_pose.orientation, predicted_pose.orientation)
    u, v = np.meshgrid(np.arange(cam.width, dtype=float), np.arange(cam.height, dtype=float))
    rays = np.stack([u, v, np.ones_like(u)], axis=-1) @ H.T
    z = rays[..., 2]
    # Sources that swing behind the camera have nothing to show.
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = np.where(z > 1e-9, rays[..., 0] / z, -1.0)
        ys = np.where(z > 1e-9, rays[..., 1] / z, -1.0)
    out = bilinear_sample(frame.image, xs, ys, fill=0.0)
    return (out + 0.5).astype(np.uint8)
