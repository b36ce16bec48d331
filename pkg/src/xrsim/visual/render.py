"""Deterministic software raycaster standing in for the 3D application.

Scene: a finite checkered ground quad, a handful of axis-aligned colored
boxes placed by the scene seed, and a sky gradient. Flat shading only; the
point is deterministic, pose-sensitive pixels, not realism.
"""

from dataclasses import dataclass

import numpy as np

from ..perception.quaternion import quat_to_rot
from .camera import BODY_TO_CAMERA

GROUND_HALF = 20.0  # meters; rays missing the quad show sky

_FACE_SHADE = {0: 0.85, 1: 0.7, 2: 1.0}  # brightness per hit-normal axis


@dataclass(frozen=True)
class RenderedFrame:
    """An application frame tagged with the pose it was rendered from."""

    image: np.ndarray  # (H, W, 3) uint8
    render_pose: object
    submit_ts: int


def _scene_boxes(scene_seed):
    rng = np.random.default_rng((scene_seed, 0x5CE))
    boxes = []
    # Boxes ahead of the trajectory start (+X), spread laterally.
    for i in range(4):
        size = rng.uniform(0.4, 0.9, size=3)
        center = np.array(
            [rng.uniform(2.5, 5.0), rng.uniform(-2.2, 2.2), size[2] / 2.0]
        )
        color = np.array([rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0)])
        color = color / color.max()
        boxes.append((center - size / 2.0, center + size / 2.0, color))
    return boxes


def _ray_box(origin, dirs, lo, hi):
    """Slab intersection; returns (t_enter, axis_of_entry, hit_mask)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / dirs
        t0 = (lo - origin) * inv
        t1 = (hi - origin) * inv
    t_near = np.minimum(t0, t1)
    t_far = np.maximum(t0, t1)
    t_enter = t_near.max(axis=-1)
    t_exit = t_far.min(axis=-1)
    axis = t_near.argmax(axis=-1)
    hit = (t_enter <= t_exit) & (t_exit > 0.0) & (t_enter > 1e-6)
    return t_enter, axis, hit


def render_app(scene_seed, pose, cam, submit_ts=0):
    """Raycast the seeded scene from `pose` through `cam`.

    Same (scene_seed, pose, cam) always produces identical pixels.
    """
    R_wc = quat_to_rot(pose.orientation) @ BODY_TO_CAMERA
    dirs = cam.pixel_rays() @ R_wc.T  # world-frame directions, (H, W, 3)
    origin = pose.position.astype(float)
    h, w = cam.height, cam.width

    # Sky gradient by world-frame elevation of the ray.
    up = np.clip(dirs[..., 2], -1.0, 1.0)
    sky = np.empty((h, w, 3))
    sky[..., 0] = 0.35 + 0.25 * up
    sky[..., 1] = 0.5 + 0.3 * up
    sky[..., 2] = 0.75 + 0.25 * up

    color = sky
    depth = np.full((h, w), np.inf)

    # Ground quad z=0, |x|,|y| <= GROUND_HALF, checkered.
    dz = dirs[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        t_ground = -origin[2] / dz
    gx = origin[0] + t_ground * dirs[..., 0]
    gy = origin[1] + t_ground * dirs[..., 1]
    ground_hit = (
        (t_ground > 1e-6)
        & np.isfinite(t_ground)
        & (np.abs(gx) <= GROUND_HALF)
        & (np.abs(gy) <= GROUND_HALF)
    )
    # Band-limited two-scale texture, faded flat toward the horizon: smooth
    # enough that resampling passes (reprojection, distortion) stay faithful,
    # busy enough that any pose change moves pixels.
    tex = 0.6 * np.sin(np.pi * gx) * np.sin(np.pi * gy) + 0.4 * np.sin(
        0.37 * np.pi * gx + 1.0
    ) * np.sin(0.53 * np.pi * gy + 2.0)
    fade = np.clip(1.0 - np.where(np.isfinite(t_ground), t_ground, 0.0) / 25.0, 0.0, 1.0)
    mean_color = np.array([0.4, 0.425, 0.375])
    ground_color = mean_color * (1.0 + 0.45 * (tex * fade)[..., None])
    color = np.where(ground_hit[..., None], ground_color, color)
    depth = np.where(ground_hit, t_ground, depth)

    for lo, hi, box_color in _scene_boxes(scene_seed):
        t_enter, axis, hit = _ray_box(origin, dirs, lo, hi)
        closer = hit & (t_enter < depth)
        shade = np.choose(axis, [_FACE_SHADE[0], _FACE_SHADE[1], _FACE_SHADE[2]])
        shaded = box_color[None, None, :] * shade[..., None]
        color = np.where(closer[..., None], shaded, color)
        depth = np.where(closer, t_enter, depth)

    image = (np.clip(color, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    return RenderedFrame(image=image, render_pose=pose, submit_ts=submit_ts)
