"""
Late-stage rotational reprojection of a stale frame
===================================================

An application renders at the pose the head had when rendering started.
By the time the display lights up the head has turned on.  Scanning out
the stale frame as-is shows the old view; warping it with the rotation
homography built from the newer orientation recovers most of the image a
fresh render would have produced, at a fraction of the cost.

Scores use the central 80% of the frame: the warp has nothing to put in
the strip that rotates in from off-screen, so it leaves a black leading
band that a full-frame score would charge against the warp even though
the visible content is right.

Writes the stale, warped, and freshly rendered views as PPM files under
demo_out/reprojection/.

    python3 demos/late_stage_reprojection.py
"""

import pathlib
import time

import numpy as np

from xrsim.metrics import one_minus_flip, ssim
from xrsim.perception import Pose, quat_from_yaw
from xrsim.visual import CameraModel, render_app, reproject, write_ppm

out_dir = pathlib.Path("demo_out/reprojection")
out_dir.mkdir(parents=True, exist_ok=True)

cam = CameraModel.from_fov(640, 360, 90.0)
position = np.array([0.4, -0.2, 1.5])
render_pose = Pose(position, quat_from_yaw(0.10))


def crop(img, keep=0.8):
    h, w = img.shape[:2]
    dy, dx = int(h * (1 - keep) / 2), int(w * (1 - keep) / 2)
    return img[dy:h - dy, dx:w - dx]


stale = render_app(7, render_pose, cam)

print("head turn between render and scan-out, 640x360, central 80% scored")
print(f"{'turn deg':>9} {'stale ssim':>11} {'warped ssim':>12} {'warped 1-flip':>14}")
for deg in (1.0, 2.0, 4.0, 8.0):
    display_pose = Pose(position, quat_from_yaw(0.10 + np.deg2rad(deg)))
    fresh = render_app(7, display_pose, cam).image
    warped = reproject(stale, display_pose, cam)
    print(
        f"{deg:>9.1f} {ssim(crop(stale.image), crop(fresh)):>11.4f}"
        f" {ssim(crop(warped), crop(fresh)):>12.4f}"
        f" {one_minus_flip(crop(warped), crop(fresh)):>14.4f}"
    )

# Keep the 4 degree case on disk for inspection.
display_pose = Pose(position, quat_from_yaw(0.10 + np.deg2rad(4.0)))
t = time.perf_counter()
fresh = render_app(7, display_pose, cam).image
render_ms = 1e3 * (time.perf_counter() - t)
t = time.perf_counter()
warped = reproject(stale, display_pose, cam)
warp_ms = 1e3 * (time.perf_counter() - t)
write_ppm(out_dir / "stale.ppm", stale.image)
write_ppm(out_dir / "warped.ppm", warped)
write_ppm(out_dir / "fresh.ppm", fresh)
print(f"\nfresh render {render_ms:.1f} ms vs reprojection {warp_ms:.1f} ms")
print(f"images written to {out_dir}/")

# Identity warp must be pixel-exact away from the border fill.
same = reproject(stale, render_pose, cam)
assert np.array_equal(crop(same), crop(stale.image))
