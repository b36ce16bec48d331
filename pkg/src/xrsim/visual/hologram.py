"""Weighted Gerchberg-Saxton phase retrieval for multi-depth point targets.

Each iteration propagates the hologram phase to every target point
(V_m = sum_p e^{i(phi_p + D_mp)}), reweights targets toward the mean
amplitude (w_m <- w_m * <|V|>/|V_m|), and propagates back
(phi_p = arg sum_m w_m (V_m/|V_m|) e^{-i D_mp}). The point-source phase
D_mp = (pi/(lambda z_m)) * ((x_p-x_m)^2 + (y_p-y_m)^2) places each target on
a depth plane; planes are spaced in diopters no finer than human depth
discrimination.
"""

from dataclasses import dataclass, field

import numpy as np

MIN_PLANE_SPACING_DIOPTERS = 0.6


@dataclass(frozen=True)
class HologramProblem:
    """Phase mask dimensions, depth-point targets, and optical constants.

    points: sequence of (x_px, y_px, plane_index, target_amplitude); pixel
    coordinates may be fractional, plane_index selects a depth plane at
    base_diopters + index * plane_spacing_diopters.
    """

    width: int
    height: int
    points: tuple
    wavelength: float = 520e-9
    plane_spacing_diopters: float = MIN_PLANE_SPACING_DIOPTERS
    base_diopters: float = 1.0
    pixel_pitch: float = 8e-6
    num_planes: int = 10

    def __post_init__(self):
        if len(self.points) < 1:
            raise ValueError("at least one depth point required")
        if self.plane_spacing_diopters < MIN_PLANE_SPACING_DIOPTERS:
            raise ValueError(
                f"plane spacing {self.plane_spacing_diopters} diopters is below "
                f"the {MIN_PLANE_SPACING_DIOPTERS} perceptual floor"
            )
        for x, y, plane, amp in self.points:
            if not 0 <= plane < self.num_planes:
                raise ValueError(f"plane index {plane} outside [0, {self.num_planes})")
            if amp <= 0:
                raise ValueError("target amplitude must be positive")

    def plane_depth_m(self, plane_index):
        return 1.0 / (self.base_diopters + plane_index * self.plane_spacing_diopters)


@dataclass(frozen=True)
class HologramResult:
    phases: np.ndarray  # (H, W), radians in [0, 2pi)
    intensities: np.ndarray  # |V_m|^2 per point, from the returned phases
    uniformity: float
    uniformity_per_iteration: tuple
    degenerate: bool = False


def uniformity_of(intensities):
    intensities = np.asarray(intensities, dtype=float)
    return float(intensities.min() / intensities.max())


def _point_phase_delays(problem):
    """D_mp arrays, one (H, W) grid per target point."""
    xs = (np.arange(problem.width) - (problem.width - 1) / 2.0) * problem.pixel_pitch
    ys = (np.arange(problem.height) - (problem.height - 1) / 2.0) * problem.pixel_pitch
    gx, gy = np.meshgrid(xs, ys)
    delays = []
    for x_px, y_px, plane, _amp in problem.points:
        x_m = (x_px - (problem.width - 1) / 2.0) * problem.pixel_pitch
        y_m = (y_px - (problem.height - 1) / 2.0) * problem.pixel_pitch
        z = problem.plane_depth_m(plane)
        delays.append(
            (np.pi / (problem.wavelength * z)) * ((gx - x_m) ** 2 + (gy - y_m) ** 2)
        )
    return delays


def gsw_hologram(problem, iterations):
    """Run weighted Gerchberg-Saxton; returns phases and point intensities."""
    if iterations < 1:
        raise ValueError("need at least one iteration")

    coords = {(x, y, plane) for x, y, plane, _ in problem.points}
    if len(problem.points) > 1 and len(coords) == 1:
        # All targets coincide: one constraint, solved as a single point.
        x, y, plane = next(iter(coords))
        single = HologramProblem(
            width=problem.width,
            height=problem.height,
            points=((x, y, plane, 1.0),),
            wavelength=problem.wavelength,
            plane_spacing_diopters=problem.plane_spacing_diopters,
            base_diopters=problem.base_diopters,
            pixel_pitch=problem.pixel_pitch,
            num_planes=problem.num_planes,
        )
        sub = gsw_hologram(single, iterations)
        intensities = np.repeat(sub.intensities, len(problem.points))
        return HologramResult(
            phases=sub.phases,
            intensities=intensities,
            uniformity=1.0,
            uniformity_per_iteration=sub.uniformity_per_iteration,
            degenerate=True,
        )

    delays = _point_phase_delays(problem)
    forward = [np.exp(1j * d) for d in delays]
    weights = np.array([amp for _, _, _, amp in problem.points], dtype=float)
    phases = np.zeros((problem.height, problem.width))

    def propagate(phi):
        field = np.exp(1j * phi)
        return np.array([np.sum(field * f) for f in forward])

    history = []
    for _ in range(iterations):
        v = propagate(phases)
        mags = np.abs(v)
        history.append(uniformity_of(mags**2))
        weights = weights * (mags.mean() / mags)
        back = np.zeros((problem.height, problem.width), dtype=complex)
        for w, vm, mag, f in zip(weights, v, mags, forward):
            back += w * (vm / mag) * np.conj(f)
        phases = np.mod(np.angle(back), 2.0 * np.pi)

    final = np.abs(propagate(phases)) ** 2
    return HologramResult(
        phases=phases,
        intensities=final,
        uniformity=uniformity_of(final),
        uniformity_per_iteration=tuple(history),
        degenerate=False,
    )
