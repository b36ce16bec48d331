"""Weighted Gerchberg-Saxton against the scalar reference implementation."""

import numpy as np
import pytest

from oracles.gsw_reference import gsw_reference
from xrsim.visual import HologramProblem, gsw_hologram, uniformity_of

THREE_POINTS = HologramProblem(
    width=64,
    height=64,
    points=((16.0, 20.0, 0, 1.0), (44.0, 28.0, 2, 1.0), (30.0, 48.0, 5, 1.0)),
)


def test_problem_validation():
    with pytest.raises(ValueError):
        HologramProblem(width=8, height=8, points=())
    with pytest.raises(ValueError):
        HologramProblem(width=8, height=8, points=((1, 1, 0, 1.0),), plane_spacing_diopters=0.5)
    with pytest.raises(ValueError):
        HologramProblem(width=8, height=8, points=((1, 1, 99, 1.0),))
    with pytest.raises(ValueError):
        HologramProblem(width=8, height=8, points=((1, 1, 0, 0.0),))
    with pytest.raises(ValueError):
        gsw_hologram(THREE_POINTS, iterations=0)


def test_plane_depths_respect_diopter_spacing():
    p = THREE_POINTS
    d0 = 1.0 / p.plane_depth_m(0)
    d1 = 1.0 / p.plane_depth_m(1)
    assert d1 - d0 == pytest.approx(0.6)
    assert p.plane_depth_m(0) == pytest.approx(1.0)


def test_single_point_uniform_after_one_iteration():
    problem = HologramProblem(width=32, height=32, points=((10.0, 12.0, 0, 1.0),))
    result = gsw_hologram(problem, iterations=1)
    assert result.uniformity == pytest.approx(1.0)
    assert not result.degenerate


def test_coincident_points_degenerate_fast_path():
    problem = HologramProblem(
        width=32, height=32, points=((10.0, 12.0, 0, 1.0), (10.0, 12.0, 0, 2.0))
    )
    result = gsw_hologram(problem, iterations=3)
    assert result.degenerate
    assert result.uniformity == pytest.approx(1.0)
    assert len(result.intensities) == 2


def test_phases_in_range():
    result = gsw_hologram(THREE_POINTS, iterations=5)
    assert (result.phases >= 0.0).all()
    assert (result.phases < 2 * np.pi).all()
    assert result.phases.shape == (64, 64)


def test_three_point_uniformity_meets_oracle():
    iterations = 10
    result = gsw_hologram(THREE_POINTS, iterations=iterations)

    ref = gsw_reference(
        width=64,
        height=64,
        points=[
            (x, y, THREE_POINTS.plane_depth_m(plane), amp)
            for x, y, plane, amp in THREE_POINTS.points
        ],
        wavelength=THREE_POINTS.wavelength,
        pixel_pitch=THREE_POINTS.pixel_pitch,
        iterations=iterations,
    )

    assert result.uniformity >= 0.9
    assert ref["uniformity"] >= 0.9  # the oracle itself clears the bar
    assert result.uniformity == pytest.approx(ref["uniformity"], abs=1e-6)
    assert np.allclose(
        result.intensities,
        ref["intensities"],
        rtol=1e-6,
    )
    assert np.allclose(
        result.uniformity_per_iteration, ref["history"], rtol=1e-6, atol=1e-9
    )


def test_uniformity_improves_over_iterations():
    result = gsw_hologram(THREE_POINTS, iterations=10)
    first = result.uniformity_per_iteration[0]
    assert result.uniformity >= first
    assert result.uniformity >= 0.9


def test_uniformity_of_helper():
    assert uniformity_of([2.0, 4.0]) == pytest.approx(0.5)
    assert uniformity_of([3.0, 3.0, 3.0]) == pytest.approx(1.0)
