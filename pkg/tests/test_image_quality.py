"""SSIM and FLIP against references.

SSIM is checked against scikit-image configured for the same windowed
formulation; FLIP against the scalar loop reference in tests/oracles.
"""

import numpy as np
import pytest
from skimage.metrics import structural_similarity

from oracles.flip_reference import flip_reference
from xrsim.metrics import flip, flip_error_map, one_minus_flip, rgb_to_luma, ssim


def random_rgb(rng, h=24, w=32):
    return rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)


def skimage_ssim(x, y):
    return structural_similarity(
        x,
        y,
        win_size=11,
        gaussian_weights=True,
        sigma=1.5,
        use_sample_covariance=False,
        data_range=255.0,
    )


class TestSsim:
    def test_identical_is_exactly_one(self):
        rng = np.random.default_rng(0)
        img = random_rgb(rng)
        assert ssim(img, img.copy()) == 1.0

    def test_symmetric(self):
        rng = np.random.default_rng(1)
        a, b = random_rgb(rng), random_rgb(rng)
        assert ssim(a, b) == pytest.approx(ssim(b, a), abs=1e-12)

    def test_matches_reference_on_random_pairs(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            a = rng.integers(0, 256, size=(36, 48)).astype(float)
            b = np.clip(a + rng.normal(0, 20, size=a.shape), 0, 255)
            assert ssim(a, b) == pytest.approx(skimage_ssim(a, b), abs=1e-3)

    def test_matches_reference_on_rgb_luma(self):
        rng = np.random.default_rng(3)
        a, b = random_rgb(rng), random_rgb(rng)
        assert ssim(a, b) == pytest.approx(
            skimage_ssim(rgb_to_luma(a), rgb_to_luma(b)), abs=1e-3
        )

    def test_constant_offset_stays_high(self):
        a = np.full((32, 32), 100.0)
        assert ssim(a, a + 1.0) > 0.99

    def test_inverse_image_can_go_negative(self):
        # Structure term flips sign; raw value is returned unclamped.
        rng = np.random.default_rng(5)
        a = rng.integers(0, 256, size=(48, 48)).astype(float)
        value = ssim(a, 255.0 - a)
        assert -1.0 <= value < 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            ssim(np.zeros((16, 16)), np.zeros((16, 17)))
        with pytest.raises(ValueError):
            ssim(np.zeros((8, 8)), np.zeros((8, 8)))


class TestFlip:
    def test_identical_is_zero(self):
        rng = np.random.default_rng(6)
        img = random_rgb(rng, 16, 12)
        assert flip(img, img.copy()) == 0.0
        assert one_minus_flip(img, img.copy()) == 1.0

    def test_black_vs_white_near_one(self):
        black = np.zeros((16, 16, 3), dtype=np.uint8)
        white = np.full((16, 16, 3), 255, dtype=np.uint8)
        err = flip(black, white)
        assert err > 0.9
        ref = flip_reference(
            (black / 255.0).tolist(), (white / 255.0).tolist()
        )["mean"]
        assert err == pytest.approx(ref, abs=1e-3)

    def test_matches_scalar_reference(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            a = random_rgb(rng, 12, 16)
            b = random_rgb(rng, 12, 16)
            got = flip(a, b)
            want = flip_reference(
                (a / 255.0).tolist(), (b / 255.0).tolist()
            )["mean"]
            assert got == pytest.approx(want, abs=1e-3)

    def test_monotone_under_contrast_offset(self):
        rng = np.random.default_rng(8)
        base = rng.integers(60, 180, size=(20, 24, 3)).astype(np.uint8)
        errors = [
            flip(base, np.clip(base.astype(int) + off, 0, 255).astype(np.uint8))
            for off in (0, 8, 16, 24, 32, 48)
        ]
        for lo, hi in zip(errors, errors[1:]):
            assert hi >= lo

    def test_error_map_bounded(self):
        rng = np.random.default_rng(9)
        a, b = random_rgb(rng, 16, 16), random_rgb(rng, 16, 16)
        emap = flip_error_map(a, b)
        assert emap.shape == (16, 16)
        assert np.all(emap >= 0.0) and np.all(emap <= 1.0)

    def test_ppd_configurable(self):
        rng = np.random.default_rng(10)
        a, b = random_rgb(rng, 16, 16), random_rgb(rng, 16, 16)
        err = flip(a, b, pixels_per_degree=30.0)
        assert 0.0 <= err <= 1.0

    def test_dimension_checks(self):
        with pytest.raises(ValueError):
            flip(np.zeros((8, 8, 3), dtype=np.uint8), np.zeros((8, 9, 3), dtype=np.uint8))
        with pytest.raises(ValueError):
            flip(np.zeros((8, 8)), np.zeros((8, 8)))
