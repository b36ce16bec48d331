"""FLIP perceptual image difference, low-dynamic-range pipeline.

Stages: sRGB to the linearized-Lab opponent space YCxCz; per-channel
spatial prefiltering with Gaussian-sum contrast sensitivity functions;
Hunt-adjusted CIELAB and the HyAB distance, redistributed so a target
fraction of the range maps below a perceptual knee; edge and point
feature differences on the achromatic channel that sharpen the final
exponent. Convolutions use symmetric edge padding. Per-pixel errors lie
in [0, 1]; identical images give exactly 0.
"""

import numpy as np
from scipy.ndimage import correlate1d

DEFAULT_PIXELS_PER_DEGREE = 67.0

QC = 0.7
QF = 0.5
PC = 0.4
PT = 0.95

# Gaussian-sum contrast sensitivity parameters (a1, b1, a2, b2) per
# opponent channel: achromatic, red-green, blue-yellow.
CSF_PARAMS = {
    "A": (1.0, 0.0047, 0.0, 1e-5),
    "RG": (1.0, 0.0053, 0.0, 1e-5),
    "BY": (34.1, 0.04, 13.5, 0.025),
}
FEATURE_WIDTH = 0.082

RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
XYZ_TO_RGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)
WHITE = np.array([0.95047, 1.0, 1.08883])


def _srgb_to_linear(c):
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def _linear_to_ycxcz(rgb):
    xyz = rgb @ RGB_TO_XYZ.T / WHITE
    return np.stack(
        [
            116.0 * xyz[..., 1] - 16.0,
            500.0 * (xyz[..., 0] - xyz[..., 1]),
            200.0 * (xyz[..., 1] - xyz[..., 2]),
        ],
        axis=-1,
    )


def _ycxcz_to_linear(ycc):
    y = (ycc[..., 0] + 16.0) / 116.0
    x = ycc[..., 1] / 500.0 + y
    z = y - ycc[..., 2] / 200.0
    xyz = np.stack([x, y, z], axis=-1) * WHITE
    return xyz @ XYZ_TO_RGB.T


def _linear_to_lab(rgb):
    xyz = rgb @ RGB_TO_XYZ.T / WHITE
    delta = 6.0 / 29.0
    f = np.where(
        xyz > delta**3, np.cbrt(xyz), xyz / (3.0 * delta * delta) + 4.0 / 29.0
    )
    return np.stack(
        [
            116.0 * f[..., 1] - 16.0,
            500.0 * (f[..., 0] - f[..., 1]),
            200.0 * (f[..., 1] - f[..., 2]),
        ],
        axis=-1,
    )


def _hunt(lab):
    out = lab.copy()
    out[..., 1] *= 0.01 * lab[..., 0]
    out[..., 2] *= 0.01 * lab[..., 0]
    return out


def _hyab(p, q):
    d = p - q
    return np.abs(d[..., 0]) + np.hypot(d[..., 1], d[..., 2])


def _csf_filter(img, channel, ppd):
    """Contrast-sensitivity prefilter, run as separable Gaussian passes.

    The 2D Gaussian-sum kernel factors exactly per term, so two 1D passes
    per Gaussian reproduce the dense normalized kernel.
    """
    a1, b1, a2, b2 = CSF_PARAMS[channel]
    bmax = max(b for p in CSF_PARAMS.values() for b in (p[1], p[3]))
    radius = int(np.ceil(3.0 * np.sqrt(bmax / (2.0 * np.pi**2)) * ppd))
    ax = np.arange(-radius, radius + 1) / ppd
    out = np.zeros_like(img)
    total = 0.0
    for a, b in ((a1, b1), (a2, b2)):
        if a == 0.0:
            continue
        u = np.exp(-np.pi**2 * ax**2 / b)
        coef = a * np.sqrt(np.pi / b)
        term = correlate1d(img, u, axis=0, mode="reflect")
        out += coef * correlate1d(term, u, axis=1, mode="reflect")
        total += coef * u.sum() ** 2
    return out / total


def _detector_profiles(kind, ppd):
    """1D factors of the edge/point detector kernel.

    The dense kernel is f(x) * g(y) with the positive and negative lobes
    normalized separately; the lobe sign depends only on x, so the
    normalization folds into the x profile and the kernel stays separable.
    """
    sd = 0.5 * FEATURE_WIDTH * ppd
    radius = int(np.ceil(3.0 * sd))
    ax = np.arange(-radius, radius + 1, dtype=float)
    g = np.exp(-(ax**2) / (2.0 * sd * sd))
    if kind == "edge":
        raw = -ax * g
    else:
        raw = (ax**2 / (sd * sd) - 1.0) * g
    neg = -raw[raw < 0].sum()
    pos = raw[raw > 0].sum()
    fx = np.where(raw < 0, raw / neg, np.where(raw > 0, raw / pos, 0.0))
    gy = g / g.sum()
    return fx, gy


def _detect(img, fx, gy):
    """Apply f(x)*g(y) along x, and its transpose along y; magnitude."""
    dx = correlate1d(
        correlate1d(img, fx, axis=1, mode="reflect"), gy, axis=0, mode="reflect"
    )
    dy = correlate1d(
        correlate1d(img, fx, axis=0, mode="reflect"), gy, axis=1, mode="reflect"
    )
    return np.hypot(dx, dy)


def _preprocess(srgb, ppd):
    ycc = _linear_to_ycxcz(_srgb_to_linear(srgb))
    filtered = np.stack(
        [
            _csf_filter(ycc[..., 0], "A", ppd),
            _csf_filter(ycc[..., 1], "RG", ppd),
            _csf_filter(ycc[..., 2], "BY", ppd),
        ],
        axis=-1,
    )
    rgb = np.clip(_ycxcz_to_linear(filtered), 0.0, 1.0)
    hunt = _hunt(_linear_to_lab(rgb))
    luma = (ycc[..., 0] + 16.0) / 116.0
    return hunt, luma


def _feature_maps(luma, ppd):
    edges = _detect(luma, *_detector_profiles("edge", ppd))
    points = _detect(luma, *_detector_profiles("point", ppd))
    return edges, points


def flip_error_map(a, b, pixels_per_degree=DEFAULT_PIXELS_PER_DEGREE):
    """Per-pixel FLIP error in [0, 1] for two RGB images.

    Inputs are uint8 or float arrays; floats are taken as sRGB in [0, 1],
    uint8 is scaled by 255.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError("expected (H, W, 3) RGB images")
    ref = a.astype(float) / 255.0 if a.dtype == np.uint8 else a.astype(float)
    test = b.astype(float) / 255.0 if b.dtype == np.uint8 else b.astype(float)

    hunt_ref, luma_ref = _preprocess(ref, pixels_per_degree)
    hunt_test, luma_test = _preprocess(test, pixels_per_degree)

    green = _hunt(_linear_to_lab(np.array([0.0, 1.0, 0.0])))
    blue = _hunt(_linear_to_lab(np.array([0.0, 0.0, 1.0])))
    cmax = _hyab(green, blue) ** QC
    pccmax = PC * cmax

    de = _hyab(hunt_ref, hunt_test) ** QC
    color = np.where(
        de < pccmax,
        de * PT / pccmax,
        PT + (de - pccmax) / (cmax - pccmax) * (1.0 - PT),
    )

    edges_ref, points_ref = _feature_maps(luma_ref, pixels_per_degree)
    edges_test, points_test = _feature_maps(luma_test, pixels_per_degree)
    feat = np.maximum(
        np.abs(edges_ref - edges_test), np.abs(points_ref - points_test)
    )
    feat = (feat / np.sqrt(2.0)) ** QF
    return np.power(color, 1.0 - feat)


def flip(a, b, pixels_per_degree=DEFAULT_PIXELS_PER_DEGREE):
    """Mean FLIP error over the image; 0 iff identical, near 1 for opposites."""
    return float(np.mean(flip_error_map(a, b, pixels_per_degree)))


def one_minus_flip(a, b, pixels_per_degree=DEFAULT_PIXELS_PER_DEGREE):
    """Similarity form of FLIP matching SSIM polarity: 1 means identical."""
    return 1.0 - flip(a, b, pixels_per_degree)
