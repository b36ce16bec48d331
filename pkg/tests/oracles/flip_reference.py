"""Scalar reference for the FLIP image-difference pipeline.

Pure-Python, per-pixel loops; intended for small images only. Follows
the published low-dynamic-range FLIP pipeline: YCxCz opponent space,
Gaussian-sum contrast-sensitivity prefilters, Hunt-adjusted CIELAB with
the HyAB distance and error redistribution, plus edge/point feature
differences that sharpen the color error exponent.
"""

import math

# sRGB (D65) primaries.
RGB_TO_XYZ = (
    (0.4124564, 0.3575761, 0.1804375),
    (0.2126729, 0.7151522, 0.0721750),
    (0.0193339, 0.1191920, 0.9503041),
)
XYZ_TO_RGB = (
    (3.2404542, -1.5371385, -0.4985314),
    (-0.9692660, 1.8760108, 0.0415560),
    (0.0556434, -0.2040259, 1.0572252),
)
WHITE = (0.95047, 1.0, 1.08883)

QC = 0.7
QF = 0.5
PC = 0.4
PT = 0.95

CSF_PARAMS = {
    "A": (1.0, 0.0047, 0.0, 1e-5),
    "RG": (1.0, 0.0053, 0.0, 1e-5),
    "BY": (34.1, 0.04, 13.5, 0.025),
}


def srgb_to_linear(c):
    if c <= 0.04045:
        return c / 12.92
    return ((c + 0.055) / 1.055) ** 2.4


def mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))


def linear_rgb_to_ycxcz(rgb):
    xyz = mat_vec(RGB_TO_XYZ, rgb)
    x = xyz[0] / WHITE[0]
    y = xyz[1] / WHITE[1]
    z = xyz[2] / WHITE[2]
    return (116.0 * y - 16.0, 500.0 * (x - y), 200.0 * (y - z))


def ycxcz_to_linear_rgb(ycc):
    y = (ycc[0] + 16.0) / 116.0
    x = ycc[1] / 500.0 + y
    z = y - ycc[2] / 200.0
    xyz = (x * WHITE[0], y * WHITE[1], z * WHITE[2])
    return mat_vec(XYZ_TO_RGB, xyz)


def linear_rgb_to_lab(rgb):
    xyz = mat_vec(RGB_TO_XYZ, rgb)
    delta = 6.0 / 29.0

    def f(t):
        if t > delta**3:
            return t ** (1.0 / 3.0)
        return t / (3.0 * delta * delta) + 4.0 / 29.0

    fx = f(xyz[0] / WHITE[0])
    fy = f(xyz[1] / WHITE[1])
    fz = f(xyz[2] / WHITE[2])
    return (116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))


def hunt_adjust(lab):
    return (lab[0], 0.01 * lab[0] * lab[1], 0.01 * lab[0] * lab[2])


def hyab(p, q):
    return abs(p[0] - q[0]) + math.hypot(p[1] - q[1], p[2] - q[2])


def reflect(i, n):
    if i < 0:
        return -i - 1
    if i >= n:
        return 2 * n - 1 - i
    return i


def convolve(img, kernel):
    """Correlate a 2D list-of-lists with a kernel, symmetric padding."""
    h = len(img)
    w = len(img[0])
    kh = len(kernel)
    kw = len(kernel[0])
    ry = kh // 2
    rx = kw // 2
    out = [[0.0] * w for _ in range(h)]
    for i in range(h):
        for j in range(w):
            acc = 0.0
            for di in range(kh):
                ii = reflect(i + di - ry, h)
                row = img[ii]
                krow = kernel[di]
                for dj in range(kw):
                    jj = reflect(j + dj - rx, w)
                    acc += row[jj] * krow[dj]
            out[i][j] = acc
    return out


def csf_kernel(channel, ppd):
    a1, b1, a2, b2 = CSF_PARAMS[channel]
    bmax = max(b for p in CSF_PARAMS.values() for b in (p[1], p[3]))
    radius = int(math.ceil(3.0 * math.sqrt(bmax / (2.0 * math.pi**2)) * ppd))
    delta = 1.0 / ppd
    kernel = []
    total = 0.0
    for yy in range(-radius, radius + 1):
        row = []
        for xx in range(-radius, radius + 1):
            z = (xx * delta) ** 2 + (yy * delta) ** 2
            g = a1 * math.sqrt(math.pi / b1) * math.exp(-math.pi**2 * z / b1)
            g += a2 * math.sqrt(math.pi / b2) * math.exp(-math.pi**2 * z / b2)
            row.append(g)
            total += g
        kernel.append(row)
    return [[v / total for v in row] for row in kernel]


def detector_kernel(kind, ppd):
    sd = 0.5 * 0.082 * ppd
    radius = int(math.ceil(3.0 * sd))
    kernel = []
    for yy in range(-radius, radius + 1):
        row = []
        for xx in range(-radius, radius + 1):
            g = math.exp(-(xx * xx + yy * yy) / (2.0 * sd * sd))
            if kind == "edge":
                row.append(-xx * g)
            else:
                row.append((xx * xx / (sd * sd) - 1.0) * g)
        kernel.append(row)
    neg = -sum(v for row in kernel for v in row if v < 0.0)
    pos = sum(v for row in kernel for v in row if v > 0.0)
    return [
        [v / neg if v < 0.0 else (v / pos if v > 0.0 else 0.0) for v in row]
        for row in kernel
    ]


def transpose(kernel):
    return [list(row) for row in zip(*kernel)]


def _preprocess(srgb, ppd):
    """sRGB image (H,W,3 nested lists, [0,1]) -> filtered Hunt-Lab + luma."""
    h = len(srgb)
    w = len(srgb[0])
    ycc = [[linear_rgb_to_ycxcz(tuple(srgb_to_linear(c) for c in srgb[i][j]))
            for j in range(w)] for i in range(h)]
    planes = [[[ycc[i][j][c] for j in range(w)] for i in range(h)] for c in range(3)]
    filtered = [
        convolve(planes[0], csf_kernel("A", ppd)),
        convolve(planes[1], csf_kernel("RG", ppd)),
        convolve(planes[2], csf_kernel("BY", ppd)),
    ]
    hunt = [[None] * w for _ in range(h)]
    for i in range(h):
        for j in range(w):
            rgb = ycxcz_to_linear_rgb(
                (filtered[0][i][j], filtered[1][i][j], filtered[2][i][j])
            )
            rgb = tuple(min(1.0, max(0.0, c)) for c in rgb)
            hunt[i][j] = hunt_adjust(linear_rgb_to_lab(rgb))
    luma = [[(ycc[i][j][0] + 16.0) / 116.0 for j in range(w)] for i in range(h)]
    return hunt, luma


def _feature_maps(luma, ppd):
    ex = detector_kernel("edge", ppd)
    px = detector_kernel("point", ppd)
    edge_x = convolve(luma, ex)
    edge_y = convolve(luma, transpose(ex))
    point_x = convolve(luma, px)
    point_y = convolve(luma, transpose(px))
    h = len(luma)
    w = len(luma[0])
    edges = [[math.hypot(edge_x[i][j], edge_y[i][j]) for j in range(w)]
             for i in range(h)]
    points = [[math.hypot(point_x[i][j], point_y[i][j]) for j in range(w)]
              for i in range(h)]
    return edges, points


def flip_reference(ref_srgb, test_srgb, ppd=67.0):
    """Mean FLIP error and per-pixel map for two sRGB images in [0, 1]."""
    h = len(ref_srgb)
    w = len(ref_srgb[0])
    hunt_ref, luma_ref = _preprocess(ref_srgb, ppd)
    hunt_test, luma_test = _preprocess(test_srgb, ppd)

    green = hunt_adjust(linear_rgb_to_lab((0.0, 1.0, 0.0)))
    blue = hunt_adjust(linear_rgb_to_lab((0.0, 0.0, 1.0)))
    cmax = hyab(green, blue) ** QC
    pccmax = PC * cmax

    edges_ref, points_ref = _feature_maps(luma_ref, ppd)
    edges_test, points_test = _feature_maps(luma_test, ppd)

    error = [[0.0] * w for _ in range(h)]
    total = 0.0
    for i in range(h):
        for j in range(w):
            de = hyab(hunt_ref[i][j], hunt_test[i][j]) ** QC
            if de < pccmax:
                color = de * PT / pccmax
            else:
                color = PT + (de - pccmax) / (cmax - pccmax) * (1.0 - PT)
            feat = max(
                abs(edges_ref[i][j] - edges_test[i][j]),
                abs(points_ref[i][j] - points_test[i][j]),
            )
            feat = (feat / math.sqrt(2.0)) ** QF
            err = color ** (1.0 - feat)
            error[i][j] = err
            total += err
    return {"error_map": error, "mean": total / (h * w)}
