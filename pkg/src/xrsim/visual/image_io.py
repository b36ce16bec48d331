"""Binary PNM image I/O: P6 (PPM) for RGB frames, 16-bit P5 (PGM) for phase masks."""

import numpy as np

TWO_PI = 2.0 * np.pi


def write_ppm(path, image):
    """Write an (H, W, 3) uint8 array as binary PPM (P6)."""
    image = np.asarray(image)
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
        raise ValueError("expected (H, W, 3) uint8 image")
    h, w = image.shape[:2]
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        f.write(image.tobytes())


def read_ppm(path):
    with open(path, "rb") as f:
        data = f.read()
    magic, w, h, maxval, offset = _parse_pnm_header(data)
    if magic != b"P6" or maxval != 255:
        raise ValueError("expected 8-bit binary PPM (P6)")
    return np.frombuffer(data, dtype=np.uint8, count=w * h * 3, offset=offset).reshape(
        h, w, 3
    )


def write_pgm16(path, gray):
    """Write an (H, W) uint16 array as binary PGM (P5), big-endian samples."""
    gray = np.asarray(gray)
    if gray.ndim != 2 or gray.dtype != np.uint16:
        raise ValueError("expected (H, W) uint16 image")
    h, w = gray.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n65535\n".encode("ascii"))
        f.write(gray.astype(">u2").tobytes())


def read_pgm16(path):
    with open(path, "rb") as f:
        data = f.read()
    magic, w, h, maxval, offset = _parse_pnm_header(data)
    if magic != b"P5" or maxval != 65535:
        raise ValueError("expected 16-bit binary PGM (P5)")
    return (
        np.frombuffer(data, dtype=">u2", count=w * h, offset=offset)
        .reshape(h, w)
        .astype(np.uint16)
    )


def phase_to_u16(phases):
    """Quantize radians in [0, 2pi) to the full 16-bit range."""
    return np.round(np.mod(phases, TWO_PI) / TWO_PI * 65535.0).astype(np.uint16)


def u16_to_phase(values):
    return values.astype(float) / 65535.0 * TWO_PI


def _parse_pnm_header(data):
    """Parse magic, dims, maxval; returns pixel-data offset. Handles comments."""
    tokens = []
    i = 0
    while len(tokens) < 4:
        while i < len(data) and data[i : i + 1].isspace():
            i += 1
        if data[i : i + 1] == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
            continue
        start = i
        while i < len(data) and not data[i : i + 1].isspace():
            i += 1
        tokens.append(data[start:i])
    i += 1  # single whitespace after maxval
    return tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3]), i
