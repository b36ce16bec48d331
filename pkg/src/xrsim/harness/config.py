"""Session configuration: defaults, validation, and key=value round-trip."""

import zlib
from dataclasses import dataclass, fields

import numpy as np

from ..runtime.clock import NANOS_PER_SEC

# Tuning ranges the rates must stay inside.
CAMERA_RATE_RANGE = (15.0, 100.0)
IMU_RATE_RANGE = (100.0, 800.0)
DISPLAY_RATE_RANGE = (30.0, 144.0)
AUDIO_RATE_RANGE = (48.0, 96.0)
AUDIO_BLOCK_RANGE = (256, 2048)

PLUGIN_NAMES = (
    "camera",
    "imu",
    "vio",
    "integrator",
    "app",
    "reprojection",
    "audio_encode",
    "audio_playback",
)


@dataclass(frozen=True)
class SessionConfig:
    """Flat, serializable knobs for one session."""

    camera_rate_hz: float = 15.0
    imu_rate_hz: float = 500.0
    display_rate_hz: float = 120.0
    audio_rate_hz: float = 48.0
    audio_block: int = 1024
    audio_sample_rate: int = 48000
    audio_order: int = 2
    width: int = 2560
    height: int = 1440
    fov_deg: float = 90.0
    camera_width: int = 64
    camera_height: int = 48
    duration_s: float = 10.0
    seed: int = 0
    clock: str = "simulated"
    quality_samples: int = 3
    scene_seed: int = 7
    rpe_delta_s: float = 1.0
    pixels_per_degree: float = 67.0
    zoom: float = 0.0

    trajectory_radius_m: float = 1.0
    trajectory_rate_rad_s: float = 0.5
    trajectory_height_m: float = 1.5
    trajectory_yaw_amplitude_rad: float = 0.3
    trajectory_yaw_frequency_hz: float = 0.5

    imu_gyro_sigma: float = 0.0
    imu_accel_sigma: float = 0.0
    vio_latency_ms: float = 50.0
    vio_pos_sigma_m: float = 0.0
    vio_rot_sigma_deg: float = 0.0
    vio_drift_rate_m_s: float = 0.0
    vio_walk_sigma: float = 0.0
    vio_yaw_drift_deg_s: float = 0.0

    # Synthetic per-invocation compute costs, milliseconds:
    # "constant:c" | "normal:mean,std" | "lognormal:mu,sigma".
    cost_camera: str = "constant:0"
    cost_imu: str = "constant:0"
    cost_integrator: str = "constant:0"
    cost_app: str = "constant:0"
    cost_reprojection: str = "constant:0"
    cost_audio_encode: str = "constant:0"
    cost_audio_playback: str = "constant:0"

    def deadline_ns(self, rate_hz):
        return int(round(NANOS_PER_SEC / rate_hz))

    @property
    def duration_ns(self):
        return int(round(self.duration_s * NANOS_PER_SEC))


def _coerce(field_type, raw, key):
    raw = raw.strip()
    if field_type is int:
        return int(raw)
    if field_type is float:
        return float(raw)
    if field_type is str:
        return raw
    raise ValueError(f"unsupported config field type for {key}")


def parse_config(text):
    """Parse 'key = value' lines (# comments, blank lines ignored)."""
    known = {f.name: f.type for f in fields(SessionConfig)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        values[key] = _coerce(known[key], raw, key)
    return SessionConfig(**values)


def serialize_config(config):
    """Render a config as sorted 'key = value' lines; parse round-trips."""
    lines = [
        f"{f.name} = {getattr(config, f.name)}"
        for f in sorted(fields(SessionConfig), key=lambda f: f.name)
    ]
    return "\n".join(lines) + "\n"


def parse_cost_spec(spec, plugin, seed):
    """Turn a cost distribution spec into a cost_ns callable.

    Draws are deterministic per (seed, plugin): reruns of the same config
    produce identical cost sequences.
    """
    kind, _, argstr = spec.partition(":")
    args = [float(a) for a in argstr.split(",") if a.strip()] if argstr else []
    rng = np.random.default_rng((seed, zlib.crc32(plugin.encode())))
    ms = 1e6

    if kind == "constant":
        if len(args) != 1 or args[0] < 0:
            raise ValueError(f"{plugin}: constant cost needs one value >= 0")
        const = int(round(args[0] * ms))
        return lambda ctx: const
    if kind == "normal":
        if len(args) != 2 or args[1] < 0:
            raise ValueError(f"{plugin}: normal cost needs mean,std with std >= 0")
        mean, std = args
        return lambda ctx: max(0, int(round(rng.normal(mean, std) * ms)))
    if kind == "lognormal":
        if len(args) != 2 or args[1] < 0:
            raise ValueError(f"{plugin}: lognormal cost needs mu,sigma with sigma >= 0")
        mu, sigma = args
        return lambda ctx: max(0, int(round(rng.lognormal(mu, sigma) * ms)))
    raise ValueError(f"{plugin}: unknown cost kind {kind!r}")


def validate_config(config):
    """Range-check a config; returns a list of violation strings (empty = ok)."""
    problems = []

    def check_range(name, value, lo, hi):
        if not lo <= value <= hi:
            problems.append(f"{name} = {value} outside [{lo}, {hi}]")

    check_range("camera_rate_hz", config.camera_rate_hz, *CAMERA_RATE_RANGE)
    check_range("imu_rate_hz", config.imu_rate_hz, *IMU_RATE_RANGE)
    check_range("display_rate_hz", config.display_rate_hz, *DISPLAY_RATE_RANGE)
    check_range("audio_rate_hz", config.audio_rate_hz, *AUDIO_RATE_RANGE)
    check_range("audio_block", config.audio_block, *AUDIO_BLOCK_RANGE)
    if config.audio_order not in (1, 2, 3):
        problems.append(f"audio_order = {config.audio_order} not in 1..3")
    if config.audio_sample_rate <= 0:
        problems.append("audio_sample_rate must be positive")
    if config.width <= 0 or config.height <= 0:
        problems.append("display resolution must be positive")
    if config.camera_width <= 0 or config.camera_height <= 0:
        problems.append("camera resolution must be positive")
    if not 0.0 < config.fov_deg < 180.0:
        problems.append(f"fov_deg = {config.fov_deg} outside (0, 180)")
    if config.duration_s <= 0:
        problems.append("duration_s must be positive")
    if config.clock not in ("simulated", "wall"):
        problems.append(f"clock = {config.clock!r} not simulated|wall")
    if config.quality_samples < 0:
        problems.append("quality_samples must be >= 0")
    if config.vio_latency_ms < 0:
        problems.append("vio_latency_ms must be >= 0")
    if config.rpe_delta_s <= 0 or config.rpe_delta_s >= config.duration_s:
        problems.append("rpe_delta_s must be in (0, duration_s)")
    if config.pixels_per_degree <= 0:
        problems.append("pixels_per_degree must be positive")
    for name in PLUGIN_NAMES:
        key = f"cost_{name}"
        if hasattr(config, key):
            try:
                parse_cost_spec(getattr(config, key), name, config.seed)
            except ValueError as exc:
                problems.append(f"{key}: {exc}")
    return problems
