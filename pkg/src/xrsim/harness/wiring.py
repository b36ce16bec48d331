"""Assemble the full plugin graph for one session.

Eight plugins over eight topics:

    camera ---------> vio ----------------+
    imu ------------> integrator <--------+ (async re-anchor)
                          |
                          +--> app --> reprojection
                          |
    audio_encode ---> audio_playback <----+ (async listener pose)

Frames stay lazy: the app publishes a FrameRef naming the pose it would
render from, and the reprojection stage logs the warp it would apply.
Actual pixels for the logged pairs are produced after the run by the
session driver, which keeps the scheduling loop cheap without changing
what either stage observes.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from ..audio.ambisonics import encode
from ..audio.binaural import OverlapAddState, binauralize, make_synthetic_hrtf
from ..audio.blocks import SourceSpec
from ..audio.rotation import rotate_soundfield, zoom_soundfield
from ..perception.integrator import rk4_integrate
from ..perception.trajectory import (
    TrajectorySpec,
    ground_truth_pose,
    make_camera_frame,
    sample_imu,
)
from ..perception.types import PoseSample
from ..perception.vio import VioConfig, VioProxy
from ..runtime.clock import SimulatedClock, WallClock, millis, seconds
from ..runtime.plugin import Periodic, PluginDescriptor, Triggered
from ..runtime.scheduler import Runtime
from ..visual.camera import CameraModel
from ..visual.prediction import predict_pose
from .config import parse_cost_spec

TOPICS = (
    "camera",
    "imu",
    "vio_pose",
    "integrated_pose",
    "rendered_frame",
    "reprojected_frame",
    "audio_in",
    "audio_out",
)

# How far back the integrator keeps raw IMU samples for re-anchoring.
# Bounded by camera period + vio latency; 0.5 s covers every legal config.
IMU_KEEP_NS = seconds(0.5)

POSE_HISTORY = 5


@dataclass(frozen=True)
class FrameRef:
    """A rendered frame's identity without its pixels."""

    seq: int
    ts: int  # when the app produced it
    render_pose: object  # Pose the frame depicts
    display_ts: int  # vsync the app aimed for
    fallback: bool  # pose was held, not extrapolated


@dataclass(frozen=True)
class ReprojectionEvent:
    """One reprojection invocation: which frame was warped to which pose."""

    seq: int
    ts: int  # invocation start
    source_seq: int  # app frame consumed; None when no frame existed yet
    source_ts: int
    render_pose: object
    display_pose: object  # predicted head pose at target_display_ts
    target_display_ts: int
    newest_imu_ts: int  # freshest pose sample feeding the prediction


def _tone_sources(config):
    """Two fixed tones, pregenerated for the whole session.

    A 440 Hz tone front-left and a 554 Hz tone hard right give the
    binaural output an unambiguous left/right signature.
    """
    n_blocks = int(np.ceil(config.duration_s * config.audio_rate_hz)) + 1
    n = n_blocks * config.audio_block
    t = np.arange(n) / config.audio_sample_rate
    tone_a = np.round(0.40 * np.sin(2 * np.pi * 440.0 * t) * 32767.0).astype(np.int16)
    tone_b = np.round(0.25 * np.sin(2 * np.pi * 554.37 * t) * 32767.0).astype(np.int16)
    inv = 1.0 / np.sqrt(2.0)
    return [
        SourceSpec(samples=tone_a, direction=(inv, inv, 0.0), gain=1.0),
        SourceSpec(samples=tone_b, direction=(0.0, -1.0, 0.0), gain=1.0),
    ]


class SessionState:
    """Everything the callbacks share, plus what post-run analysis needs."""

    def __init__(self, config):
        self.config = config
        self.spec = TrajectorySpec(
            radius_m=config.trajectory_radius_m,
            angular_rate_rad_s=config.trajectory_rate_rad_s,
            height_m=config.trajectory_height_m,
            yaw_amplitude_rad=config.trajectory_yaw_amplitude_rad,
            yaw_frequency_hz=config.trajectory_yaw_frequency_hz,
            seed=config.seed,
        )
        self.vio = VioProxy(
            VioConfig(
                latency_ms=config.vio_latency_ms,
                pos_sigma=config.vio_pos_sigma_m,
                rot_sigma_deg=config.vio_rot_sigma_deg,
                drift_rate=config.vio_drift_rate_m_s,
                walk_sigma=config.vio_walk_sigma,
                yaw_drift_deg_s=config.vio_yaw_drift_deg_s,
                seed=config.seed,
            )
        )
        self.display_cam = CameraModel.from_fov(config.width, config.height, config.fov_deg)
        self.display_period = Periodic.from_rate_hz(config.display_rate_hz).period_ns

        # integrator state
        self.anchor = ground_truth_pose(self.spec, 0)
        self.last_integrated = None
        self.prev_sample = None
        self.imu_recent = deque()

        # async pose views kept by the consumers (newest-last, deduped)
        self.app_history = deque(maxlen=POSE_HISTORY)
        self.reproj_history = deque(maxlen=POSE_HISTORY)

        # audio state
        self.sources = _tone_sources(config)
        self.hrtf = make_synthetic_hrtf(order=config.audio_order)
        self.overlap = OverlapAddState(num_outputs=2, fir_len=self.hrtf.fir_len)

        # products of the run
        self.integrated = []
        self.frame_refs = {}
        self.reproj_events = []
        self.audio_blocks = []
        self.frame_seq = 0


def _track(history, latest):
    """Append read_latest output to a consumer-held history, newest only."""
    if latest is None:
        return
    sample = latest[0]
    if not history or sample.ts > history[-1].ts:
        history.append(sample)


def _on_camera(state):
    def callback(ctx):
        frame = make_camera_frame(
            state.spec, ctx.now, width=state.config.camera_width,
            height=state.config.camera_height,
        )
        ctx.publish("camera", frame)

    return callback


def _on_vio(state):
    def callback(ctx):
        frame, _ts = ctx.trigger
        truth = ground_truth_pose(state.spec, frame.ts)
        estimate = state.vio.process(frame, truth)
        # The publish lands when this invocation's modeled cost elapses,
        # which is exactly the processing latency.
        ctx.publish("vio_pose", estimate, ts=frame.ts)

    return callback


def _on_imu(state):
    def callback(ctx):
        cfg = state.config
        sample = sample_imu(
            state.spec, ctx.now,
            gyro_sigma=cfg.imu_gyro_sigma, accel_sigma=cfg.imu_accel_sigma,
        )
        ctx.publish("imu", sample)

    return callback


def _on_integrator(state):
    def callback(ctx):
        sample, _ts = ctx.trigger
        state.imu_recent.append(sample)
        horizon = sample.ts - IMU_KEEP_NS
        while state.imu_recent and state.imu_recent[0].ts < horizon:
            state.imu_recent.popleft()

        latest_vio = ctx.read_latest("vio_pose")
        if latest_vio is not None and latest_vio[0].ts > state.anchor.ts:
            # Fresh correction: restart the integration from it, replaying
            # every sample recorded since the anchor's timestamp.
            state.anchor = latest_vio[0]
            window = [s for s in state.imu_recent if s.ts > state.anchor.ts]
            estimate = rk4_integrate(state.anchor, window, sample.ts)
        elif state.last_integrated is None:
            window = [s for s in state.imu_recent if s.ts > state.anchor.ts]
            estimate = rk4_integrate(state.anchor, window, sample.ts)
        else:
            estimate = rk4_integrate(
                state.last_integrated, [state.prev_sample, sample], sample.ts
            )
        published = PoseSample(
            pose=estimate.pose, ts=sample.ts, source="integrator",
            linear_velocity=estimate.linear_velocity,
        )
        state.last_integrated = published
        state.prev_sample = sample
        state.integrated.append(published)
        ctx.publish("integrated_pose", published)

    return callback


def _on_app(state):
    def callback(ctx):
        _track(state.app_history, ctx.read_latest("integrated_pose"))
        if not state.app_history:
            return
        display_ts = ctx.now + state.display_period
        predicted = predict_pose(list(state.app_history), int(display_ts))
        ref = FrameRef(
            seq=state.frame_seq, ts=ctx.now, render_pose=predicted.pose,
            display_ts=int(display_ts), fallback=predicted.fallback,
        )
        state.frame_seq += 1
        state.frame_refs[ref.seq] = ref
        ctx.publish("rendered_frame", ref)

    return callback


def _on_reprojection(state):
    def callback(ctx):
        _track(state.reproj_history, ctx.read_latest("integrated_pose"))
        latest_frame = ctx.read_latest("rendered_frame")
        if latest_frame is None or not state.reproj_history:
            return
        ref = latest_frame[0]
        target_ts = ctx.now + state.display_period
        predicted = predict_pose(list(state.reproj_history), int(target_ts))
        event = ReprojectionEvent(
            seq=ctx.seq,
            ts=ctx.now,
            source_seq=ref.seq,
            source_ts=ref.ts,
            render_pose=ref.render_pose,
            display_pose=predicted.pose,
            target_display_ts=int(target_ts),
            newest_imu_ts=state.reproj_history[-1].ts,
        )
        state.reproj_events.append(event)
        ctx.publish("reprojected_frame", event)

    return callback


def _on_audio_encode(state):
    def callback(ctx):
        cfg = state.config
        block = encode(
            state.sources, cfg.audio_order, ctx.seq,
            block_size=cfg.audio_block, sample_rate=cfg.audio_sample_rate,
        )
        ctx.publish("audio_in", block)

    return callback


def _on_audio_playback(state):
    def callback(ctx):
        block, _ts = ctx.trigger
        latest = ctx.read_latest("integrated_pose")
        if latest is not None:
            block = rotate_soundfield(block, latest[0].pose.orientation)
        if state.config.zoom != 0.0:
            block = zoom_soundfield(block, state.config.zoom)
        stereo = binauralize(block, state.hrtf, state.overlap)
        state.audio_blocks.append(stereo.samples)
        ctx.publish("audio_out", stereo)

    return callback


def wire_session(config):
    """Build a Runtime with the full pipeline graph; returns (runtime, state)."""
    clock = SimulatedClock() if config.clock == "simulated" else WallClock()
    runtime = Runtime(clock=clock)
    state = SessionState(config)
    for name in TOPICS:
        runtime.create_topic(name)

    def cost(plugin):
        return parse_cost_spec(getattr(config, f"cost_{plugin}"), plugin, config.seed)

    camera_deadline = config.deadline_ns(config.camera_rate_hz)
    imu_deadline = config.deadline_ns(config.imu_rate_hz)
    display_deadline = config.deadline_ns(config.display_rate_hz)
    audio_deadline = config.deadline_ns(config.audio_rate_hz)

    descriptors = [
        PluginDescriptor(
            name="camera",
            mode=Periodic.from_rate_hz(config.camera_rate_hz),
            deadline_ns=camera_deadline,
            callback=_on_camera(state),
            writes=["camera"],
            cost_ns=cost("camera"),
        ),
        PluginDescriptor(
            name="imu",
            mode=Periodic.from_rate_hz(config.imu_rate_hz),
            deadline_ns=imu_deadline,
            callback=_on_imu(state),
            writes=["imu"],
            cost_ns=cost("imu"),
        ),
        PluginDescriptor(
            name="vio",
            mode=Triggered("camera"),
            deadline_ns=camera_deadline,
            callback=_on_vio(state),
            reads=[("camera", "sync")],
            writes=["vio_pose"],
            cost_ns=millis(config.vio_latency_ms),
        ),
        PluginDescriptor(
            name="integrator",
            mode=Triggered("imu"),
            deadline_ns=imu_deadline,
            callback=_on_integrator(state),
            reads=[("imu", "sync"), ("vio_pose", "async")],
            writes=["integrated_pose"],
            cost_ns=cost("integrator"),
        ),
        PluginDescriptor(
            name="app",
            mode=Periodic.from_rate_hz(config.display_rate_hz),
            deadline_ns=display_deadline,
            callback=_on_app(state),
            reads=[("integrated_pose", "async")],
            writes=["rendered_frame"],
            cost_ns=cost("app"),
        ),
        PluginDescriptor(
            name="reprojection",
            mode=Periodic.from_rate_hz(config.display_rate_hz),
            deadline_ns=display_deadline,
            callback=_on_reprojection(state),
            reads=[("rendered_frame", "async"), ("integrated_pose", "async")],
            writes=["reprojected_frame"],
            cost_ns=cost("reprojection"),
        ),
        PluginDescriptor(
            name="audio_encode",
            mode=Periodic.from_rate_hz(config.audio_rate_hz),
            deadline_ns=audio_deadline,
            callback=_on_audio_encode(state),
            writes=["audio_in"],
            cost_ns=cost("audio_encode"),
        ),
        PluginDescriptor(
            name="audio_playback",
            mode=Triggered("audio_in"),
            deadline_ns=audio_deadline,
            callback=_on_audio_playback(state),
            reads=[("audio_in", "sync"), ("integrated_pose", "async")],
            writes=["audio_out"],
            cost_ns=cost("audio_playback"),
        ),
    ]
    for descriptor in descriptors:
        runtime.register_plugin(descriptor)
    return runtime, state
