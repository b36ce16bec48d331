"""Session harness: configuration, pipeline wiring, execution, replay, CLI."""

from .config import (
    AUDIO_BLOCK_RANGE,
    AUDIO_RATE_RANGE,
    CAMERA_RATE_RANGE,
    DISPLAY_RATE_RANGE,
    IMU_RATE_RANGE,
    PLUGIN_NAMES,
    SessionConfig,
    parse_config,
    parse_cost_spec,
    serialize_config,
    validate_config,
)
from .session import replay_session, run_session
from .wiring import FrameRef, ReprojectionEvent, SessionState, wire_session

__all__ = [
    "AUDIO_BLOCK_RANGE",
    "AUDIO_RATE_RANGE",
    "CAMERA_RATE_RANGE",
    "DISPLAY_RATE_RANGE",
    "IMU_RATE_RANGE",
    "PLUGIN_NAMES",
    "SessionConfig",
    "parse_config",
    "parse_cost_spec",
    "serialize_config",
    "validate_config",
    "replay_session",
    "run_session",
    "FrameRef",
    "ReprojectionEvent",
    "SessionState",
    "wire_session",
]
