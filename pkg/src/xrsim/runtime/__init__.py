"""Event-stream runtime: clocks, switchboard, plugin scheduler, trace I/O."""

from .clock import NANOS_PER_SEC, SimulatedClock, WallClock, millis, seconds, to_seconds
from .plugin import InvocationRecord, Periodic, PluginDescriptor, Triggered
from .scheduler import ConfigurationError, PluginContext, Runtime
from .switchboard import (
    DEFAULT_QUEUE_CAPACITY,
    DuplicateTopicError,
    OrderingError,
    QueueOverflowError,
    SwitchboardError,
    Switchboard,
    SyncReader,
    Topic,
    UnknownTopicError,
    WriterConflictError,
)
from .trace_io import TRACE_FIELDS, read_trace, write_trace

__all__ = [
    "NANOS_PER_SEC",
    "SimulatedClock",
    "WallClock",
    "millis",
    "seconds",
    "to_seconds",
    "InvocationRecord",
    "Periodic",
    "PluginDescriptor",
    "Triggered",
    "ConfigurationError",
    "PluginContext",
    "Runtime",
    "DEFAULT_QUEUE_CAPACITY",
    "DuplicateTopicError",
    "OrderingError",
    "QueueOverflowError",
    "SwitchboardError",
    "Switchboard",
    "SyncReader",
    "Topic",
    "UnknownTopicError",
    "WriterConflictError",
    "TRACE_FIELDS",
    "read_trace",
    "write_trace",
]
