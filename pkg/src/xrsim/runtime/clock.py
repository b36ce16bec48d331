"""Session clocks.

All timestamps are integer nanoseconds since session start: integers never
accumulate rounding error over a session the way floats do.
"""

import time

NANOS_PER_SEC = 1_000_000_000


def seconds(s):
    """Convert seconds (int or float) to integer nanoseconds."""
    return int(round(s * NANOS_PER_SEC))


def millis(ms):
    """Convert milliseconds to integer nanoseconds."""
    return int(round(ms * 1_000_000))


def to_seconds(ns):
    return ns / NANOS_PER_SEC


class SimulatedClock:
    """Discrete simulated clock; time advances only via explicit step.

    Two runs with identical configuration and seeds see identical timelines
    because nothing here depends on the host.
    """

    mode = "simulated"

    def __init__(self, start_ns=0):
        self._now = int(start_ns)

    @property
    def now(self):
        return self._now

    def advance_to(self, ts_ns):
        if ts_ns < self._now:
            raise ValueError(f"clock cannot move backwards: {ts_ns} < {self._now}")
        self._now = int(ts_ns)


class WallClock:
    """Monotonic wall clock reporting nanoseconds since construction."""

    mode = "wall"

    def __init__(self):
        self._origin = time.monotonic_ns()

    @property
    def now(self):
        return time.monotonic_ns() - self._origin

    def sleep_until(self, ts_ns):
        remaining = ts_ns - self.now
        if remaining > 0:
            time.sleep(remaining / NANOS_PER_SEC)
