"""Schedulable components and their invocation traces."""

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Periodic:
    """Fire at every multiple of period.

    period_ns may be a Fraction so that non-divisor rates (e.g. 15 Hz in
    integer nanoseconds) keep exact slot arithmetic: slot k is at
    floor(k * period_ns).
    """

    period_ns: object  # int or Fraction

    def __post_init__(self):
        if self.period_ns <= 0:
            raise ValueError("period must be positive")

    def slot(self, k):
        return int(k * self.period_ns)

    @classmethod
    def from_rate_hz(cls, rate_hz):
        return cls(Fraction(1_000_000_000) / Fraction(rate_hz))


@dataclass(frozen=True)
class Triggered:
    """Fire once per value published on the trigger topic."""

    topic_name: str


@dataclass
class PluginDescriptor:
    """A schedulable component behind the uniform plugin interface.

    callback(ctx) runs once per invocation; for triggered plugins ctx.trigger
    holds the (value, ts) pair being processed. reads lists
    (topic_name, "sync"|"async") declarations; writes lists topic names this
    plugin is the single writer of.

    cost_ns, when set, models the invocation's compute time in simulated mode
    (callable taking the invocation ctx, or a constant); wall mode ignores it.
    """

    name: str
    mode: object  # Periodic | Triggered
    deadline_ns: int
    callback: object
    reads: list = field(default_factory=list)
    writes: list = field(default_factory=list)
    cost_ns: object = None

    def __post_init__(self):
        if self.deadline_ns <= 0:
            raise ValueError(f"plugin '{self.name}': deadline must be positive")
        if not isinstance(self.mode, (Periodic, Triggered)):
            raise TypeError(f"plugin '{self.name}': mode must be Periodic or Triggered")
        for entry in self.reads:
            if entry[1] not in ("sync", "async"):
                raise ValueError(f"plugin '{self.name}': read kind {entry[1]!r}")


@dataclass
class InvocationRecord:
    """One scheduled slot or trigger of a plugin.

    Skipped records mark periodic slots that were missed because the previous
    invocation was still running; they have zero duration.
    """

    plugin: str
    seq: int
    start_ns: int
    end_ns: int
    cpu_ns: int
    deadline_met: bool
    skipped: bool

    def __post_init__(self):
        if self.end_ns < self.start_ns:
            raise ValueError("invocation ends before it starts")
        if self.skipped and self.end_ns != self.start_ns:
            raise ValueError("skipped records have zero duration")
