"""Per-component rate, execution-time, and CPU-share statistics."""

from dataclasses import dataclass

import numpy as np

from ..runtime.clock import NANOS_PER_SEC


@dataclass(frozen=True)
class ComponentStats:
    """Execution statistics for one plugin over a session."""

    name: str
    target_rate_hz: float
    achieved_rate_hz: float
    mean_ms: float
    std_ms: float
    deadline_miss_fraction: float
    skip_count: int
    invocations: int


def frame_stats(trace, targets, duration_ns):
    """Aggregate a trace into per-component ComponentStats.

    targets maps plugin name to its target rate in Hz (0 for triggered
    plugins with no fixed rate). Achieved rate counts executed (not
    skipped) invocations over the session span; execution-time stats use
    the population standard deviation.
    """
    if not trace:
        raise ValueError("trace is empty")
    if duration_ns <= 0:
        raise ValueError("duration_ns must be positive")
    by_name = {}
    for rec in trace:
        by_name.setdefault(rec.plugin, []).append(rec)

    out = {}
    for name, recs in sorted(by_name.items()):
        ran = [r for r in recs if not r.skipped]
        durations_ms = np.array([(r.end_ns - r.start_ns) / 1e6 for r in ran])
        misses = sum(1 for r in ran if not r.deadline_met)
        out[name] = ComponentStats(
            name=name,
            target_rate_hz=float(targets.get(name, 0.0)),
            achieved_rate_hz=len(ran) * NANOS_PER_SEC / duration_ns,
            mean_ms=float(durations_ms.mean()) if ran else 0.0,
            std_ms=float(durations_ms.std()) if ran else 0.0,
            deadline_miss_fraction=misses / len(ran) if ran else 0.0,
            skip_count=sum(1 for r in recs if r.skipped),
            invocations=len(ran),
        )
    return out


def cpu_attribution(trace):
    """Fraction of total recorded CPU time consumed by each plugin."""
    totals = {}
    for rec in trace:
        totals[rec.plugin] = totals.get(rec.plugin, 0) + rec.cpu_ns
    grand = sum(totals.values())
    if grand == 0:
        return {name: 0.0 for name in totals}
    return {name: t / grand for name, t in sorted(totals.items())}
