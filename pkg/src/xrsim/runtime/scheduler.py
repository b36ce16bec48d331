"""Deadline-aware plugin scheduler.

Two clock modes share one interface:

* simulated -- a single-threaded discrete-event loop. Periodic plugins fire
  at exact multiples of their period; invocation compute time is modeled by
  the descriptor's cost. Runs are deterministic: ties at the same instant
  resolve in plugin registration order.
* wall -- persistent threads. Periodic plugins sleep until the next multiple
  of their period; triggered plugins run on a dispatch thread fed by a sync
  subscription to their trigger topic.

In both modes a triggered plugin processes every input event (queued, never
coalesced, never preempted), while a periodic plugin that overruns skips the
missed slots and records them with skipped=True.
"""

import heapq
import itertools
import threading
import time

from .clock import SimulatedClock, WallClock
from .plugin import InvocationRecord, Periodic, Triggered
from .switchboard import Switchboard, SwitchboardError, UnknownTopicError


class ConfigurationError(SwitchboardError):
    pass


class PluginContext:
    """Per-invocation view handed to a plugin callback."""

    def __init__(self, runtime, name, seq, now_ns, trigger=None):
        self._runtime = runtime
        self.plugin = name
        self.seq = seq
        self.now = now_ns
        self.trigger = trigger  # (value, ts) for triggered plugins
        self._pending = []  # publishes buffered until invocation end (sim mode)

    def read_latest(self, topic_name):
        return self._runtime.switchboard.topic(topic_name).read_latest()

    def publish(self, topic_name, value, ts=None):
        if topic_name not in self._runtime._writes_of[self.plugin]:
            raise SwitchboardError(
                f"plugin '{self.plugin}' does not declare writes to '{topic_name}'"
            )
        if ts is None:
            ts = self.now
        if self._runtime._simulated:
            self._pending.append((topic_name, value, ts))
        else:
            self._runtime.switchboard.topic(topic_name).publish(
                value, ts, writer=self.plugin
            )


class _TriggerState:
    __slots__ = ("reader", "busy_until_ns", "invoke_scheduled", "seq")

    def __init__(self, reader):
        self.reader = reader
        self.busy_until_ns = 0
        self.invoke_scheduled = False
        self.seq = 0


class Runtime:
    """Clock + switchboard + plugin registry + scheduler for one session."""

    def __init__(self, clock=None):
        self.clock = clock if clock is not None else SimulatedClock()
        self._simulated = self.clock.mode == "simulated"
        self.switchboard = Switchboard(mode=self.clock.mode)
        self._plugins = []  # registration order defines tie-breaking
        self._by_name = {}
        self._writes_of = {}

    # -- registration -----------------------------------------------------

    def create_topic(self, name, payload_kind=None):
        return self.switchboard.create_topic(name, payload_kind)

    def register_plugin(self, descriptor):
        if descriptor.name in self._by_name:
            raise ConfigurationError(f"duplicate plugin '{descriptor.name}'")
        for topic_name, _kind in descriptor.reads:
            self.switchboard.topic(topic_name)  # raises UnknownTopicError
        if isinstance(descriptor.mode, Triggered):
            self.switchboard.topic(descriptor.mode.topic_name)
        for topic_name in descriptor.writes:
            self.switchboard.topic(topic_name).bind_writer(descriptor.name)
        self._plugins.append(descriptor)
        self._by_name[descriptor.name] = descriptor
        self._writes_of[descriptor.name] = set(descriptor.writes)

    # -- shared helpers ----------------------------------------------------

    def _check_sync_cycles(self):
        """Reject cycles along synchronous (trigger) edges.

        Periodic plugins are time-driven and break any loop through them, so
        only trigger->write->trigger chains can deadlock the dataflow.
        """
        triggered = [p for p in self._plugins if isinstance(p.mode, Triggered)]
        writers = {}
        for p in triggered:
            for t in p.writes:
                writers.setdefault(t, p.name)
        edges = {p.name: [] for p in triggered}
        for p in triggered:
            src = writers.get(p.mode.topic_name)
            if src is not None:
                edges[src].append(p.name)

        state = {name: 0 for name in edges}  # 0 new, 1 visiting, 2 done

        def visit(name, stack):
            state[name] = 1
            for nxt in edges[name]:
                if state[nxt] == 1:
                    cycle = " -> ".join(stack + [nxt])
                    raise ConfigurationError(f"synchronous dependency cycle: {cycle}")
                if state[nxt] == 0:
                    visit(nxt, stack + [nxt])
            state[name] = 2

        for name in edges:
            if state[name] == 0:
                visit(name, [name])

    def _eval_cost(self, descriptor, ctx, returned):
        if returned is not None:
            return int(returned)
        cost = descriptor.cost_ns
        if cost is None:
            return 0
        if callable(cost):
            return int(cost(ctx))
        return int(cost)

    def _record(self, records, descriptor, seq, start, end, cpu, skipped):
        rec = InvocationRecord(
            plugin=descriptor.name,
            seq=seq,
            start_ns=start,
            end_ns=end,
            cpu_ns=cpu,
            deadline_met=(end - start) <= descriptor.deadline_ns,
            skipped=skipped,
        )
        records.append(rec)
        return rec

    def run(self, duration_ns):
        """Execute all registered plugins for duration_ns of session time.

        Returns the full invocation trace, ordered by start time (ties in
        registration order).
        """
        self._check_sync_cycles()
        if self._simulated:
            return self._run_simulated(duration_ns)
        return self._run_wall(duration_ns)

    # -- simulated mode ----------------------------------------------------

    def _run_simulated(self, duration_ns):
        records = []
        heap = []
        counter = itertools.count()
        reg_index = {p.name: i for i, p in enumerate(self._plugins)}

        def push(ts, plugin_name, kind, payload=None):
            heapq.heappush(
                heap, (ts, reg_index[plugin_name], next(counter), kind, plugin_name, payload)
            )

        trigger_states = {}
        triggers_on = {}  # topic name -> [plugin names]
        periodic_seq = {}
        periodic_busy = {}

        for p in self._plugins:
            if isinstance(p.mode, Periodic):
                periodic_seq[p.name] = 0
                periodic_busy[p.name] = 0
                if p.mode.slot(0) < duration_ns:
                    push(p.mode.slot(0), p.name, "slot")
            else:
                topic = self.switchboard.topic(p.mode.topic_name)
                trigger_states[p.name] = _TriggerState(topic.subscribe_sync())
                triggers_on.setdefault(p.mode.topic_name, []).append(p.name)

        def apply_publishes(publisher, pending):
            touched = []
            for topic_name, value, ts in pending:
                self.switchboard.topic(topic_name).publish(value, ts, writer=publisher)
                touched.append(topic_name)
            for topic_name in touched:
                for consumer in triggers_on.get(topic_name, ()):
                    st = trigger_states[consumer]
                    if not st.invoke_scheduled and len(st.reader):
                        at = max(self.clock.now, st.busy_until_ns)
                        st.invoke_scheduled = True
                        push(at, consumer, "invoke")

        def execute(descriptor, seq, start, trigger=None):
            ctx = PluginContext(self, descriptor.name, seq, start, trigger)
            returned = descriptor.callback(ctx)
            cost = self._eval_cost(descriptor, ctx, returned)
            end = start + cost
            self._record(records, descriptor, seq, start, end, cost, skipped=False)
            if ctx._pending:
                push(end, descriptor.name, "effect", ctx._pending)
            return end

        while heap:
            ts, _reg, _seq, kind, name, payload = heapq.heappop(heap)
            if ts >= duration_ns:
                break
            self.clock.advance_to(ts)
            descriptor = self._by_name[name]

            if kind == "slot":
                k = periodic_seq[name]
                periodic_seq[name] = k + 1
                if periodic_busy[name] > ts:
                    self._record(records, descriptor, k, ts, ts, 0, skipped=True)
                else:
                    periodic_busy[name] = execute(descriptor, k, ts)
                nxt = descriptor.mode.slot(periodic_seq[name])
                if nxt < duration_ns:
                    push(nxt, name, "slot")

            elif kind == "invoke":
                st = trigger_states[name]
                item = st.reader.pop()
                if item is None:
                    st.invoke_scheduled = False
                    continue
                st.seq += 1
                st.busy_until_ns = execute(descriptor, st.seq - 1, ts, trigger=item)
                if len(st.reader):
                    push(st.busy_until_ns, name, "invoke")
                else:
                    st.invoke_scheduled = False

            elif kind == "effect":
                apply_publishes(name, payload)

        if duration_ns > self.clock.now:
            self.clock.advance_to(duration_ns)
        return records

    # -- wall mode -----------------------------------------------------------

    def _run_wall(self, duration_ns):
        records = []
        records_lock = threading.Lock()
        stop = threading.Event()

        def add(rec):
            with records_lock:
                records.append(rec)

        def periodic_loop(descriptor):
            k = 0
            while not stop.is_set():
                target = descriptor.mode.slot(k)
                if target >= duration_ns:
                    break
                self.clock.sleep_until(target)
                if stop.is_set():
                    break
                start = self.clock.now
                cpu0 = time.thread_time_ns()
                ctx = PluginContext(self, descriptor.name, k, start)
                descriptor.callback(ctx)
                cpu = time.thread_time_ns() - cpu0
                end = self.clock.now
                self._record(records_with_lock, descriptor, k, start, end, cpu, False)
                k += 1
                # Slots that elapsed while the body ran are lost work.
                while descriptor.mode.slot(k) < min(end, duration_ns):
                    t = descriptor.mode.slot(k)
                    self._record(records_with_lock, descriptor, k, t, t, 0, True)
                    k += 1

        def triggered_loop(descriptor, reader):
            seq = 0
            while True:
                item = reader.pop(timeout=0.02)
                if item is None:
                    if stop.is_set() and len(reader) == 0:
                        break
                    continue
                start = self.clock.now
                cpu0 = time.thread_time_ns()
                ctx = PluginContext(self, descriptor.name, seq, start, trigger=item)
                descriptor.callback(ctx)
                cpu = time.thread_time_ns() - cpu0
                end = self.clock.now
                self._record(records_with_lock, descriptor, seq, start, end, cpu, False)
                seq += 1
                if stop.is_set() and start >= duration_ns:
                    break

        class _LockedList:
            def append(self, rec):
                add(rec)

        records_with_lock = _LockedList()

        threads = []
        for p in self._plugins:
            if isinstance(p.mode, Periodic):
                threads.append(threading.Thread(target=periodic_loop, args=(p,), daemon=True))
            else:
                reader = self.switchboard.topic(p.mode.topic_name).subscribe_sync()
                threads.append(
                    threading.Thread(target=triggered_loop, args=(p, reader), daemon=True)
                )
        for t in threads:
            t.start()
        self.clock.sleep_until(duration_ns)
        stop.set()
        for t in threads:
            t.join(timeout=5.0)
        records.sort(key=lambda r: (r.start_ns, r.plugin, r.seq))
        return records
