"""Typed event-stream switchboard.

Topics are single-writer, multi-reader channels supporting two read styles:

* synchronous readers see every published value, in order, exactly once
  (each reader owns a bounded queue);
* asynchronous readers sample the most recent value without blocking.

Values must be treated as immutable once published; the switchboard hands out
references, never copies.
"""

import threading
from collections import deque


class SwitchboardError(Exception):
    pass


class DuplicateTopicError(SwitchboardError):
    pass


class UnknownTopicError(SwitchboardError):
    pass


class WriterConflictError(SwitchboardError):
    pass


class OrderingError(SwitchboardError):
    """Timestamp regression on a stream."""


class QueueOverflowError(SwitchboardError):
    """A sync reader queue hit its bound in simulated mode (misconfiguration)."""


DEFAULT_QUEUE_CAPACITY = 4096


class SyncReader:
    """Handle for a synchronous subscription.

    In wall mode a full queue drops its oldest entry and counts the loss; in
    simulated mode overflow raises, since a simulated session that outpaces a
    reader is a configuration bug, not a runtime condition.
    """

    def __init__(self, topic, capacity, drop_oldest):
        self._topic = topic
        self._capacity = capacity
        self._drop_oldest = drop_oldest
        self._queue = deque()
        self._cond = threading.Condition()
        self.dropped = 0

    def _push(self, item):
        with self._cond:
            if len(self._queue) >= self._capacity:
                if self._drop_oldest:
                    self._queue.popleft()
                    self.dropped += 1
                else:
                    raise QueueOverflowError(
                        f"sync reader on '{self._topic.name}' exceeded "
                        f"{self._capacity} buffered values"
                    )
            self._queue.append(item)
            self._cond.notify()

    def __len__(self):
        with self._cond:
            return len(self._queue)

    def pop(self, timeout=None):
        """Next (value, ts) pair, or None if none arrives within timeout.

        timeout=None means do not block at all; use a positive timeout to wait.
        """
        with self._cond:
            if not self._queue and timeout:
                self._cond.wait(timeout)
            if not self._queue:
                return None
            return self._queue.popleft()

    def drain(self):
        """All buffered (value, ts) pairs, oldest first."""
        with self._cond:
            items = list(self._queue)
            self._queue.clear()
        return items


class Topic:
    """Single-writer, multi-reader event stream carrying one payload kind."""

    def __init__(self, name, payload_kind, drop_oldest):
        self.name = name
        self.payload_kind = payload_kind
        self._drop_oldest = drop_oldest
        self._lock = threading.Lock()
        self._writer = None
        self._latest = None  # (value, ts) tuple, replaced atomically
        self._last_ts = None
        self._sync_readers = []

    @property
    def writer(self):
        return self._writer

    def bind_writer(self, owner):
        with self._lock:
            if self._writer is not None and self._writer != owner:
                raise WriterConflictError(
                    f"topic '{self.name}' already written by '{self._writer}'"
                )
            self._writer = owner

    def publish(self, value, ts, writer=None):
        if self.payload_kind is not None and not isinstance(value, self.payload_kind):
            raise TypeError(
                f"topic '{self.name}' carries {self.payload_kind.__name__}, "
                f"got {type(value).__name__}"
            )
        with self._lock:
            if self._writer is not None and writer is not None and writer != self._writer:
                raise WriterConflictError(
                    f"'{writer}' is not the writer of topic '{self.name}'"
                )
            if self._last_ts is not None and ts < self._last_ts:
                raise OrderingError(
                    f"topic '{self.name}': ts {ts} < previous {self._last_ts}"
                )
            self._last_ts = ts
            readers = list(self._sync_readers)
            # Single assignment: async readers always observe a complete pair.
            self._latest = (value, ts)
        for reader in readers:
            reader._push((value, ts))

    def read_latest(self):
        """Most recent (value, ts), or None if nothing published yet."""
        return self._latest

    def subscribe_sync(self, capacity=DEFAULT_QUEUE_CAPACITY):
        reader = SyncReader(self, capacity, self._drop_oldest)
        with self._lock:
            self._sync_readers.append(reader)
        return reader


class Switchboard:
    """Registry of topics for one session.

    mode selects the sync-queue overflow policy: 'simulated' treats overflow
    as a hard error, 'wall' drops oldest and counts.
    """

    def __init__(self, mode="simulated"):
        if mode not in ("simulated", "wall"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self._topics = {}
        self._lock = threading.Lock()

    def create_topic(self, name, payload_kind=None):
        with self._lock:
            if name in self._topics:
                raise DuplicateTopicError(f"topic '{name}' already exists")
            topic = Topic(name, payload_kind, drop_oldest=(self.mode == "wall"))
            self._topics[name] = topic
            return topic

    def topic(self, name):
        try:
            return self._topics[name]
        except KeyError:
            raise UnknownTopicError(f"no topic '{name}'") from None

    def topics(self):
        return dict(self._topics)
