"""
Two ways to read an event stream: every value, or the freshest one
==================================================================

One writer owns each topic.  A synchronous reader gets its own queue
and sees every published value in order, exactly once; that is what a
VIO front end needs, since skipping a camera frame breaks feature
tracks.  An asynchronous reader just asks for the latest value and is
the right tool when only freshness matters, as with a reprojector that
grabs whatever pose estimate is newest at warp time.

The demo runs a writer thread against both reader kinds at once and
then shows the overflow policy: a bounded sync queue refuses silent
loss.

    python3 demos/event_streams.py
"""

import threading
import time

import numpy as np

from xrsim.runtime import QueueOverflowError, Switchboard

sb = Switchboard()
topic = sb.create_topic("pose")
queue = topic.subscribe_sync(capacity=4096)

N = 2000
seen_latest = []


def writer():
    for i in range(N):
        topic.publish(i, ts=i, writer="producer")
        if i % 50 == 49:
            time.sleep(0.001)  # pace the stream so both readers overlap it


def sampler():
    # Async taste: sample whatever is newest at a leisurely 1 kHz.
    while topic.read_latest() is None or topic.read_latest()[0] < N - 1:
        latest = topic.read_latest()
        if latest is not None:
            seen_latest.append(latest[0])
        time.sleep(0.001)


t_w = threading.Thread(target=writer)
t_s = threading.Thread(target=sampler)
t_w.start()
t_s.start()

# Sync taste: drain the queue concurrently, expecting no gaps.
got = []
while len(got) < N:
    item = queue.pop(timeout=1.0)
    if item is not None:
        got.append(item[0])
t_w.join()
t_s.join()

assert got == list(range(N))
print(f"sync reader: {len(got)} values, in order, exactly once")

jumps = np.diff(np.array(seen_latest))
assert (jumps >= 0).all()
print(
    f"async reader: {len(seen_latest)} samples, monotone, never stale; "
    f"a typical sample skipped past {int(np.median(jumps))} unread values"
)

# A sync queue that cannot keep up raises instead of dropping silently.
tiny = sb.create_topic("firehose")
sub = tiny.subscribe_sync(capacity=8)
try:
    for i in range(9):
        tiny.publish(i, ts=i, writer="producer")
except QueueOverflowError as exc:
    print(f"overflow policy: {exc}")
else:
    raise AssertionError("overflow went unnoticed")
