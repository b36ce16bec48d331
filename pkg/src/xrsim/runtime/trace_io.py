"""CSV serialization of invocation traces.

Columns: plugin, seq, start_ns, end_ns, cpu_ns, deadline_met, skipped.
Booleans are written as 0/1 so the files are language-neutral.
"""

import csv

from .plugin import InvocationRecord

TRACE_FIELDS = ("plugin", "seq", "start_ns", "end_ns", "cpu_ns", "deadline_met", "skipped")


def write_trace(path, records):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(TRACE_FIELDS)
        for r in records:
            w.writerow(
                (
                    r.plugin,
                    r.seq,
                    r.start_ns,
                    r.end_ns,
                    r.cpu_ns,
                    int(r.deadline_met),
                    int(r.skipped),
                )
            )


def read_trace(path):
    records = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != TRACE_FIELDS:
            raise ValueError(f"unexpected trace header: {header}")
        for row in reader:
            records.append(
                InvocationRecord(
                    plugin=row[0],
                    seq=int(row[1]),
                    start_ns=int(row[2]),
                    end_ns=int(row[3]),
                    cpu_ns=int(row[4]),
                    deadline_met=bool(int(row[5])),
                    skipped=bool(int(row[6])),
                )
            )
    return records
