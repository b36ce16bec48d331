"""Drive a configured session end to end and write its dataset.

Dataset layout under the output directory:

    config.txt           key = value configuration (parse round-trips)
    trace.csv            full invocation trace
    mtp.csv              per displayed frame motion-to-photon legs
    trajectory_est.csv   integrated pose stream
    trajectory_gt.csv    ground truth at the same timestamps
    frames/              actual_XXX.ppm / ideal_XXX.ppm + index.csv
    audio_out.wav        binaural playback output
    report.txt           JSON session report
    report.csv           quality aggregates, one row

replay_session rebuilds the report from the dataset alone; a complete
dataset reproduces the original report byte for byte, a truncated one
yields a report flagged partial with the missing parts zeroed.
"""

import csv
import json
import time
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..metrics.flip import one_minus_flip
from ..metrics.frame_stats import cpu_attribution, frame_stats
from ..metrics.mtp import (
    AR_LATENCY_BUDGET_MS,
    VR_LATENCY_BUDGET_MS,
    MtpRecord,
    record_mtp,
)
from ..metrics.report import QualityReport
from ..metrics.ssim import ssim
from ..metrics.trajectory_error import align_trajectories, ate, rpe
from ..perception.trajectory import ground_truth_pose
from ..perception.trajectory_io import read_trajectory, write_trajectory
from ..runtime.clock import seconds
from ..runtime.plugin import Periodic
from ..runtime.scheduler import ConfigurationError
from ..runtime.trace_io import read_trace, write_trace
from ..visual.image_io import read_ppm, write_ppm
from ..visual.render import render_app
from ..visual.reprojection import reproject
from ..audio.wav_io import write_wav
from .config import parse_config, serialize_config, validate_config
from .wiring import wire_session

MTP_FIELDS = ("frame_seq", "ts", "t_imu_age_ms", "t_reprojection_ms", "t_swap_ms", "total_ms")
INDEX_FIELDS = (
    "instant",
    "reproj_seq",
    "source_seq",
    "source_ts",
    "target_display_ts",
    "ssim",
    "one_minus_flip",
)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _next_display_slot(end_ns, period):
    """First display slot strictly after end_ns; period is a Fraction."""
    k = Fraction(end_ns) // period + 1
    slot = int(k * period)
    while slot <= end_ns:
        k += 1
        slot = int(k * period)
    return slot


def _mtp_from_trace(config, trace, events_by_seq):
    period = Periodic.from_rate_hz(config.display_rate_hz).period_ns
    records = []
    for rec in trace:
        if rec.plugin != "reprojection" or rec.skipped:
            continue
        event = events_by_seq.get(rec.seq)
        if event is None:
            continue
        records.append(
            record_mtp(
                imu_sample_ts=event.newest_imu_ts,
                reproj_start=rec.start_ns,
                reproj_end=rec.end_ns,
                pixels_start_ts=_next_display_slot(rec.end_ns, period),
                frame_seq=event.source_seq,
            )
        )
    return records


def _choose_instants(state, count):
    """Spread the quality probes across the session, preferring events whose
    source frame used a real (non-fallback) pose prediction."""
    events = [
        e for e in state.reproj_events if not state.frame_refs[e.source_seq].fallback
    ] or state.reproj_events
    n = min(count, len(events))
    if n <= 0:
        return []
    idx = np.unique(np.round(np.linspace(0, len(events) - 1, n)).astype(int))
    return [events[i] for i in idx]


def _render_quality_instants(state, events, frames_dir):
    """Produce the displayed and ideal image for each probe and score them.

    "Actual" renders the app frame at the pose it was predicted from, then
    warps it to the pose the reprojection stage predicted. "Ideal" renders
    from the true pose at the frame's timestamp and warps to the true pose
    at the target vsync, so the score isolates the whole pipeline's pose
    error at display time.
    """
    cfg = state.config
    cam = state.display_cam
    memo = {}

    def rendered(pose):
        key = (pose.position.tobytes(), pose.orientation.tobytes())
        if key not in memo:
            memo[key] = render_app(cfg.scene_seed, pose, cam)
        return memo[key]

    rows = []
    for i, event in enumerate(events):
        ref = state.frame_refs[event.source_seq]
        actual = reproject(rendered(event.render_pose), event.display_pose, cam)
        truth_src = ground_truth_pose(state.spec, ref.ts)
        truth_tgt = ground_truth_pose(state.spec, event.target_display_ts)
        ideal = reproject(rendered(truth_src.pose), truth_tgt.pose, cam)
        write_ppm(frames_dir / f"actual_{i:03d}.ppm", actual)
        write_ppm(frames_dir / f"ideal_{i:03d}.ppm", ideal)
        rows.append(
            {
                "instant": i,
                "reproj_seq": event.seq,
                "source_seq": event.source_seq,
                "source_ts": event.source_ts,
                "target_display_ts": event.target_display_ts,
                "ssim": float(ssim(actual, ideal)),
                "one_minus_flip": float(
                    one_minus_flip(actual, ideal, pixels_per_degree=cfg.pixels_per_degree)
                ),
            }
        )
    return rows


def _report_dict(config, trace, mtp_records, instant_rows, est, gt, partial=False):
    """Assemble the session report; returns (report, quality_report)."""
    stats = {}
    cpu = {}
    if trace:
        targets = {
            "camera": config.camera_rate_hz,
            "imu": config.imu_rate_hz,
            "vio": config.camera_rate_hz,
            "integrator": config.imu_rate_hz,
            "app": config.display_rate_hz,
            "reprojection": config.display_rate_hz,
            "audio_encode": config.audio_rate_hz,
            "audio_playback": config.audio_rate_hz,
        }
        stats = {
            name: asdict(component)
            for name, component in frame_stats(trace, targets, config.duration_ns).items()
        }
        cpu = cpu_attribution(trace)
    else:
        partial = True

    ate_rotation = ate_translation = rpe_translation = rpe_rotation = 0.0
    try:
        _, est_aligned = align_trajectories(est, gt)
        ate_result = ate(est_aligned, gt)
        rpe_result = rpe(est, gt, seconds(config.rpe_delta_s))
        ate_rotation = ate_result.rotation_deg
        ate_translation = ate_result.translation_m
        rpe_translation = rpe_result.translation_rmse_m
        rpe_rotation = rpe_result.rotation_rmse_deg
    except ValueError:
        partial = True

    ssims = [row["ssim"] for row in instant_rows]
    flips = [row["one_minus_flip"] for row in instant_rows]
    if config.quality_samples > 0 and not instant_rows:
        partial = True
    totals = np.array([m.total for m in mtp_records], dtype=float)

    quality = QualityReport(
        ssim_mean=float(np.mean(ssims)) if ssims else 0.0,
        ssim_std=float(np.std(ssims)) if ssims else 0.0,
        one_minus_flip_mean=float(np.mean(flips)) if flips else 0.0,
        one_minus_flip_std=float(np.std(flips)) if flips else 0.0,
        ate_rotation_deg=ate_rotation,
        ate_translation_m=ate_translation,
        rpe_translation_rmse_m=rpe_translation,
        rpe_rotation_rmse_deg=rpe_rotation,
        mtp_mean_ms=float(totals.mean()) if totals.size else 0.0,
        mtp_std_ms=float(totals.std()) if totals.size else 0.0,
    )
    mtp_block = {
        "count": int(totals.size),
        "mean_ms": float(totals.mean()) if totals.size else 0.0,
        "std_ms": float(totals.std()) if totals.size else 0.0,
        "max_ms": float(totals.max()) if totals.size else 0.0,
        "vr_budget_ms": VR_LATENCY_BUDGET_MS,
        "ar_budget_ms": AR_LATENCY_BUDGET_MS,
        "within_vr_fraction": float(np.mean(totals <= VR_LATENCY_BUDGET_MS)) if totals.size else 0.0,
        "within_ar_fraction": float(np.mean(totals <= AR_LATENCY_BUDGET_MS)) if totals.size else 0.0,
    }
    report = {
        "config": asdict(config),
        "partial": bool(partial),
        "frame_stats": stats,
        "cpu_attribution": cpu,
        "mtp": mtp_block,
        "quality": quality.to_dict(),
        "quality_instants": instant_rows,
    }
    return _jsonable(report), quality


def _dump_report(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _write_mtp(path, records):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(MTP_FIELDS)
        for r in records:
            w.writerow(
                [r.frame_seq, r.ts]
                + [f"{x:.17g}" for x in (r.t_imu_age, r.t_reprojection, r.t_swap, r.total)]
            )


def _read_mtp(path):
    records = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != MTP_FIELDS:
            raise ValueError(f"unexpected mtp header: {header}")
        for row in reader:
            records.append(
                MtpRecord(
                    t_imu_age=float(row[2]),
                    t_reprojection=float(row[3]),
                    t_swap=float(row[4]),
                    frame_seq=int(row[0]),
                    ts=int(row[1]),
                )
            )
    return records


def _write_index(path, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(INDEX_FIELDS)
        for row in rows:
            w.writerow(
                [
                    row["instant"],
                    row["reproj_seq"],
                    row["source_seq"],
                    row["source_ts"],
                    row["target_display_ts"],
                    f"{row['ssim']:.17g}",
                    f"{row['one_minus_flip']:.17g}",
                ]
            )


def _read_index(path):
    rows = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != INDEX_FIELDS:
            raise ValueError(f"unexpected index header: {header}")
        for row in reader:
            rows.append(
                {
                    "instant": int(row[0]),
                    "reproj_seq": int(row[1]),
                    "source_seq": int(row[2]),
                    "source_ts": int(row[3]),
                    "target_display_ts": int(row[4]),
                }
            )
    return rows


def run_session(config, out_dir):
    """Simulate one session, write its dataset, and return the report dict."""
    problems = validate_config(config)
    if problems:
        raise ConfigurationError("; ".join(problems))
    started = time.perf_counter()

    runtime, state = wire_session(config)
    trace = runtime.run(config.duration_ns)

    mtp_records = _mtp_from_trace(config, trace, {e.seq: e for e in state.reproj_events})
    est = state.integrated
    gt = [ground_truth_pose(state.spec, s.ts) for s in est]

    out = Path(out_dir)
    frames_dir = out / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    chosen = _choose_instants(state, config.quality_samples)
    instant_rows = _render_quality_instants(state, chosen, frames_dir)

    report, quality = _report_dict(config, trace, mtp_records, instant_rows, est, gt)

    (out / "config.txt").write_text(serialize_config(config))
    write_trace(out / "trace.csv", trace)
    _write_mtp(out / "mtp.csv", mtp_records)
    write_trajectory(out / "trajectory_est.csv", est)
    write_trajectory(out / "trajectory_gt.csv", gt)
    _write_index(frames_dir / "index.csv", instant_rows)
    if state.audio_blocks:
        write_wav(
            out / "audio_out.wav",
            np.concatenate(state.audio_blocks, axis=1),
            config.audio_sample_rate,
        )
    (out / "report.txt").write_text(_dump_report(report))
    (out / "report.csv").write_text(quality.to_csv())

    elapsed = time.perf_counter() - started
    print(f"session: {config.duration_s:g}s simulated in {elapsed:.2f}s wall, dataset at {out}")
    return report


def replay_session(dataset_dir, out_dir=None):
    """Recompute the report from a recorded dataset.

    Missing or truncated inputs mark the report partial; whatever can be
    recomputed is, the rest is zeroed.
    """
    src = Path(dataset_dir)
    config = parse_config((src / "config.txt").read_text())
    partial = False

    try:
        trace = read_trace(src / "trace.csv")
    except (OSError, ValueError):
        trace, partial = [], True
    try:
        mtp_records = _read_mtp(src / "mtp.csv")
    except (OSError, ValueError):
        mtp_records, partial = [], True
    try:
        est = read_trajectory(src / "trajectory_est.csv", source="integrator")
        gt = read_trajectory(src / "trajectory_gt.csv", source="ground_truth")
    except (OSError, ValueError):
        est, gt, partial = [], [], True

    instant_rows = []
    try:
        index_rows = _read_index(src / "frames" / "index.csv")
    except (OSError, ValueError):
        index_rows, partial = [], True
    for row in index_rows:
        try:
            actual = read_ppm(src / "frames" / f"actual_{row['instant']:03d}.ppm")
            ideal = read_ppm(src / "frames" / f"ideal_{row['instant']:03d}.ppm")
        except (OSError, ValueError):
            partial = True
            continue
        row["ssim"] = float(ssim(actual, ideal))
        row["one_minus_flip"] = float(
            one_minus_flip(actual, ideal, pixels_per_degree=config.pixels_per_degree)
        )
        instant_rows.append(row)

    report, quality = _report_dict(
        config, trace, mtp_records, instant_rows, est, gt, partial=partial
    )
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text(_dump_report(report))
        (out / "report.csv").write_text(quality.to_csv())
    return report
