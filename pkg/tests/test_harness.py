"""Session harness: config round-trips, wiring, full runs, replay, CLI."""

import shutil
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from xrsim.harness import (
    PLUGIN_NAMES,
    SessionConfig,
    parse_config,
    parse_cost_spec,
    replay_session,
    run_session,
    serialize_config,
    validate_config,
    wire_session,
)
from xrsim.harness.cli import main as cli_main
from xrsim.audio import read_wav

# Small frames and a short clock keep full-session tests around a second.
FAST = SessionConfig(
    duration_s=1.0, width=160, height=120, quality_samples=2, rpe_delta_s=0.25
)


@pytest.fixture(scope="module")
def fast_session(tmp_path_factory):
    out = tmp_path_factory.mktemp("fast_session")
    report = run_session(FAST, out)
    return out, report


# -- configuration ----------------------------------------------------------


def test_config_round_trips_through_text():
    config = replace(FAST, seed=3, cost_reprojection="normal:2,0.5")
    assert parse_config(serialize_config(config)) == config


def test_default_config_is_valid():
    assert validate_config(SessionConfig()) == []


def test_unknown_key_rejected():
    with pytest.raises(ValueError, match="unknown config key"):
        parse_config("not_a_knob = 1")


@pytest.mark.parametrize(
    "override, fragment",
    [
        ({"imu_rate_hz": 9999.0}, "imu_rate_hz"),
        ({"camera_rate_hz": 5.0}, "camera_rate_hz"),
        ({"audio_block": 9}, "audio_block"),
        ({"audio_order": 7}, "audio_order"),
        ({"clock": "lunar"}, "clock"),
        ({"rpe_delta_s": 99.0}, "rpe_delta_s"),
        ({"cost_app": "uniform:1"}, "cost_app"),
    ],
)
def test_validate_flags_bad_values(override, fragment):
    problems = validate_config(replace(SessionConfig(), **override))
    assert any(fragment in p for p in problems)


def test_cost_spec_is_deterministic_per_seed():
    a = parse_cost_spec("normal:3,1", "app", seed=5)
    b = parse_cost_spec("normal:3,1", "app", seed=5)
    other = parse_cost_spec("normal:3,1", "app", seed=6)
    draws_a = [a(None) for _ in range(20)]
    draws_b = [b(None) for _ in range(20)]
    assert draws_a == draws_b
    assert draws_a != [other(None) for _ in range(20)]
    assert all(d >= 0 for d in draws_a)


# -- wiring -----------------------------------------------------------------


def test_wiring_registers_expected_plugins():
    runtime, _state = wire_session(FAST)
    assert tuple(d.name for d in runtime._plugins) == PLUGIN_NAMES


def test_all_components_hit_target_rates(fast_session):
    _out, report = fast_session
    stats = report["frame_stats"]
    assert stats["camera"]["achieved_rate_hz"] == pytest.approx(15.0)
    assert stats["imu"]["achieved_rate_hz"] == pytest.approx(500.0)
    assert stats["app"]["achieved_rate_hz"] == pytest.approx(120.0)
    assert stats["reprojection"]["achieved_rate_hz"] == pytest.approx(120.0)
    assert stats["audio_encode"]["achieved_rate_hz"] == pytest.approx(48.0)
    assert stats["audio_playback"]["achieved_rate_hz"] == pytest.approx(48.0)
    for name in PLUGIN_NAMES:
        assert stats[name]["skip_count"] == 0
        assert stats[name]["deadline_miss_fraction"] == 0.0


def test_integrator_tracks_truth_without_noise(fast_session):
    _out, report = fast_session
    quality = report["quality"]
    assert quality["ate_translation_m"] < 1e-6
    assert quality["ate_rotation_deg"] < 1e-2
    assert quality["ssim_mean"] > 0.9
    assert quality["one_minus_flip_mean"] > 0.9


def test_mtp_accounting_bounds(fast_session):
    _out, report = fast_session
    imu_period_ms = 1e3 / FAST.imu_rate_hz
    display_period_ms = 1e3 / FAST.display_rate_hz
    mtp = report["mtp"]
    assert mtp["count"] == 120
    # Zero-cost reprojection: age below one imu period, swap at most
    # one display period beyond the invocation instant.
    assert mtp["mean_ms"] <= imu_period_ms + display_period_ms
    assert mtp["max_ms"] <= imu_period_ms + display_period_ms + 1e-9
    assert mtp["within_vr_fraction"] == 1.0


def test_expensive_reprojection_degrades_to_half_rate(tmp_path):
    config = replace(
        FAST, duration_s=2.0, quality_samples=0, cost_reprojection="constant:12",
        rpe_delta_s=0.5,
    )
    report = run_session(config, tmp_path)
    stats = report["frame_stats"]["reprojection"]
    assert stats["achieved_rate_hz"] == pytest.approx(60.0)
    assert stats["skip_count"] == 120
    assert stats["deadline_miss_fraction"] == 1.0
    # Other components are unaffected by one slow stage.
    assert report["frame_stats"]["imu"]["achieved_rate_hz"] == pytest.approx(500.0)
    assert report["mtp"]["mean_ms"] > 12.0


def test_dataset_files_written(fast_session):
    out, _report = fast_session
    for name in (
        "config.txt", "trace.csv", "mtp.csv", "trajectory_est.csv",
        "trajectory_gt.csv", "report.txt", "report.csv", "audio_out.wav",
    ):
        assert (out / name).exists(), name
    assert (out / "frames" / "index.csv").exists()
    assert (out / "frames" / "actual_000.ppm").exists()
    assert (out / "frames" / "ideal_000.ppm").exists()


def test_audio_output_duration(fast_session):
    out, _report = fast_session
    samples, rate = read_wav(out / "audio_out.wav")
    assert rate == FAST.audio_sample_rate
    assert samples.shape[0] == 2
    blocks = int(np.ceil(FAST.duration_s * FAST.audio_rate_hz))
    assert samples.shape[1] == blocks * FAST.audio_block
    # The tones must actually reach the ears.
    assert np.abs(samples).max() > 1000


def test_runs_are_deterministic(fast_session, tmp_path):
    out, _report = fast_session
    rerun = run_session(FAST, tmp_path)
    for path in sorted(out.rglob("*")):
        if path.is_dir():
            continue
        twin = tmp_path / path.relative_to(out)
        assert twin.read_bytes() == path.read_bytes(), path.name


def test_replay_reproduces_report_bytes(fast_session, tmp_path):
    out, _report = fast_session
    replayed = replay_session(out, out_dir=tmp_path)
    assert not replayed["partial"]
    assert (tmp_path / "report.txt").read_bytes() == (out / "report.txt").read_bytes()
    assert (tmp_path / "report.csv").read_bytes() == (out / "report.csv").read_bytes()


def test_replay_flags_truncated_dataset(fast_session, tmp_path):
    out, report = fast_session
    clone = tmp_path / "clone"
    shutil.copytree(out, clone)
    (clone / "trace.csv").unlink()
    (clone / "frames" / "actual_001.ppm").unlink()
    partial = replay_session(clone)
    assert partial["partial"]
    assert partial["frame_stats"] == {}
    assert len(partial["quality_instants"]) == len(report["quality_instants"]) - 1
    # What survives is still computed from the files, not zeroed.
    assert partial["quality"]["ssim_mean"] > 0.9


# -- CLI --------------------------------------------------------------------


def write_fast_config(path):
    path.write_text(serialize_config(FAST))
    return path


def test_cli_run_and_report(tmp_path, capsys):
    config_file = write_fast_config(tmp_path / "session.cfg")
    out = tmp_path / "dataset"
    assert cli_main(["run", "--config", str(config_file), "--out", str(out)]) == 0
    assert (out / "report.txt").exists()
    capsys.readouterr()
    assert cli_main(["report", str(out)]) == 0
    printed = capsys.readouterr().out
    assert '"quality"' in printed


def test_cli_set_overrides_config(tmp_path):
    config_file = write_fast_config(tmp_path / "session.cfg")
    out = tmp_path / "dataset"
    code = cli_main(
        ["run", "--config", str(config_file), "--set", "duration_s=0.5",
         "--set", "rpe_delta_s=0.2", "--set", "quality_samples=0", "--out", str(out)]
    )
    assert code == 0
    trace = (out / "trace.csv").read_text().splitlines()
    imu_rows = [line for line in trace if line.startswith("imu,")]
    assert len(imu_rows) == 250


def test_cli_replay_exit_codes(tmp_path, fast_session):
    out, _report = fast_session
    assert cli_main(["replay", str(out), "--out", str(tmp_path / "r")]) == 0
    clone = tmp_path / "broken"
    shutil.copytree(out, clone)
    (clone / "mtp.csv").unlink()
    assert cli_main(["replay", str(clone)]) == 1


def test_cli_validate_config(tmp_path, capsys):
    good = write_fast_config(tmp_path / "good.cfg")
    assert cli_main(["validate-config", str(good)]) == 0
    bad = tmp_path / "bad.cfg"
    bad.write_text("imu_rate_hz = 9999\n")
    assert cli_main(["validate-config", str(bad)]) == 1
    ugly = tmp_path / "ugly.cfg"
    ugly.write_text("what even is this\n")
    assert cli_main(["validate-config", str(ugly)]) == 2
    capsys.readouterr()


def test_invalid_config_refuses_to_run(tmp_path):
    from xrsim.runtime import ConfigurationError

    with pytest.raises(ConfigurationError):
        run_session(replace(FAST, fov_deg=250.0), tmp_path)
