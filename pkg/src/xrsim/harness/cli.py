"""Command line entry points: run, replay, report, validate-config."""

import argparse
import json
import sys
from pathlib import Path

from .config import SessionConfig, parse_config, validate_config
from .session import replay_session, run_session


def _load_config(config_path, overrides):
    text = Path(config_path).read_text() if config_path else ""
    if overrides:
        # later lines win, so overrides simply append
        text += "\n" + "\n".join(overrides) + "\n"
    return parse_config(text) if text.strip() else SessionConfig()


def _cmd_run(args):
    config = _load_config(args.config, args.set)
    problems = validate_config(config)
    if problems:
        for problem in problems:
            print(f"invalid config: {problem}", file=sys.stderr)
        return 2
    report = run_session(config, args.out)
    quality = report["quality"]
    print(
        f"ssim {quality['ssim_mean']:.4f}  1-flip {quality['one_minus_flip_mean']:.4f}  "
        f"mtp {quality['mtp_mean_ms']:.3f} ms  ate {quality['ate_translation_m']:.3g} m"
    )
    return 0


def _cmd_replay(args):
    report = replay_session(args.dataset, out_dir=args.out)
    print(json.dumps(report["quality"], indent=2, sort_keys=True))
    if report["partial"]:
        print("dataset incomplete: report is partial", file=sys.stderr)
        return 1
    return 0


def _cmd_report(args):
    path = Path(args.session) / "report.txt"
    try:
        report = json.loads(path.read_text())
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2, sort_keys=True))

    violations = []
    if report.get("partial"):
        violations.append("report is partial")
    mtp_mean = report.get("mtp", {}).get("mean_ms", 0.0)
    vr_budget = report.get("mtp", {}).get("vr_budget_ms", 20.0)
    if mtp_mean > vr_budget:
        violations.append(f"mean motion-to-photon {mtp_mean:.3f} ms exceeds {vr_budget} ms")
    for name, stats in report.get("frame_stats", {}).items():
        if stats.get("deadline_miss_fraction", 0.0) > 0.5:
            violations.append(f"{name} missed {stats['deadline_miss_fraction']:.0%} of deadlines")
    for violation in violations:
        print(f"violation: {violation}", file=sys.stderr)
    return 1 if violations else 0


def _cmd_validate_config(args):
    try:
        config = parse_config(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 2
    problems = validate_config(config)
    if problems:
        for problem in problems:
            print(f"invalid: {problem}", file=sys.stderr)
        return 1
    print("ok")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xrsim",
        description="Deadline-scheduled XR pipeline simulator and analysis harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a session and write its dataset")
    p_run.add_argument("--config", help="key = value config file", default=None)
    p_run.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="override a config key (repeatable)",
    )
    p_run.add_argument("--out", default="xrsim_out", help="output dataset directory")
    p_run.set_defaults(func=_cmd_run)

    p_replay = sub.add_parser("replay", help="recompute the report from a dataset")
    p_replay.add_argument("dataset", help="dataset directory from a previous run")
    p_replay.add_argument("--out", default=None, help="where to write the recomputed report")
    p_replay.set_defaults(func=_cmd_replay)

    p_report = sub.add_parser("report", help="print a session report and check budgets")
    p_report.add_argument("session", help="dataset directory containing report.txt")
    p_report.set_defaults(func=_cmd_report)

    p_validate = sub.add_parser("validate-config", help="check a config file")
    p_validate.add_argument("config", help="key = value config file")
    p_validate.set_defaults(func=_cmd_validate_config)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
