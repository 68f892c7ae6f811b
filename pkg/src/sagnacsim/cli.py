"""Command-line front end: simulate, fit, campaign, verify.

Angle flags and outputs are in degrees; everything internal is radians.
Exit codes: 0 success, 1 analysis failure (for example low visibility or a
failed verification), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from .analysis import fit_fringe, phase_shift
from .campaign import load_campaign_spec, run_campaign
from .errors import (
    ConfigError,
    DegenerateLoopError,
    FitError,
    LowVisibilityError,
    SagnacsimError,
)
from .qudit import BipartiteQuditState
from .sagnac import ExperimentConfig, generate_scan, read_scan, scan_metadata, write_scan
from .schedule import builtin_schedule, load_schedule
from .verify import run_verification

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_USAGE = 2
OUTDIR_ENV = "SAGNACSIM_OUTDIR"


def _default_outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "."))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sagnacsim",
        description="Simulate and analyze two-photon interference of path-encoded qudits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="generate one fringe scan")
    sim.add_argument("--config", type=Path, help="JSON config file (flags override it)")
    sim.add_argument("--d", type=int, help="qudit dimension (builtin schedules: 2, 3, 4)")
    sim.add_argument("--t", type=float, help="schedule setting in [0, 1]")
    mode = sim.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="write exact probabilities")
    mode.add_argument("--sampled", action="store_true", help="write Poisson counts (default)")
    sim.add_argument("--seed", type=int, help="RNG seed (default 0)")
    sim.add_argument("--contrast", type=float, help="fringe contrast in [0, 1] (default 0.35)")
    sim.add_argument("--counts", type=int, help="mean coincidences per point (default 1000)")
    sim.add_argument("--theta-start", type=float, help="grid start in degrees (default 0)")
    sim.add_argument("--theta-stop", type=float, help="grid stop in degrees (default 180)")
    sim.add_argument("--theta-step", type=float, help="grid step in degrees (default 5)")
    sim.add_argument("--schedule-file", type=Path, help="custom schedule JSON")
    sim.add_argument("--out", type=Path, help="output CSV path (default auto-named)")

    fit = sub.add_parser("fit", help="fit a scan, optionally against a reference")
    fit.add_argument("scan", type=Path, help="scan CSV to fit")
    fit.add_argument("--ref", type=Path, help="reference scan CSV for the phase shift")
    fit.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")

    camp = sub.add_parser("campaign", help="run a full multi-dimension campaign")
    camp.add_argument("spec", type=Path, help="campaign spec JSON")
    camp.add_argument("--out", type=Path, help="override the spec's output directory")

    ver = sub.add_parser("verify", help="run the randomized cross-check suite")
    ver.add_argument("--trials", type=int, default=200, help="random trials per check")
    ver.add_argument("--seed", type=int, default=0, help="RNG seed")
    ver.add_argument("--state", type=Path, help="state JSON {dim, real, imag} to test")
    return parser


def _load_json(path: Path, what: str) -> dict:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {what} {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{what} {path} must be a JSON object")
    return data


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_json(args.config, "config") if args.config else {}

    def pick(flag, key, default):
        return flag if flag is not None else config.get(key, default)

    d = pick(args.d, "dim", None)
    t = pick(args.t, "t", None)
    if d is None:
        raise ConfigError("dimension required (--d or config 'dim')")
    if t is None:
        raise ConfigError("schedule setting required (--t or config 't')")
    schedule_file = args.schedule_file or config.get("schedule_file")
    schedule = load_schedule(schedule_file) if schedule_file else builtin_schedule(int(d))
    start = pick(args.theta_start, "theta_start_deg", 0.0)
    stop = pick(args.theta_stop, "theta_stop_deg", 180.0)
    step = pick(args.theta_step, "theta_step_deg", 5.0)
    if step <= 0 or stop <= start:
        raise ConfigError("invalid theta grid")
    cfg = ExperimentConfig(
        dim=int(d),
        schedule=schedule,
        theta_grid=np.deg2rad(np.arange(start, stop + 1e-9, step)),
        counts_per_point=int(pick(args.counts, "counts_per_point", 1000)),
        contrast=float(pick(args.contrast, "contrast", 0.35)),
        rng_seed=int(pick(args.seed, "seed", 0)),
    )
    if args.exact:
        scan_mode = "exact"
    elif args.sampled:
        scan_mode = "sampled"
    else:
        scan_mode = config.get("mode", "sampled")
    scan = generate_scan(cfg, float(t), mode=scan_mode)

    out = args.out
    if out is None:
        out = _default_outdir() / f"scan_d{cfg.dim}_t{float(t):g}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_scan(scan, out, scan_metadata(cfg, scan))
    print(out)
    return EXIT_OK


def _cmd_fit(args: argparse.Namespace) -> int:
    scan, _ = read_scan(args.scan)
    fit = fit_fringe(scan)
    report: dict = {"fit": fit.to_json_dict()}
    if args.ref is not None:
        ref_scan, _ = read_scan(args.ref)
        ref_fit = fit_fringe(ref_scan)
        shift, sigma = phase_shift(ref_fit, fit)
        report["ref_fit"] = ref_fit.to_json_dict()
        report["shift"] = {
            "shift_deg": float(np.rad2deg(shift)),
            "sigma_deg": float(np.rad2deg(sigma)),
            "shift_rad": shift,
            "sigma_rad": sigma,
        }
    text = json.dumps(report, indent=2)
    if args.out is not None:
        args.out.write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_campaign(args: argparse.Namespace) -> int:
    spec = load_campaign_spec(args.spec)
    if args.out is not None:
        spec = dataclasses.replace(spec, out_dir=str(args.out))
    summary = run_campaign(spec)
    for entry in summary["results"]:
        print(
            f"d={entry['dim']}: shift = {entry['shift_deg']:.4f} deg "
            f"+/- {entry['sigma_deg']:.4f} (expected {entry['theory_deg']:.1f})"
        )
    print(Path(spec.out_dir) / "summary.json")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise ConfigError(f"--trials must be >= 1, got {args.trials}")
    state = None
    if args.state is not None:
        state = BipartiteQuditState.from_json_dict(_load_json(args.state, "state"))
    results = run_verification(args.trials, args.seed, state)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
        failed = failed or not res.passed
    return EXIT_ANALYSIS if failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "fit": _cmd_fit,
        "campaign": _cmd_campaign,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (LowVisibilityError, FitError, DegenerateLoopError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except SagnacsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
