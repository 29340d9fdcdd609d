"""Command-line sweep driver.

Exit codes: 0 success, 1 partial failures, 2 configuration error, 3 every
point failed.
"""

import argparse
import json
import sys

from . import sweep
from .errors import SweepConfigError


def parse_grid(text: str) -> sweep.GridSpec:
    """Parse min:max:steps[:log|linear] into a GridSpec."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise SweepConfigError(f"grid must be min:max:steps[:log|linear], got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise SweepConfigError(f"bad grid {text!r}: {exc}") from exc
    spacing = parts[3] if len(parts) == 4 else "log"
    return sweep.GridSpec(min=lo, max=hi, steps=steps, spacing=spacing)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sweep",
        description="Steady-state parameter sweep of two driven dissipative "
                    "Kerr cavities coupled by photon exchange.",
    )
    p.add_argument("--config", help="JSON file with flat keys mirroring the flags; "
                                    "flags override file values")
    p.add_argument("--model", choices=["single", "two"])
    p.add_argument("--drive", type=float, help="drive amplitude F/kappa")
    p.add_argument("--j", help="J/kappa grid as min:max:steps[:log|linear]")
    p.add_argument("--u", help="U/kappa grid as min:max:steps[:log|linear]")
    p.add_argument("--dim", type=int, help="per-cavity Fock dimension (default 4)")
    p.add_argument("--solver", choices=["nullspace", "evolve", "both"])
    p.add_argument("--convergence-check", action="store_true", default=None,
                   help="re-run at dim 8 and report deviations")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", help="output file path")
    p.add_argument("--threads", help="worker count, or 'auto'")
    return p


_DEFAULTS = {
    "model": "single",
    "drive": 0.1,
    "j": "0.1:10:21:log",
    "u": "0.1:10:21:log",
    "dim": 4,
    "solver": "nullspace",
    "convergence_check": False,
    "format": "csv",
    "out": "sweep.csv",
    "threads": "auto",
}


def resolve_config(args: argparse.Namespace) -> sweep.SweepConfig:
    values = dict(_DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SweepConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(file_values, dict):
            raise SweepConfigError("config file must hold a flat JSON object")
        unknown = set(file_values) - set(_DEFAULTS)
        if unknown:
            raise SweepConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(file_values)
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    threads = values["threads"]
    if threads == "auto":
        parallelism = 0
    else:
        try:
            parallelism = int(threads)
        except (TypeError, ValueError) as exc:
            raise SweepConfigError(f"threads must be an integer or 'auto', got {threads!r}") from exc
        if parallelism < 1:
            raise SweepConfigError(f"threads must be >= 1, got {parallelism}")

    return sweep.SweepConfig(
        model=values["model"],
        f_over_kappa=float(values["drive"]),
        j_grid=parse_grid(str(values["j"])),
        u_grid=parse_grid(str(values["u"])),
        dim=int(values["dim"]),
        solver=values["solver"],
        convergence_check=bool(values["convergence_check"]),
        output=values["out"],
        format=values["format"],
        parallelism=parallelism,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except SweepConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    result = sweep.run_sweep(cfg)
    if not result.points:
        print("all grid points failed:", file=sys.stderr)
        for f in result.failures[:10]:
            print(f"  J/kappa={f.j_over_kappa:g} U/kappa={f.u_over_kappa:g}: {f.error}",
                  file=sys.stderr)
        return 3

    try:
        sweep.emit(result, cfg.format, cfg.output)
    except OSError as exc:
        print(f"cannot write {cfg.output}: {exc}", file=sys.stderr)
        return 2

    n_total = cfg.j_grid.steps * cfg.u_grid.steps
    print(f"wrote {len(result.points)}/{n_total} points to {cfg.output}")

    if cfg.convergence_check:
        report = sweep.convergence_report(cfg, result)
        print(f"convergence check dim {report['dim_low']} vs {report['dim_high']}:")
        for name, dev in report["observables"].items():
            print(f"  {name}: max relative {dev['max_relative']:.3e}, "
                  f"max absolute (small values) {dev['max_absolute_small']:.3e}")

    if result.failures:
        print(f"{len(result.failures)} points failed:", file=sys.stderr)
        for f in result.failures[:10]:
            print(f"  J/kappa={f.j_over_kappa:g} U/kappa={f.u_over_kappa:g}: {f.error}",
                  file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
