"""Command-line surface: simulate / sweep / selftest.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 selftest failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import (ConfigError, NonFinite, PSDViolation, SingularCoupling,
                     SpinSyncError)
from .scenario import (RunConfig, preset_config, run_scenario,
                       run_thermal_sweep, selftest)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_SELFTEST = 4


def _load_config(args) -> RunConfig:
    if args.preset is None and args.config is None:
        raise ConfigError("either --preset or --config is required")
    if args.preset is not None:
        config = preset_config(args.preset)
        if args.config is not None:
            # config file keys override the preset
            overlay = RunConfig.from_file(args.config)
            defaults = RunConfig()
            updates = {f.name: getattr(overlay, f.name)
                       for f in dataclasses.fields(RunConfig)
                       if getattr(overlay, f.name) != getattr(defaults, f.name)}
            config = dataclasses.replace(config, **updates)
        return config
    return RunConfig.from_file(args.config)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="spinsync",
        description="Two-mode pseudo-bosonic spin-chain synchronization simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario")
    p_sim.add_argument("--config", default=None, help="config file path")
    p_sim.add_argument("--preset", default=None, help="preset name (fig2a, ...)")
    p_sim.add_argument("--out", required=True, help="output directory")

    p_swp = sub.add_parser("sweep", help="thermal occupation sweep")
    p_swp.add_argument("--config", default=None)
    p_swp.add_argument("--preset", default=None)
    p_swp.add_argument("--nm", required=True,
                       help="comma-separated thermal occupations")
    p_swp.add_argument("--out", required=True)

    sub.add_parser("selftest", help="run the fast invariant suite")

    args = parser.parse_args(argv)

    if args.command == "selftest":
        report = selftest()
        failed = False
        for name, ok, detail in report:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
            failed |= not ok
        return EXIT_SELFTEST if failed else EXIT_OK

    try:
        config = _load_config(args)
        if args.command == "simulate":
            result = run_scenario(config, args.out)
            for key, val in result.summary.items():
                print(f"{key} = {val}")
            print(f"wrote {result.trajectory_path}")
        else:
            try:
                nm_values = [float(v) for v in args.nm.split(",") if v.strip()]
            except ValueError:
                raise ConfigError(f"bad --nm list {args.nm!r}") from None
            path = run_thermal_sweep(config, nm_values, args.out)
            print(f"wrote {path}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SingularCoupling, NonFinite, PSDViolation) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SpinSyncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
