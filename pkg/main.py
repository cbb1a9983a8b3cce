#!/usr/bin/env python3
"""
Coupled Goodwin oscillator networks: analysis, simulation and reproduction.

Commands:
1. analyze: closed-form oscillation, synchronization and period predictions
2. simulate: RK4 integration with measured period and synchronization
3. reproduce: regenerate the reference tables with the nine-cell network
4. sweep: parameter grid over b, p and coupling scale
"""

import argparse
import sys

from colorama import just_fix_windows_console
from dotenv import load_dotenv

from src.commands import FORMATS, cmd_analyze, cmd_reproduce, cmd_simulate, cmd_sweep
from src.config import apply_overrides, load_run_config
from src.simulation.integrator import SimConfig
from src.utils.errors import EXIT_CONFIG_ERROR, EXIT_OK, ConfigError, GoodwinNetError

# Load environment variables
load_dotenv()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Coupled Goodwin oscillator networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py analyze --config run.json
  python main.py simulate --config run.json --seed 7 --format csv
  python main.py reproduce table2 --out results
  python main.py sweep --config sweep.json
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required: bool):
        p.add_argument('--config', required=config_required, help='JSON run configuration')
        p.add_argument('--out', help='Output directory (overrides the config)')
        p.add_argument('--seed', type=int, help='Seed of the initial perturbation')
        p.add_argument('--dt', type=float, help='RK4 step size')
        p.add_argument('--t-end', dest='t_end', type=float, help='Integration horizon')
        p.add_argument('--format', dest='fmt', choices=FORMATS, default='both', help='Output files to write')

    common(sub.add_parser('analyze', help='Closed-form analysis'), True)
    common(sub.add_parser('simulate', help='Integrate and measure one configuration'), True)
    reproduce = sub.add_parser('reproduce', help='Regenerate a reference table')
    reproduce.add_argument('which', choices=['table2', 'table3'])
    common(reproduce, False)
    common(sub.add_parser('sweep', help='Run a parameter grid'), True)
    return parser


def run(args) -> int:
    if args.seed is not None and args.seed < 0:
        raise ConfigError(f"--seed must be nonnegative, got {args.seed}")

    if args.command == 'reproduce':
        sim = SimConfig()
        out = args.out or "results"
        if args.config:
            cfg = apply_overrides(load_run_config(args.config), args.seed, args.dt, args.t_end, args.out)
            sim, out = cfg.sim, cfg.output
        else:
            try:
                overrides = {k: v for k, v in (("seed", args.seed), ("dt", args.dt), ("t_end", args.t_end))
                             if v is not None}
                sim = SimConfig(**overrides)
            except GoodwinNetError as e:
                raise ConfigError(str(e))
        cmd_reproduce(args.which, out, sim, args.fmt)
        return EXIT_OK

    cfg = apply_overrides(load_run_config(args.config), args.seed, args.dt, args.t_end, args.out)
    if args.command == 'analyze':
        cmd_analyze(cfg, args.fmt)
    elif args.command == 'simulate':
        cmd_simulate(cfg, args.fmt)
    elif args.command == 'sweep':
        cmd_sweep(cfg, args.fmt)
    return EXIT_OK


def main(argv=None) -> int:
    """Main entry point; returns the process exit code."""
    just_fix_windows_console()
    args = build_parser().parse_args(argv)
    try:
        code = run(args)
    except GoodwinNetError as e:
        kind = "Configuration error" if e.exit_code == EXIT_CONFIG_ERROR else "Numerical failure"
        print(f"❌ {kind}: {e}", file=sys.stderr)
        return e.exit_code
    print("✅ COMPLETE")
    return code


if __name__ == "__main__":
    sys.exit(main())
