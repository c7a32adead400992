"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 domain or latency
infeasibility, 4 numerical failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .errors import ConfigError, DomainError, NumericalError
from .scenario import emit_tables, load_scenario, render_tables, run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4, 5

COMMANDS = {
    "sweep": (("sweep",), "drag, density, speed and session time over the altitude grid"),
    "min-altitude": (("min-altitude",), "altitude where drag equals thrust, with the Earth comparison"),
    "knee": (("knee",), "drag/session-time front and its knee altitude"),
    "session": (("session",), "minimum elevation, session time and zenith latency per altitude"),
    "lifetime": (("lifetime",), "unpowered orbital decay runs"),
    "report": (("min-altitude", "sweep", "session", "knee", "lifetime"), "everything above"),
}

# flag dest -> scenario key
FLAG_KEYS = {
    "planet": "planet",
    "sat": "sats",
    "rho0": "rho0",
    "tau": "tau",
    "h_uav_km": "h_uav_km",
    "format": "format",
    "out": "out",
    "lifetime_altitudes_km": "lifetime_altitudes_km",
}


def _parse_set(items):
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError("parse_error", f"--set expects KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="scenario file (key = value)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override any scenario key, e.g. grid_step_km=0.05 or spacecraft.12u.mass_kg=30")
    common.add_argument("--planet", help="mars | earth | a planet defined in the config")
    common.add_argument("--sat", help="comma-separated spacecraft, e.g. 1u,6u,12u")
    common.add_argument("--rho0", help="low | high | density in kg/m^3")
    common.add_argument("--tau", help="one-way latency budget in seconds")
    common.add_argument("--h-uav-km", dest="h_uav_km", help="UAV hover height in km")
    common.add_argument("--lifetime-altitudes-km", dest="lifetime_altitudes_km",
                        help="comma-separated starting altitudes for decay runs")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output directory (default: stdout, or ./report for 'report')")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="marscran", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        overrides = {key: getattr(args, dest) for dest, key in FLAG_KEYS.items()
                     if getattr(args, dest) is not None}
        overrides.update(_parse_set(args.set))
        cfg = load_scenario(args.config, overrides=overrides)
        stages, _ = COMMANDS[args.command]
        bundle = run_scenario(cfg, stages)
        if args.out is not None or args.command == "report":
            for path in emit_tables(bundle, cfg.format, cfg.out):
                print(path)
        else:
            files = render_tables(bundle, cfg.format)
            files.pop("metadata.json")
            for name, text in files.items():
                print(f"# {name}")
                sys.stdout.write(text)
    except ConfigError as exc:
        print(f"config error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK
