"""Command line entry point: ``dqdcorr run | list-presets | validate``."""

import argparse
import dataclasses
import sys

from . import scenario
from .qcore import PositivityError
from .measures import OptimizerError
from .redfield import IntegrationError


def _apply_overrides(cfg, args):
    integ = {}
    if args.dt is not None:
        integ["dt"] = args.dt
    if args.t_final is not None:
        integ["t_final"] = args.t_final
    if args.positivity_tol is not None:
        integ["positivity_tol"] = args.positivity_tol
    if integ:
        cfg = cfg.replace(integrator=dataclasses.replace(cfg.integrator, **integ))
    if args.picture is not None:
        cfg = cfg.replace(measures=dataclasses.replace(cfg.measures, picture=args.picture))
    out = {}
    if args.stride is not None:
        out["stride"] = args.stride
    if args.out is not None:
        out["path"] = args.out
    if out:
        cfg = cfg.replace(output=dataclasses.replace(cfg.output, **out))
    return cfg


def _cmd_run(args):
    cfg = scenario.load_config(args.config) if args.config else scenario.figure_preset(args.preset)
    try:
        cfg = _apply_overrides(cfg, args)
    except ValueError as exc:
        raise scenario.ConfigError(str(exc)) from exc
    result = scenario.run_scenario(cfg)
    if cfg.output.path:
        scenario.write_csv(result, cfg.output.path)
    else:
        scenario.write_csv(result, sys.stdout)
    s = result.summary
    first = "n/a" if s.first_eof_max_time is None else f"{s.first_eof_max_time:.6g}"
    print(f"final_eof={s.final_eof:.6g} final_discord={s.final_discord:.6g} "
          f"first_eof_max_time={first} discord_plateau={s.discord_plateau:.6g}",
          file=sys.stderr)
    return 0


def _cmd_list(args):
    for name in scenario.list_presets():
        note = scenario.PRESET_NOTES.get(name.split("_")[0].rstrip("abcdef"), "")
        print(f"{name:18s} {note}")
    return 0


def _cmd_validate(args):
    cfg = scenario.load_config(args.config)
    sys.stdout.write(scenario.dump_config(cfg))
    print(f"# resolved beta = {cfg.bath.resolved_beta:.9g} tau")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="dqdcorr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="integrate a scenario and write CSV")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="YAML scenario file")
    src.add_argument("--preset", help="named figure preset (see list-presets)")
    run.add_argument("--out", help="CSV output path (default: stdout)")
    run.add_argument("--stride", type=int, help="compute measures every n-th step")
    run.add_argument("--picture", choices=scenario.PICTURES)
    run.add_argument("--dt", type=float)
    run.add_argument("--t-final", dest="t_final", type=float)
    run.add_argument("--positivity-tol", dest="positivity_tol", type=float,
                     help="most negative eigenvalue tolerated before aborting")
    run.set_defaults(func=_cmd_run)

    lst = sub.add_parser("list-presets", help="list figure presets")
    lst.set_defaults(func=_cmd_list)

    val = sub.add_parser("validate", help="parse a config and print it fully resolved")
    val.add_argument("--config", required=True)
    val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (scenario.ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PositivityError, IntegrationError, OptimizerError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
