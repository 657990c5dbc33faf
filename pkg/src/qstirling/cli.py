"""Command-line front end: ``cycle``, ``sweep`` and ``verify``.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cycle import CostModel, CycleParams, analyze
from .errors import InvalidInputError
from .media import medium_from_name
from .sweep import Knob, SweepSpec, format_value, run, to_csv, to_json, REPORT_COLUMNS

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

# sweep ranges used when --start/--stop are omitted
DEFAULT_RANGES = {Knob.KAPPA: (1.05, 8.0), Knob.J: (0.05, 4.5)}


class UsageError(Exception):
    pass


def _cost(text: str) -> CostModel:
    try:
        return CostModel.parse(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_physics_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--medium", choices=("single", "coupled"), default="single")
    p.add_argument("--lambda1", type=float, help="field strength on the A/D isochore")
    p.add_argument("--lambda2", type=float, help="field strength on the B/C isochore")
    p.add_argument("--kappa", type=float, help="lambda1/lambda2; sets lambda1 from lambda2")
    p.add_argument("--j", type=float, default=0.0, help="spin-spin coupling (coupled medium)")
    p.add_argument("--th", type=float, help="hot bath temperature")
    p.add_argument("--tc", type=float, help="cold bath temperature")
    p.add_argument(
        "--cost", type=_cost, default=CostModel(), metavar="{none|min-carnot|fixed:<v>}",
        help="regeneration cost model (default: min-carnot)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstirling",
        description="Conventional and regenerative quantum Stirling cycle thermodynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cycle = sub.add_parser("cycle", help="analyze a single cycle")
    _add_physics_flags(p_cycle)
    p_cycle.add_argument("--format", choices=("json", "csv"), default="json")

    p_sweep = sub.add_parser("sweep", help="evaluate cycles over a parameter grid")
    _add_physics_flags(p_sweep)
    p_sweep.add_argument("--knob", choices=[k.value for k in Knob], required=True)
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--steps", type=int, default=181)
    p_sweep.add_argument("--out", type=Path, help="output file (default: standard output)")
    p_sweep.add_argument(
        "--plot", action="store_true",
        help="also write a gnuplot script and a rendered PNG next to --out",
    )
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    p_verify = sub.add_parser("verify", help="run the property suites")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=2000)
    p_verify.add_argument("--grid-steps", type=int, default=41)
    p_verify.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)
    return parser


def _lambda1(args: argparse.Namespace) -> Optional[float]:
    if args.kappa is not None:
        if args.lambda1 is not None:
            raise UsageError("give either --lambda1 or --kappa, not both")
        if args.lambda2 is None:
            raise UsageError("--kappa requires --lambda2")
        return args.kappa * args.lambda2
    return args.lambda1


def _cycle_params(args: argparse.Namespace) -> CycleParams:
    lambda1 = _lambda1(args)
    missing = [
        flag for flag, v in (("--lambda1", lambda1), ("--lambda2", args.lambda2),
                             ("--th", args.th), ("--tc", args.tc)) if v is None
    ]
    if missing:
        raise UsageError(f"missing required flags: {', '.join(missing)}")
    return CycleParams(
        medium=medium_from_name(args.medium),
        lambda1=lambda1,
        lambda2=args.lambda2,
        t_hot=args.th,
        t_cold=args.tc,
        j=args.j,
        cost=args.cost,
    )


def cmd_cycle(args: argparse.Namespace) -> int:
    report = analyze(_cycle_params(args))
    data = report.as_dict()
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        data["kappa"] = report.lambda1 / report.lambda2 if report.lambda2 != 0.0 else None
        sys.stdout.write(",".join(REPORT_COLUMNS) + "\n")
        sys.stdout.write(",".join(format_value(data[c]) for c in REPORT_COLUMNS) + "\n")
    return EXIT_OK


def _sweep_spec(args: argparse.Namespace) -> SweepSpec:
    knob = Knob(args.knob)
    start, stop = args.start, args.stop
    if start is None or stop is None:
        if knob not in DEFAULT_RANGES:
            raise UsageError(f"--start and --stop are required for --knob {knob.value}")
        d_start, d_stop = DEFAULT_RANGES[knob]
        start = d_start if start is None else start
        stop = d_stop if stop is None else stop
    if knob is Knob.KAPPA and (args.kappa is not None or args.lambda1 is not None):
        raise UsageError("a kappa sweep sets lambda1; drop --kappa/--lambda1")
    fixed = {
        "lambda1": _lambda1(args),
        "lambda2": args.lambda2,
        "j": args.j,
        "t_hot": args.th,
        "t_cold": args.tc,
    }
    fixed = {k: v for k, v in fixed.items() if v is not None}
    return SweepSpec(
        medium=medium_from_name(args.medium),
        knob=knob,
        start=start,
        stop=stop,
        steps=args.steps,
        fixed=fixed,
        cost=args.cost,
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _sweep_spec(args)
    if args.plot and args.out is None:
        raise UsageError("--plot needs --out")
    result = run(spec)
    text = to_csv(result) if args.format == "csv" else to_json(result)
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.out)
    out.write_text(text, encoding="utf-8", newline="")
    written = [out]
    if args.plot:
        from .plotting import gnuplot_script, render_efficiency_figure

        script = out.with_suffix(".gp")
        if args.format == "csv":
            script.write_text(gnuplot_script(out, spec.knob.column), encoding="utf-8")
            written.append(script)
        written.append(render_efficiency_figure(result, out.with_suffix(".png")))
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import FAULTS, format_results, run_verify

    if args.inject_fault is not None and args.inject_fault not in FAULTS:
        raise UsageError(f"unknown fault {args.inject_fault!r}")
    results = run_verify(
        seed=args.seed, trials=args.trials, grid_steps=args.grid_steps, fault=args.inject_fault
    )
    sys.stdout.write(format_results(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


COMMANDS = {"cycle": cmd_cycle, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InvalidInputError) as exc:
        print(f"qstirling {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qstirling {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
