"""Command line entry point: ``nmwork run`` and ``nmwork verify``.

Exit codes: 0 success, 1 invalid parameters, 2 model violation or failed
verification, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .errors import InvalidArgumentError, ModelViolationError
from .ising import IsingParams
from .pbg import PBGParams
from .runner import PRESETS, PauliParams, ScenarioConfig, preset_config, run_scenario
from .verify import run_checks

EXIT_OK, EXIT_INVALID, EXIT_MODEL, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; here bad parameters mean exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nmwork", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nmwork {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="write a W_ex time series as CSV plus a JSON manifest")
    run.add_argument("--preset", choices=sorted(PRESETS))
    run.add_argument("--model", choices=("pauli", "ising", "pbg"))
    run.add_argument("--t-max", type=float)
    run.add_argument("--steps", type=int)
    run.add_argument("--scenario", choices=("system", "memory"))
    run.add_argument("--out", required=True, help="CSV path; the manifest goes to <out>.manifest.json")
    run.add_argument("--temperature", type=float, help="bath temperature in K; adds a w_ex_J column")
    run.add_argument("--workers", type=int, default=1)
    pauli = run.add_argument_group("pauli model")
    pauli.add_argument("--lambda", dest="lam", type=float, default=0.1)
    pauli.add_argument("--omega", type=float, default=2.0)
    pauli.add_argument("--rate3", choices=("tan", "tanh"), default="tan")
    ising = run.add_argument_group("ising model")
    ising.add_argument("--field", type=float, default=0.9, help="transverse field lambda")
    ising.add_argument("--coupling", type=float, default=0.1, help="qubit-chain coupling delta")
    ising.add_argument("--spins", type=int, default=4000)
    ising.add_argument("--exchange", type=float, default=1.0, help="spin-spin coupling J")
    pbg = run.add_argument_group("pbg model")
    pbg.add_argument("--detuning", type=float, default=-1.0)
    pbg.add_argument("--beta", type=float, default=1.0)
    run.add_argument("--aj-scale", type=float, default=1.0, help=argparse.SUPPRESS)

    ver = sub.add_parser("verify", help="run every property check and print a JSON report")
    ver.add_argument("--seed", type=int, default=20150101)
    ver.add_argument("--aj-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    return parser


def config_from_args(args) -> ScenarioConfig:
    common = dict(output_path=args.out, temperature=args.temperature, workers=args.workers,
                  aj_scale=args.aj_scale)
    if args.preset:
        return preset_config(args.preset, t_max=args.t_max, steps=args.steps, scenario=args.scenario, **common)
    if args.model is None:
        raise InvalidArgumentError("either --preset or --model is required")
    if args.t_max is None or args.steps is None:
        raise InvalidArgumentError("--t-max and --steps are required with --model")
    if args.model == "pauli":
        params = PauliParams(args.lam, args.omega, args.rate3)
    elif args.model == "ising":
        params = IsingParams(args.field, args.coupling, args.spins, args.exchange)
    else:
        params = PBGParams(beta=args.beta, detuning=args.detuning)
    scenario = args.scenario or ("system" if args.model == "pbg" else "memory")
    return ScenarioConfig(args.model, params, args.t_max, args.steps, scenario, **common)


def _cmd_run(args) -> int:
    config = config_from_args(args)
    manifest = run_scenario(config)
    logging.getLogger("nmwork").info("wrote %d rows to %s in %.3f s", manifest["rows"], args.out,
                                     manifest["wall_clock_seconds"])
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_checks(seed=args.seed, aj_scale=args.aj_scale)
    ok = all(r.passed for r in results)
    report = {"passed": ok, "checks": [r.as_dict() for r in results]}
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if ok else EXIT_MODEL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _cmd_run(args) if args.command == "run" else _cmd_verify(args)
    except InvalidArgumentError as exc:
        print(f"nmwork: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ModelViolationError as exc:
        print(f"nmwork: model violation: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except OSError as exc:
        print(f"nmwork: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
