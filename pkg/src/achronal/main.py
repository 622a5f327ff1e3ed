"""
achronal - command line entry point.

Usage:
    achronal verify {group,surfaces,lattice,localization,spectrum,all} [options]
    achronal verify {causality,covariance,additivity} --state S.json ... [options]
    achronal localize STATE.json REGION.json [options]
    achronal influence REGION.json TARGET.json [--grid GRID.json] [options]
    achronal decompose [--spin J] [options]
    achronal multiplicity [--J-max J] [--j-max j] [options]
    achronal schemas

Options shared by every command:
    --seed, --samples, --workers, --format {json,csv}, --tolerance-file,
    --output-dir, --log-level

Exit codes:
    0 every hard property holds, 1 assertion failure, 2 configuration or
    schema error, 3 precondition failure

Environment Variables:
    ACHRONAL_LOG_LEVEL, ACHRONAL_LOG_FILE, ACHRONAL_DATA_DIR, ACHRONAL_SEED,
    ACHRONAL_WORKERS, ACHRONAL_CHUNK_SIZE, ACHRONAL_TOLERANCE_FILE
"""

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional

from achronal import __version__
from achronal.cli.commands import (
    INPUT_CHECKS,
    cmd_decompose,
    cmd_influence,
    cmd_localize,
    cmd_multiplicity,
    cmd_schemas,
    cmd_verify,
    default_format,
    render_report,
    save_report,
)
from achronal.cli.schemas import OutputFormat, RunConfig, parse_document
from achronal.config import get_config
from achronal.errors import ConfigurationError
from achronal.logger import AchronalLogger, get_logger, resolve_level
from achronal.storage.json_adapter import dumps_report
from achronal.utils.error_handler import error_info_from_exception
from achronal.verification import SUITE_NAMES

logger = get_logger("main")


def _shared_options() -> argparse.ArgumentParser:
    config = get_config()
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=config.seed, help="Seed of every random draw")
    shared.add_argument("--samples", type=int, default=10_000, help="Monte Carlo sample count")
    shared.add_argument("--workers", type=int, default=config.workers, help="Worker threads for Monte Carlo chunks")
    shared.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=None, help="Report format"
    )
    shared.add_argument("--tolerance-file", type=Path, default=None, help="JSON object of tolerance overrides")
    shared.add_argument("--output-dir", type=Path, default=None, help="Also save reports under this directory")
    shared.add_argument("--log-level", default=None, help="Override ACHRONAL_LOG_LEVEL")
    return shared


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_options()
    parser = argparse.ArgumentParser(
        prog="achronal",
        description="Verification harness for achronal localization in Minkowski spacetime",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[shared], help="Run an invariant suite or an input-driven check")
    verify.add_argument("suite", choices=list(SUITE_NAMES) + list(INPUT_CHECKS))
    verify.add_argument("--universe", default=None, help="Lattice universe tag, e.g. grid4")
    verify.add_argument("--spin", default="1/2", help="Spin J for the spectrum suite")
    verify.add_argument("--state", type=Path, default=None, help="State document")
    verify.add_argument("--region", type=Path, default=None, help="Region document")
    verify.add_argument("--target", type=Path, default=None, help="Target surface document (causality)")
    verify.add_argument("--transform", type=Path, default=None, help="Poincaré element document (covariance)")
    verify.add_argument("--partition", type=Path, default=None, help="Partition document (additivity)")

    localize = commands.add_parser("localize", parents=[shared], help="Localization probability of a region")
    localize.add_argument("state", type=Path)
    localize.add_argument("region", type=Path)

    influence = commands.add_parser("influence", parents=[shared], help="Region of influence on a target surface")
    influence.add_argument("region", type=Path)
    influence.add_argument("target", type=Path)
    influence.add_argument("--grid", type=Path, default=None, help="Grid document")

    decompose = commands.add_parser("decompose", parents=[shared], help="Mass decomposition identities")
    decompose.add_argument("--spin", default="1/2", help="Spin J")

    multiplicity = commands.add_parser("multiplicity", parents=[shared], help="Table of spin multiplicities")
    multiplicity.add_argument("--J-max", dest="J_max", default="3", help="Largest inducing spin J")
    multiplicity.add_argument("--j-max", dest="j_max", default=None, help="Largest occurring spin j")

    commands.add_parser("schemas", parents=[shared], help="Print the JSON Schemas of the input documents")
    return parser


def _key_name(text: str) -> str:
    return re.sub(r"[^\w\-]", "_", text)


def _dispatch(args: argparse.Namespace, run: RunConfig):
    if args.command == "verify":
        inputs = {
            "state": args.state,
            "region": args.region,
            "target": args.target,
            "transform": args.transform,
            "partition": args.partition,
        }
        return args.suite, cmd_verify(run, args.suite, universe=args.universe, spin=args.spin, inputs=inputs)
    if args.command == "localize":
        return _key_name(args.region.stem), cmd_localize(run, args.state, args.region)
    if args.command == "influence":
        return _key_name(args.region.stem), cmd_influence(run, args.region, args.target, args.grid)
    if args.command == "decompose":
        return f"spin-{_key_name(args.spin)}", cmd_decompose(run, args.spin)
    if args.command == "multiplicity":
        return f"J-{_key_name(args.J_max)}", cmd_multiplicity(run, args.J_max, args.j_max)
    return "catalog", cmd_schemas(run)


def _report_error(e: Exception) -> int:
    info = error_info_from_exception(e)
    sys.stdout.write(dumps_report(info.to_dict()))
    return info.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and write its report to stdout."""
    try:
        resolve_level(get_config().log_level)
    except ConfigurationError as e:
        return _report_error(e)

    args = build_parser().parse_args(argv)
    if args.log_level:
        try:
            AchronalLogger.set_level(args.log_level)
        except ConfigurationError as e:
            return _report_error(e)

    try:
        run = parse_document(
            {
                "command": args.command,
                "seed": args.seed,
                "samples": args.samples,
                "workers": args.workers,
                "format": args.format,
                "tolerance_file": args.tolerance_file,
                "output_dir": args.output_dir,
            },
            RunConfig,
            "run-config",
        )
    except Exception as e:
        logger.error(f"Invalid run configuration: {e}")
        return _report_error(e)

    fmt = run.format or default_format(run.command)
    name, (code, report) = _dispatch(args, run)
    sys.stdout.write(render_report(report, fmt))

    try:
        save_report(run, name, report, fmt)
    except Exception as e:
        info = error_info_from_exception(e)
        logger.error(f"Could not save report: {info.message}")
        return info.exit_code

    logger.info(f"{run.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
