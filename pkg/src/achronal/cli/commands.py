"""
Command implementations for the achronal harness.

Every command takes the parsed RunConfig plus its own arguments and returns
(exit_code, report). Exceptions are mapped onto the exit-code contract by
`handle_cli_errors`, so a command body only raises.
"""

import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from achronal.cli.schemas import (
    GridSpec,
    OutputFormat,
    PartitionSpec,
    RunConfig,
    TransformSpec,
    load_document,
    schema_catalog,
)
from achronal.config import Config, get_config, load_tolerance_file, set_config
from achronal.errors import PreconditionError
from achronal.linespace import (
    StateDensity,
    additivity_check,
    causality_check,
    covariance_check,
    localization_probability,
)
from achronal.logger import get_logger
from achronal.spectrum import multiplicity_table
from achronal.storage import JSONReportStore
from achronal.storage.json_adapter import dumps_report
from achronal.surfaces import SURFACE_ADAPTER, Region, lipschitz_estimate, region_of_influence
from achronal.utils.error_handler import EXIT_ASSERTION, EXIT_OK, handle_cli_errors
from achronal.verification import PropertyResult, SuiteOptions, SuiteReport, run_suite

logger = get_logger("cli.commands")

CommandResult = Tuple[int, Dict[str, Any]]

# Pairs sampled when confirming that an input surface is 1-Lipschitz
LIPSCHITZ_PAIRS = 4000

INPUT_CHECKS = ("causality", "covariance", "additivity")

PROPERTY_COLUMNS = ("property", "passed", "severity", "samples", "worst_deviation", "tolerance")

# Commands whose natural output is a table
CSV_COMMANDS = ("influence", "multiplicity")


def apply_run_config(run: RunConfig) -> Config:
    """Install the configuration for this run, tolerance overrides included."""
    config = get_config()
    if run.tolerance_file is not None:
        config = config.with_overrides(load_tolerance_file(run.tolerance_file))
    set_config(config)
    return config


def run_header(run: RunConfig) -> Dict[str, Any]:
    config = get_config()
    return {
        "command": run.command,
        "version": config.version,
        "seed": run.seed,
        "samples": run.samples,
        "workers": run.workers,
        "tolerances": config.tolerances(),
    }


def _suite_result(report: SuiteReport) -> CommandResult:
    return (EXIT_OK if report.passed else EXIT_ASSERTION), report.to_dict()


def _require_lipschitz(surface, run: RunConfig) -> float:
    ratio = lipschitz_estimate(surface, LIPSCHITZ_PAIRS, run.seed)
    if ratio > 1.0 + get_config().eps_strict:
        raise PreconditionError(
            "maximal-achronal",
            f"{surface.kind} surface is not 1-Lipschitz (sampled ratio {ratio:.12f})",
        )
    return ratio


# ==================== verify ====================

def _input_check(run: RunConfig, name: str, inputs: Dict[str, Optional[Path]]) -> SuiteReport:
    state = load_document(inputs.get("state"), StateDensity, "state")
    report = SuiteReport(name, run.seed, run.samples, run.workers)
    if name == "additivity":
        partition = load_document(inputs.get("partition"), PartitionSpec, "partition")
        for region in partition.regions:
            _require_lipschitz(region.surface, run)
        result = additivity_check(state, partition.regions, run.samples, run.seed)
    else:
        region = load_document(inputs.get("region"), Region, "region")
        _require_lipschitz(region.surface, run)
        if name == "causality":
            target = load_document(inputs.get("target"), SURFACE_ADAPTER, "target")
            _require_lipschitz(target, run)
            result = causality_check(state, region, target, run.samples, run.seed, require_causal_base=True)
        else:
            transform = load_document(inputs.get("transform"), TransformSpec, "transform")
            result = covariance_check(state, region, transform.to_element(), run.samples, run.seed)
    report.add(PropertyResult.from_check(name, result))
    return report


@handle_cli_errors
def cmd_verify(
    run: RunConfig,
    suite: str,
    universe: Optional[str] = None,
    spin: str = "1/2",
    inputs: Optional[Dict[str, Optional[Path]]] = None
) -> CommandResult:
    """
    Run a named invariant suite, or one of the input-driven checks
    (causality, covariance, additivity) on user-supplied documents.

    Exit 0 iff every hard property passes.
    """
    apply_run_config(run)
    if suite in INPUT_CHECKS:
        report = _input_check(run, suite, inputs or {})
    else:
        options = SuiteOptions(
            seed=run.seed, samples=run.samples, workers=run.workers, universe=universe, spin=spin
        )
        report = run_suite(suite, options)
    logger.info(f"verify {suite}: {'passed' if report.passed else 'failed'} ({len(report.results)} properties)")
    return _suite_result(report)


# ==================== localize ====================

@handle_cli_errors
def cmd_localize(run: RunConfig, state_path: Path, region_path: Path) -> CommandResult:
    """
    <psi, T(Delta) psi> for the state and region documents.

    Exit 3 if the region's surface fails the sampled Lipschitz check.
    """
    apply_run_config(run)
    state = load_document(state_path, StateDensity, "state")
    region = load_document(region_path, Region, "region")
    ratio = _require_lipschitz(region.surface, run)

    estimate = localization_probability(state, region, run.samples, run.seed, run.workers)
    report = {
        "header": run_header(run),
        "surface": region.surface.kind,
        "lipschitz_ratio": ratio,
        "violations": [],
        **estimate.to_dict(),
    }
    return EXIT_OK, report


# ==================== influence ====================

def grid_points(grid: GridSpec) -> np.ndarray:
    """Grid nodes in C order (first axis slowest), shape (N, 3)."""
    axes = [np.linspace(lo, hi, n) for lo, hi, n in zip(grid.lower, grid.upper, grid.points)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, 3)


@handle_cli_errors
def cmd_influence(
    run: RunConfig,
    region_path: Path,
    target_path: Path,
    grid_path: Optional[Path] = None
) -> CommandResult:
    """Membership of target points over a spatial grid in the region of influence."""
    apply_run_config(run)
    region = load_document(region_path, Region, "region")
    target = load_document(target_path, SURFACE_ADAPTER, "target")
    grid = GridSpec() if grid_path is None else load_document(grid_path, GridSpec, "grid")
    _require_lipschitz(region.surface, run)
    _require_lipschitz(target, run)

    y = grid_points(grid)
    inside = np.asarray(region_of_influence(region, target, y), dtype=bool).reshape(-1)
    rows = [
        {"y1": float(p[0]), "y2": float(p[1]), "y3": float(p[2]), "in_influence": int(flag)}
        for p, flag in zip(y, inside)
    ]
    report = {
        "header": run_header(run),
        "region": region.model_dump(mode="json"),
        "target": target.model_dump(mode="json"),
        "grid": grid.model_dump(mode="json"),
        "inside": int(inside.sum()),
        "rows": rows,
    }
    return EXIT_OK, report


# ==================== spectrum ====================

@handle_cli_errors
def cmd_decompose(run: RunConfig, spin: str = "1/2") -> CommandResult:
    """Identity and unitarity checks of the mass decomposition for one spin."""
    apply_run_config(run)
    options = SuiteOptions(seed=run.seed, samples=run.samples, workers=run.workers, spin=spin)
    return _suite_result(run_suite("spectrum", options))


@handle_cli_errors
def cmd_multiplicity(run: RunConfig, J_max: str = "3", j_max: Optional[str] = None) -> CommandResult:
    """Table of nu_j(J) over all half-integers up to the bounds."""
    apply_run_config(run)
    rows = multiplicity_table(Fraction(J_max), None if j_max is None else Fraction(j_max))
    return EXIT_OK, {"header": run_header(run), "rows": rows}


# ==================== schemas ====================

@handle_cli_errors
def cmd_schemas(run: RunConfig) -> CommandResult:
    """JSON Schemas of every input document."""
    return EXIT_OK, {"schemas": schema_catalog()}


# ==================== output ====================

def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def report_rows(report: Dict[str, Any]) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Columns and rows of the tabular view of a report."""
    if "rows" in report:
        rows = report["rows"]
        columns = list(rows[0]) if rows else []
        return columns, rows
    if "properties" in report:
        return list(PROPERTY_COLUMNS), [{c: r.get(c) for c in PROPERTY_COLUMNS} for r in report["properties"]]
    scalars = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
    return list(scalars), [scalars]


def render_report(report: Dict[str, Any], fmt: OutputFormat) -> str:
    """Serialize a report; error payloads are always JSON."""
    if fmt == OutputFormat.JSON or report.get("success") is False:
        return dumps_report(report)
    columns, rows = report_rows(report)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def default_format(command: str) -> OutputFormat:
    return OutputFormat.CSV if command in CSV_COMMANDS else OutputFormat.JSON


def save_report(run: RunConfig, name: str, report: Dict[str, Any], fmt: OutputFormat) -> None:
    """Store the report under <command>/<name> in the output directory, if one is set."""
    if run.output_dir is None:
        return
    tabular = fmt == OutputFormat.CSV and report.get("success") is not False
    table = render_report(report, fmt) if tabular else None
    key = JSONReportStore(run.output_dir).save_command_report(run.command, name, report, table)
    logger.info(f"Saved report {key} under {run.output_dir}")


__all__ = [
    "CommandResult",
    "INPUT_CHECKS",
    "apply_run_config",
    "cmd_verify",
    "cmd_localize",
    "cmd_influence",
    "cmd_decompose",
    "cmd_multiplicity",
    "cmd_schemas",
    "default_format",
    "grid_points",
    "render_report",
    "report_rows",
    "save_report",
]
