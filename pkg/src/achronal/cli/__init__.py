"""Command line harness: input schemas and command implementations."""

from achronal.cli.commands import (
    cmd_decompose,
    cmd_influence,
    cmd_localize,
    cmd_multiplicity,
    cmd_schemas,
    cmd_verify,
    render_report,
)
from achronal.cli.schemas import OutputFormat, RunConfig, schema_catalog

__all__ = [
    "cmd_decompose",
    "cmd_influence",
    "cmd_localize",
    "cmd_multiplicity",
    "cmd_schemas",
    "cmd_verify",
    "render_report",
    "OutputFormat",
    "RunConfig",
    "schema_catalog",
]
