"""
Input documents read by the command line harness.

Every file the CLI consumes is parsed through one of the pydantic models or
adapters below; `schema_catalog()` renders their JSON Schemas for the
`schemas` command.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from achronal.errors import SchemaError
from achronal.linespace import StateDensity
from achronal.poincare import PoincareElement
from achronal.surfaces import SURFACE_ADAPTER, Region
from achronal.surfaces.models import Vector3

IDENTITY_SPINOR = (1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Flags shared by every command; together with the inputs they fix the output bytes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str = Field(..., description="Subcommand name")
    seed: int = Field(default=0, ge=0, description="Seed of every random draw")
    samples: int = Field(default=10_000, ge=1, description="Monte Carlo sample count")
    workers: int = Field(default=1, ge=1, description="Worker threads for Monte Carlo chunks")
    format: Optional[OutputFormat] = Field(default=None, description="Report format; each command has its own default")
    tolerance_file: Optional[Path] = Field(default=None, description="JSON object of tolerance overrides")
    output_dir: Optional[Path] = Field(default=None, description="Directory in which reports are also saved")


class TransformSpec(BaseModel):
    """A Poincaré element g = (a, A); the spinor uses the 8-real layout Re/Im of A11, A12, A21, A22."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    translation: Tuple[float, float, float, float] = Field(
        default=(0.0, 0.0, 0.0, 0.0), description="Translation a in R^4"
    )
    spinor: Tuple[float, float, float, float, float, float, float, float] = Field(
        default=IDENTITY_SPINOR, description="SL(2,C) part, 8 reals"
    )

    def to_element(self) -> PoincareElement:
        return PoincareElement.from_json(list(self.translation) + list(self.spinor))


class PartitionSpec(BaseModel):
    """Regions that should partition one surface."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    regions: List[Region] = Field(..., min_length=1, description="Regions sharing one surface")


class GridSpec(BaseModel):
    """Rectilinear grid of spatial points on which influence membership is sampled."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lower: Vector3 = Field(default=(-3.0, -3.0, 0.0), description="Lower corner")
    upper: Vector3 = Field(default=(3.0, 3.0, 0.0), description="Upper corner")
    points: Tuple[int, int, int] = Field(default=(25, 25, 1), description="Points per axis")

    @field_validator("points")
    @classmethod
    def validate_points(cls, v):
        if any(n < 1 for n in v):
            raise ValueError("every axis needs at least one point")
        return v


INPUT_MODELS: Dict[str, Union[type, TypeAdapter]] = {
    "run-config": RunConfig,
    "state": StateDensity,
    "region": Region,
    "surface": SURFACE_ADAPTER,
    "transform": TransformSpec,
    "partition": PartitionSpec,
    "grid": GridSpec,
}


def parse_document(data: Any, model: Union[type, TypeAdapter], source: str):
    """
    Validate already decoded JSON against a model class or a TypeAdapter.

    Raises:
        SchemaError: If validation fails
    """
    try:
        if isinstance(model, TypeAdapter):
            return model.validate_python(data)
        return model.model_validate(data)
    except ValidationError as e:
        messages = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise SchemaError(source, f"{source} does not match the schema: {messages}")


def load_document(path: Optional[Path], model: Union[type, TypeAdapter], source: str):
    """
    Read a JSON file and validate it.

    Raises:
        SchemaError: If the file is missing, not JSON or does not validate
    """
    if path is None:
        raise SchemaError(source, f"missing input file for {source}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise SchemaError(source, f"{source} file not found: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(source, f"{source} file is not valid JSON: {e}")
    return parse_document(data, model, source)


def schema_catalog() -> Dict[str, Any]:
    """JSON Schemas of every input document, keyed by document name."""
    catalog = {}
    for name, model in INPUT_MODELS.items():
        if isinstance(model, TypeAdapter):
            catalog[name] = model.json_schema()
        else:
            catalog[name] = model.model_json_schema()
    return catalog


__all__ = [
    "OutputFormat",
    "RunConfig",
    "TransformSpec",
    "PartitionSpec",
    "GridSpec",
    "INPUT_MODELS",
    "parse_document",
    "load_document",
    "schema_catalog",
]
