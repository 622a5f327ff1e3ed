"""
Report model for the invariant suites.

A suite collects PropertyResults. Hard properties decide the exit code;
soft ones (surrogate comparisons, sampled verdicts that may be
inconclusive) are reported and logged only.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from achronal.config import get_config


class Severity(str, Enum):
    HARD = "hard"
    SOFT = "soft"


def _plain(value: Any) -> Any:
    """Convert numpy scalars, arrays and enums into JSON-ready values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if np.isfinite(number) else str(number)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass
class PropertyResult:
    """Outcome of one checked property."""
    name: str
    passed: bool
    samples: int = 0
    worst_deviation: Optional[float] = None
    tolerance: Optional[float] = None
    severity: Severity = Severity.HARD
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_deviation(
        cls,
        name: str,
        deviation: float,
        tolerance: float,
        samples: int,
        **details
    ) -> "PropertyResult":
        """Pass iff deviation <= tolerance."""
        deviation = float(deviation)
        return cls(
            name=name,
            passed=bool(deviation <= tolerance),
            samples=int(samples),
            worst_deviation=deviation,
            tolerance=float(tolerance),
            details=details,
        )

    @classmethod
    def from_check(cls, name: str, report: Dict[str, Any], severity: Severity = Severity.HARD) -> "PropertyResult":
        """Wrap a check report that carries "passed" or "passes" and optionally "n"."""
        passed = report.get("passed", report.get("passes", False))
        return cls(
            name=name,
            passed=bool(passed),
            samples=int(report.get("n", 0)),
            severity=severity,
            details=report,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "property": self.name,
            "passed": self.passed,
            "severity": self.severity.value,
            "samples": self.samples,
            "worst_deviation": _plain(self.worst_deviation),
            "tolerance": _plain(self.tolerance),
            "details": _plain(self.details),
        }


@dataclass
class SuiteReport:
    """Results of one or more suites under a single run configuration."""
    suite: str
    seed: int
    samples: int
    workers: int = 1
    results: List[PropertyResult] = field(default_factory=list)

    def add(self, result: PropertyResult) -> PropertyResult:
        self.results.append(result)
        return result

    def extend(self, other: "SuiteReport") -> None:
        for result in other.results:
            self.results.append(
                PropertyResult(
                    name=f"{other.suite}.{result.name}",
                    passed=result.passed,
                    samples=result.samples,
                    worst_deviation=result.worst_deviation,
                    tolerance=result.tolerance,
                    severity=result.severity,
                    details=result.details,
                )
            )

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.severity == Severity.HARD)

    def failures(self) -> List[PropertyResult]:
        return [r for r in self.results if r.severity == Severity.HARD and not r.passed]

    def header(self) -> Dict[str, Any]:
        config = get_config()
        return {
            "suite": self.suite,
            "version": config.version,
            "seed": self.seed,
            "samples": self.samples,
            "workers": self.workers,
            "tolerances": config.tolerances(),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "header": _plain(self.header()),
            "passed": self.passed,
            "failure_count": len(self.failures()),
            "soft_failure_count": len(
                [r for r in self.results if r.severity == Severity.SOFT and not r.passed]
            ),
            "properties": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


__all__ = ["Severity", "PropertyResult", "SuiteReport"]
