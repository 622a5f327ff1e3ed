"""
Object factories for creating test data.

Factories provide seeded random group elements, vectors and lines with
sensible defaults, while allowing customization through keyword arguments.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from achronal.poincare import (
    LinePoint,
    PoincareElement,
    SpinorMatrix,
    random_sl2c,
    random_su2,
    random_unit_vectors,
)


class GroupFactory:
    """Factory for SL(2,C) and SU(2) batches and Poincaré elements."""

    @staticmethod
    def sl2c(rng: np.random.Generator, size: int = 100, max_rapidity: float = 1.0) -> np.ndarray:
        return random_sl2c(rng, size, max_rapidity)

    @staticmethod
    def su2(rng: np.random.Generator, size: int = 100) -> np.ndarray:
        return random_su2(rng, size)

    @staticmethod
    def element(rng: np.random.Generator, max_rapidity: float = 1.0, translation_scale: float = 1.0) -> PoincareElement:
        """
        Create a random Poincaré element.

        Args:
            rng: Generator
            max_rapidity: Bound on the boost part
            translation_scale: Standard deviation of the translation

        Returns:
            PoincareElement instance
        """
        return PoincareElement(
            rng.normal(0.0, translation_scale, 4),
            SpinorMatrix(random_sl2c(rng, 1, max_rapidity)[0]),
        )


class VectorFactory:
    """Factory for four-vectors of a prescribed causal type."""

    @staticmethod
    def timelike(rng: np.random.Generator, size: int = 100, future: bool = True) -> np.ndarray:
        spatial = rng.normal(0.0, 1.0, (size, 3))
        t = np.linalg.norm(spatial, axis=-1) + rng.uniform(0.1, 2.0, size)
        return np.concatenate([(t if future else -t)[:, None], spatial], axis=-1)

    @staticmethod
    def spacelike(rng: np.random.Generator, size: int = 100) -> np.ndarray:
        spatial = rng.normal(0.0, 1.0, (size, 3))
        t = np.linalg.norm(spatial, axis=-1) * rng.uniform(-0.9, 0.9, size)
        return np.concatenate([t[:, None], spatial], axis=-1)

    @staticmethod
    def lightlike(rng: np.random.Generator, size: int = 100) -> np.ndarray:
        direction = random_unit_vectors(rng, size)
        scale = rng.uniform(0.5, 3.0, size)
        return np.concatenate([scale[:, None], scale[:, None] * direction], axis=-1)


class LineFactory:
    """Factory for chart points (x, v) of timelike lines."""

    @staticmethod
    def create(
        rng: np.random.Generator,
        size: int = 100,
        speed: float = 0.9,
        spread: float = 2.0
    ) -> LinePoint:
        x = rng.normal(0.0, spread, (size, 3))
        v = random_unit_vectors(rng, size) * (speed * rng.uniform(0.0, 1.0, size) ** (1.0 / 3.0))[:, None]
        return LinePoint(x, v)


class DocumentFactory:
    """Factory for the JSON input documents read by the CLI."""

    @staticmethod
    def state(**overrides) -> Dict[str, Any]:
        defaults = {"center": [0.0, 0.0, 0.0], "sigma": 1.0}
        defaults.update(overrides)
        return defaults

    @staticmethod
    def region(surface: Optional[Dict[str, Any]] = None, base: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        return {
            "surface": surface or {"kind": "flat", "t0": 0.0},
            "base": base or {"kind": "ball", "radius": 1.0},
        }

    @staticmethod
    def write(directory: Path, name: str, document: Any) -> Path:
        """Write a document as <directory>/<name>.json and return its path."""
        path = Path(directory) / f"{name}.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return path
