"""
achronal - numerical toolkit for achronal localization in Minkowski spacetime.

Provides causal geometry predicates, the Poincaré group kernel, maximal
achronal surfaces, the canonical localization on timelike line space, a
finite causal-logic laboratory and the mass-spectrum identities, together
with a command line harness that verifies all of them.
"""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("achronal")
except PackageNotFoundError:
    # Package is not installed
    __version__ = "unknown"

__all__ = ["__version__"]
