"""
achronal package entry point.

Allows running the harness as a module:
    python -m achronal verify group
    python -m achronal --version
"""

import sys

from achronal.main import main

if __name__ == "__main__":
    sys.exit(main())
