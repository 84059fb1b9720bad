"""sigma-rcm - Cyclic relational causal models and σ-separation.

This package grounds relational causal models on skeletons, builds abstract
ground graphs (acyclic and σ-variants) and answers relational d- and
σ-separation queries, with a brute-force oracle for desk-scale verification.
"""

from pathlib import Path


__version__ = "0.1.0"
__author__ = "sigma-rcm Contributors"
__license__ = "MIT"

# Read version from VERSION file
_version_file = Path(__file__).parent / "VERSION"
if _version_file.exists():
    __version__ = _version_file.read_text().strip()


__all__ = [
    "__version__",
    "__author__",
    "__license__",
]
