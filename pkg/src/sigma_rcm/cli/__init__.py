"""Command-line interface for sigma-rcm."""
