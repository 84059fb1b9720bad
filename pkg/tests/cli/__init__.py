"""CLI test suite for sigma-rcm."""
