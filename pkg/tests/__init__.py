"""Test suite for sigma-rcm."""
