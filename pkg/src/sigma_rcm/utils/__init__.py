"""Utility functions and helpers for sigma-rcm."""

from sigma_rcm.utils.logger import configure_worker, setup_logger


__all__ = ["setup_logger", "configure_worker"]
