"""Shared Rich console instances for all CLI commands."""

from rich.console import Console


# Verdicts, tables and summaries
console = Console()

# Diagnostics that must not mix with machine-readable stdout
err_console = Console(stderr=True)
