"""Shared utilities for CLI commands.

Provides the common console instances, model/skeleton resolution, variable
parsing and exit codes used across command modules.
"""
