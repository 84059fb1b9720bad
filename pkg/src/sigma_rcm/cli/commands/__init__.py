"""CLI command modules.

Each command is defined in its own module and registered with the main CLI
group in main.py.
"""
