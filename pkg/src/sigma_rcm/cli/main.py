"""Main CLI entry point for sigma-rcm."""

from __future__ import annotations

import click

from sigma_rcm import __version__
from sigma_rcm.cli.commands.export import export
from sigma_rcm.cli.commands.sep import sep
from sigma_rcm.cli.commands.validate import validate
from sigma_rcm.cli.commands.verify import verify
from sigma_rcm.cli.shared.inputs import load_config
from sigma_rcm.utils.logger import setup_logger


@click.group()
@click.version_option(version=__version__, prog_name="sigma-rcm")
@click.option("--verbose", "-v", is_flag=True, help="Log debug output to stderr")
def cli(verbose: bool) -> None:
    """sigma-rcm - Relational causal models with feedback loops.

    Validates relational models, grounds them on skeletons, builds abstract
    ground graphs and answers d- and σ-separation queries, with a
    brute-force oracle to check the abstraction against ground graphs.
    """
    config = load_config()
    setup_logger(level="DEBUG" if verbose else config.log_level)


cli.add_command(validate)
cli.add_command(sep)
cli.add_command(verify)
cli.add_command(export)


if __name__ == "__main__":
    cli()
