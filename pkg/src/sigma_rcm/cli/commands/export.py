"""Command: export - Write a ground graph or abstract ground graph as DOT or JSON."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import click

from sigma_rcm.cli.shared.inputs import (
    EXIT_MODE_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    fail,
    load_config,
    model_source,
    resolve_hop,
    resolve_model,
    resolve_skeleton,
    skeleton_source,
)
from sigma_rcm.exceptions import (
    CyclicModelError,
    InvalidSkeletonError,
    PreconditionError,
    UnknownNameError,
)
from sigma_rcm.services.agg import AggMode, agg_to_dict, build_agg, export_agg_dot
from sigma_rcm.services.ground_graph import export_dot, ground, ground_to_dict


logger = logging.getLogger(__name__)


@click.command()
@model_source
@click.option(
    "--what",
    type=click.Choice(["gg", "agg"]),
    default="agg",
    show_default=True,
    help="Ground graph (needs a skeleton) or abstract ground graph",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["dot", "json"]),
    default="dot",
    show_default=True,
    help="Output format",
)
@skeleton_source
@click.option("--perspective", help="Base item class for --what agg (default: first entity)")
@click.option("--hop", type=click.IntRange(min=0), help="Hop threshold h")
@click.option(
    "--mode",
    type=click.Choice(["agg", "sigma-agg"]),
    default="sigma-agg",
    show_default=True,
    help="Abstract graph flavour; agg refuses cyclic models",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, writable=True),
    help="Write to this file instead of stdout",
)
def export(
    model_path: str | None,
    builtin: str | None,
    what: str,
    fmt: str,
    skeleton_path: str | None,
    builtin_skeleton: str | None,
    perspective: str | None,
    hop: int | None,
    mode: str,
    output: str | None,
) -> None:
    """Export a graph in a byte-stable DOT or JSON form.

    Examples:
        sigma-rcm export --builtin social-acyclic --what agg --perspective USER
        sigma-rcm export --builtin social-cyclic --what gg --builtin-skeleton social-skeleton
        sigma-rcm export model.json --what agg --format json -o agg.json
    """
    config = load_config()
    model = resolve_model(model_path, builtin)
    skeleton = resolve_skeleton(skeleton_path, builtin_skeleton)

    try:
        if what == "gg":
            if skeleton is None:
                fail("--what gg needs --skeleton or --builtin-skeleton", EXIT_USAGE)
            gg = ground(model, skeleton, burn=config.burn)
            text = (
                export_dot(gg)
                if fmt == "dot"
                else json.dumps(ground_to_dict(gg), sort_keys=True, indent=2) + "\n"
            )
        else:
            names = model.schema.entity_names
            perspective = perspective or (names[0] if names else None)
            if perspective is None:
                fail("Model has no entity classes to take a perspective from", EXIT_USAGE)
            agg = build_agg(
                model,
                perspective,
                resolve_hop(model, hop, config),
                AggMode(mode),
                config.intersection_bound,
                config.burn,
            )
            text = (
                export_agg_dot(agg)
                if fmt == "dot"
                else json.dumps(agg_to_dict(agg), sort_keys=True, indent=2, ensure_ascii=False)
                + "\n"
            )
    except CyclicModelError as e:
        fail(str(e), EXIT_MODE_MISMATCH)
    except InvalidSkeletonError as e:
        for issue in e.issues:
            click.echo(json.dumps(issue.to_dict(), sort_keys=True), err=True)
        fail(str(e), EXIT_USAGE)
    except (PreconditionError, UnknownNameError) as e:
        fail(str(e), EXIT_USAGE)

    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as e:
            fail(f"Cannot write {output}: {e}", EXIT_USAGE)
        logger.info(f"Wrote {what} to {output}")
    else:
        click.echo(text, nl=False)
    raise SystemExit(EXIT_OK)
