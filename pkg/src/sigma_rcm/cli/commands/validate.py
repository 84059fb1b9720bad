"""Command: validate - Check a model (and optionally a skeleton) for violations."""

from __future__ import annotations

import json
import logging

import click
from rich.markup import escape

from sigma_rcm.cli.shared.console import console
from sigma_rcm.cli.shared.inputs import (
    EXIT_OK,
    EXIT_VIOLATION,
    model_source,
    resolve_model,
    resolve_skeleton,
    skeleton_source,
)
from sigma_rcm.services.paths import detect_model_cycles, validate_model
from sigma_rcm.services.skeletons import validate_skeleton


logger = logging.getLogger(__name__)


@click.command()
@model_source
@skeleton_source
@click.option(
    "--min-degree",
    is_flag=True,
    help="Also require every entity instance of the skeleton to have degree > 1",
)
def validate(
    model_path: str | None,
    builtin: str | None,
    skeleton_path: str | None,
    builtin_skeleton: str | None,
    min_degree: bool,
) -> None:
    """Validate a relational model file.

    Violations are written to stderr as JSON lines
    ({"code", "subject", "message"}); exit code 0 means valid, 1 means at
    least one violation, 2 means the file could not be read or parsed.

    Examples:
        sigma-rcm validate model.json
        sigma-rcm validate --builtin social-cyclic --builtin-skeleton social-skeleton
    """
    model = resolve_model(model_path, builtin)
    skeleton = resolve_skeleton(skeleton_path, builtin_skeleton)

    issues = validate_model(model)
    if skeleton is not None and not issues:
        issues += validate_skeleton(model.schema, skeleton, require_min_degree_2=min_degree)

    for issue in issues:
        click.echo(json.dumps(issue.to_dict(), sort_keys=True), err=True)

    if issues:
        console.print(f"[red]✗ {len(issues)} violation(s)[/red]")
        raise SystemExit(EXIT_VIOLATION)

    cycles = detect_model_cycles(model)
    console.print(
        f"[green]✓[/green] Model is valid: {len(model.schema.entities)} entities, "
        f"{len(model.schema.relationships)} relationships, "
        f"{len(model.dependencies)} dependencies"
    )
    if cycles:
        console.print(f"  [yellow]↻[/yellow] {len(cycles)} dependency cycle(s):")
        for cycle in cycles:
            console.print(
                "    " + escape(" ; ".join(str(dep) for dep in cycle)), soft_wrap=True
            )
    else:
        console.print("  [dim]acyclic at the class level[/dim]")
    if skeleton is not None:
        console.print(f"[green]✓[/green] Skeleton is valid: {skeleton.size} entity instances")
    raise SystemExit(EXIT_OK)
