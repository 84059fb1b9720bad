"""Command: sep - Answer a relational separation query.

Design Decision: One command for abstract and ground queries

Rationale: The abstract verdict (on the (σ-)AGG, with augmented sets) and
the ground verdict (on the ground graph of one skeleton, from one base
instance) take the same variables and print the same verdict, so the
presence of --skeleton selects which is computed.

Trade-offs:
- A cyclic model with --mode d is rejected up front for both scopes, even
  when a particular ground graph happens to be acyclic
"""

from __future__ import annotations

import json
import logging

import click
from rich.markup import escape

from sigma_rcm.cli.shared.console import console
from sigma_rcm.cli.shared.inputs import (
    EXIT_CONNECTED,
    EXIT_MODE_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    fail,
    load_config,
    model_source,
    parse_variables,
    resolve_hop,
    resolve_model,
    resolve_skeleton,
    skeleton_source,
)
from sigma_rcm.exceptions import (
    CyclicModelError,
    InvalidSkeletonError,
    ModeMismatchError,
    PreconditionError,
    UnknownNameError,
)
from sigma_rcm.services.agg import AggMode, build_agg, relational_separated
from sigma_rcm.services.oracle.verification import relational_ground_separated
from sigma_rcm.services.paths import detect_model_cycles
from sigma_rcm.services.separation import SeparationMode, SeparationResult


logger = logging.getLogger(__name__)


@click.command()
@model_source
@click.option("--perspective", help="Base item class (default: first item of the --x paths)")
@click.option("--hop", type=click.IntRange(min=0), help="Hop threshold h")
@click.option(
    "--mode",
    type=click.Choice(["d", "sigma"]),
    default="sigma",
    show_default=True,
    help="Separation criterion",
)
@click.option("--x", "x_texts", multiple=True, required=True, help="Relational variable in X")
@click.option("--y", "y_texts", multiple=True, required=True, help="Relational variable in Y")
@click.option("--z", "z_texts", multiple=True, help="Relational variable in Z")
@skeleton_source
@click.option("--base", help="Base instance for a ground query (requires a skeleton)")
@click.option("--json", "as_json", is_flag=True, help="Print the verdict as JSON")
def sep(
    model_path: str | None,
    builtin: str | None,
    perspective: str | None,
    hop: int | None,
    mode: str,
    x_texts: tuple[str, ...],
    y_texts: tuple[str, ...],
    z_texts: tuple[str, ...],
    skeleton_path: str | None,
    builtin_skeleton: str | None,
    base: str | None,
    as_json: bool,
) -> None:
    """Decide whether X and Y are separated given Z.

    Without a skeleton the query runs on the abstract ground graph built
    from the perspective; with --skeleton/--builtin-skeleton and --base it
    runs on the ground graph for that base instance.

    Exit codes: 0 separated, 1 connected, 2 usage or I/O error,
    3 --mode d on a cyclic model.

    Examples:
        sigma-rcm sep --builtin social-acyclic --mode d \\
            --x "[USER].Sentiment" --y "[USER,REACTS,POST,CREATES,MEDIA].Preference" \\
            --z "[USER,REACTS,POST].Engagement"
        sigma-rcm sep --builtin social-cyclic --builtin-skeleton social-skeleton \\
            --base Bob --x "[USER].Sentiment" --y "[USER,REACTS,POST,REACTS,USER].Sentiment"
    """
    config = load_config()
    model = resolve_model(model_path, builtin)
    skeleton = resolve_skeleton(skeleton_path, builtin_skeleton)
    sep_mode = SeparationMode(mode)

    x = parse_variables(model, x_texts, "--x")
    y = parse_variables(model, y_texts, "--y")
    z = parse_variables(model, z_texts, "--z")

    perspectives = {v.path.base for v in (*x, *y, *z)}
    perspective = perspective or x[0].path.base
    if perspectives != {perspective}:
        fail(
            f"All variables must share the perspective '{perspective}', "
            f"got {', '.join(sorted(perspectives))}",
            EXIT_USAGE,
        )
    if sep_mode is SeparationMode.D and detect_model_cycles(model):
        fail("d-separation needs an acyclic model; use --mode sigma", EXIT_MODE_MISMATCH)
    if (skeleton is None) != (base is None):
        fail("A ground query needs both a skeleton and --base", EXIT_USAGE)

    try:
        if skeleton is not None and base is not None:
            scope = "ground"
            result = relational_ground_separated(
                model, skeleton, base, x, y, z, sep_mode, burn=config.burn
            )
        else:
            scope = "abstract"
            h = resolve_hop(model, hop, config)
            agg_mode = AggMode.ACYCLIC_AGG if sep_mode is SeparationMode.D else AggMode.SIGMA_AGG
            agg = build_agg(model, perspective, h, agg_mode, config.intersection_bound, config.burn)
            result = relational_separated(agg, x, y, z, sep_mode)
    except (CyclicModelError, ModeMismatchError) as e:
        fail(str(e), EXIT_MODE_MISMATCH)
    except InvalidSkeletonError as e:
        for issue in e.issues:
            click.echo(json.dumps(issue.to_dict(), sort_keys=True), err=True)
        fail(str(e), EXIT_USAGE)
    except (PreconditionError, UnknownNameError) as e:
        fail(str(e), EXIT_USAGE)

    logger.debug(f"{scope} {mode}-separation query answered: separated={result.separated}")
    _print_result(result, scope, mode, as_json)
    raise SystemExit(EXIT_OK if result.separated else EXIT_CONNECTED)


def _print_result(result: SeparationResult, scope: str, mode: str, as_json: bool) -> None:
    if as_json:
        payload = {"scope": scope, "mode": mode, **result.to_dict()}
        click.echo(json.dumps(payload, sort_keys=True, ensure_ascii=False))
        return
    if result.separated:
        console.print("[green]SEPARATED[/green]")
        return
    console.print("[yellow]CONNECTED[/yellow]")
    if result.witness is not None:
        console.print(f"  witness: {escape(str(result.witness))}", soft_wrap=True)
