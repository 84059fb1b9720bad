"""Command: verify - Check the abstraction against enumerated ground graphs."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import click
from rich.table import Table

from sigma_rcm.cli.shared.console import console
from sigma_rcm.cli.shared.inputs import (
    EXIT_LIMIT,
    EXIT_MODE_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    fail,
    load_config,
    model_source,
    resolve_hop,
    resolve_model,
)
from sigma_rcm.exceptions import (
    CyclicModelError,
    ModeMismatchError,
    StateLimitExceededError,
    UnknownNameError,
)
from sigma_rcm.models.config import RCMConfig
from sigma_rcm.models.relational import RelationalModel
from sigma_rcm.services.oracle import (
    CounterexampleReport,
    check_lemma1,
    reproduce_counterexample,
    verify_abstraction,
)
from sigma_rcm.services.paths import detect_model_cycles


logger = logging.getLogger(__name__)

COUNTEREXAMPLE = "lee-counterexample"


@click.command()
@model_source
@click.option("--perspective", help="Base item class (default: first entity class)")
@click.option("--hop", type=click.IntRange(min=0), help="Hop threshold h")
@click.option(
    "--mode",
    type=click.Choice(["d", "sigma"]),
    default="sigma",
    show_default=True,
    help="Separation criterion",
)
@click.option(
    "--max-entities",
    type=click.IntRange(min=1),
    default=3,
    show_default=True,
    help="Enumeration bound: instances per entity class",
)
@click.option("--max-conditioning", type=click.IntRange(min=0), help="Largest |Z| in the sweep")
@click.option("--max-set", type=click.IntRange(min=1), help="Largest |X| and |Y| in the sweep")
@click.option("--jobs", type=click.IntRange(min=1), help="Worker processes")
@click.option(
    "--no-degree-filter",
    is_flag=True,
    help="Keep skeletons with entity instances of degree 1",
)
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, writable=True),
    help="Write the JSON report to this file",
)
def verify(
    model_path: str | None,
    builtin: str | None,
    perspective: str | None,
    hop: int | None,
    mode: str,
    max_entities: int,
    max_conditioning: int | None,
    max_set: int | None,
    jobs: int | None,
    no_degree_filter: bool,
    as_json: bool,
    output: str | None,
) -> None:
    """Verify relational separation on the abstract graph against ground graphs.

    Enumerates skeletons up to --max-entities instances per entity class and
    compares every abstract verdict with the ground verdicts. Results are
    bounded evidence, not proofs. For acyclic models the realizability check
    of abstract nodes and edges runs as well.

    `--builtin lee-counterexample` instead reproduces the two claims of the
    acyclic-AGG incompleteness counterexample.

    Exit codes: 0 no soundness disagreement (or counterexample reproduced),
    1 disagreements found, 2 usage or I/O error, 3 --mode d on a cyclic
    model, 4 state limit reached (report is partial).

    Examples:
        sigma-rcm verify --builtin social-cyclic --max-entities 2
        sigma-rcm verify --builtin lee-counterexample
        sigma-rcm verify model.json --mode d --jobs 4 -o report.json
    """
    config = load_config()
    model = resolve_model(model_path, builtin)
    h = resolve_hop(model, hop, config)

    if builtin == COUNTEREXAMPLE:
        _run_counterexample(config, max_entities, h, as_json, output)

    perspective = perspective or _default_perspective(model)
    try:
        reports = [
            verify_abstraction(
                model,
                perspective,
                h,
                mode,
                max_entities,
                max_conditioning=(
                    config.max_conditioning if max_conditioning is None else max_conditioning
                ),
                max_set=config.max_query_set if max_set is None else max_set,
                require_min_degree_2=not no_degree_filter,
                intersection_bound=config.intersection_bound,
                burn=config.burn,
                state_limit=config.state_limit,
                jobs=jobs or config.jobs,
            )
        ]
        if not detect_model_cycles(model):
            reports.append(
                check_lemma1(
                    model,
                    perspective,
                    h,
                    max_entities,
                    require_min_degree_2=not no_degree_filter,
                    intersection_bound=config.intersection_bound,
                    burn=config.burn,
                    state_limit=config.state_limit,
                )
            )
    except (CyclicModelError, ModeMismatchError) as e:
        fail(str(e), EXIT_MODE_MISMATCH)
    except UnknownNameError as e:
        fail(str(e), EXIT_USAGE)
    except StateLimitExceededError as e:
        fail(str(e), EXIT_LIMIT)

    payload = {"reports": [report.to_dict() for report in reports]}
    _emit(payload, as_json, output, [report.to_table() for report in reports])

    if reports[0].of_kind("soundness"):
        raise SystemExit(EXIT_VIOLATION)
    if any(report.partial for report in reports):
        raise SystemExit(EXIT_LIMIT)
    raise SystemExit(EXIT_OK)


def _default_perspective(model: RelationalModel) -> str:
    names = model.schema.entity_names
    if not names:
        fail("Model has no entity classes to take a perspective from", EXIT_USAGE)
    return names[0]


def _run_counterexample(
    config: RCMConfig, max_entities: int, h: int, as_json: bool, output: str | None
) -> None:
    report = reproduce_counterexample(
        max_per_entity=max_entities,
        h=h,
        intersection_bound=config.intersection_bound,
        burn=config.burn,
    )
    _emit({"counterexample": report.to_dict()}, as_json, output, [_claims_table(report)])
    raise SystemExit(EXIT_OK if report.reproduced else EXIT_VIOLATION)


def _claims_table(report: CounterexampleReport) -> Table:
    table = Table(title=f"Counterexample (<= {report.max_per_entity} instances per entity class)")
    table.add_column("Claim", style="cyan")
    table.add_column("Result")

    def mark(value: bool) -> str:
        return "[green]true[/green]" if value else "[red]false[/red]"

    table.add_row("claim1: abstract graph connects P.X and S'.Z given Q.Y", mark(report.claim1))
    table.add_row("claim2: no ground graph connects them", mark(report.claim2))
    table.add_row("degree > 1 skeleton stream is empty", mark(report.filtered_empty))
    table.add_row(
        "S.Z and S'.Z never overlap while P.X -> Q.Y is realized",
        mark(not report.overlap_realized),
    )
    table.add_row("paths P, Q, S, S' are valid", mark(report.paths_valid))
    table.add_row("skeletons checked", str(report.skeletons_checked))
    return table


def _emit(payload: dict[str, Any], as_json: bool, output: str | None, tables: list[Table]) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
    if output:
        try:
            Path(output).write_text(text + "\n", encoding="utf-8")
        except OSError as e:
            fail(f"Cannot write {output}: {e}", EXIT_USAGE)
        logger.info(f"Report written to {output}")
    if as_json:
        click.echo(text)
        return
    for table in tables:
        console.print(table)
    if output:
        console.print(f"[dim]Report written to {output}[/dim]")
