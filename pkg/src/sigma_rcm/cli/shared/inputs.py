"""Input resolution shared by the commands: models, skeletons, variables, config."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any, NoReturn, TypeVar

import click
from pydantic import ValidationError
from rich.markup import escape

from sigma_rcm.cli.shared.console import err_console
from sigma_rcm.exceptions import ModelFileError, PreconditionError, UnknownNameError
from sigma_rcm.models.config import RCMConfig
from sigma_rcm.models.relational import RelationalModel, RelationalVariable
from sigma_rcm.models.skeleton import Skeleton
from sigma_rcm.services.catalog import MODELS, SKELETONS, builtin_model, builtin_skeleton
from sigma_rcm.services.loader import load_model, load_skeleton
from sigma_rcm.services.paths import is_valid_path


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONNECTED = 1
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_MODE_MISMATCH = 3
EXIT_LIMIT = 4

F = TypeVar("F", bound=Callable[..., Any])


def fail(message: str, code: int) -> NoReturn:
    """Print a red error line to stderr and exit with ``code``."""
    err_console.print(f"[red]{escape(message)}[/red]", soft_wrap=True)
    raise SystemExit(code)


def model_source(func: F) -> F:
    """Add the ``MODEL_PATH`` argument and ``--builtin`` option."""
    func = click.option(
        "--builtin",
        type=click.Choice(sorted(MODELS)),
        help="Use a built-in model instead of MODEL_PATH",
    )(func)
    func = click.argument(
        "model_path", required=False, type=click.Path(dir_okay=False)
    )(func)
    return func


def skeleton_source(func: F) -> F:
    """Add ``--skeleton`` and ``--builtin-skeleton`` options."""
    func = click.option(
        "--builtin-skeleton",
        type=click.Choice(sorted(SKELETONS)),
        help="Use a built-in skeleton",
    )(func)
    func = click.option(
        "--skeleton",
        "skeleton_path",
        type=click.Path(dir_okay=False),
        help="Skeleton file (JSON or YAML)",
    )(func)
    return func


def load_config() -> RCMConfig:
    """Settings from environment and config file; bad values exit 2."""
    try:
        return RCMConfig()
    except ValidationError as e:
        fail(f"Invalid configuration: {e.errors()[0]['msg']} ({e.errors()[0]['loc']})", EXIT_USAGE)


def resolve_model(model_path: str | None, builtin: str | None) -> RelationalModel:
    """Load the model named by exactly one of MODEL_PATH / --builtin."""
    if bool(model_path) == bool(builtin):
        fail("Give exactly one of MODEL_PATH or --builtin", EXIT_USAGE)
    try:
        if builtin:
            return builtin_model(builtin)
        return load_model(str(model_path))
    except ModelFileError as e:
        fail(str(e), EXIT_USAGE)


def resolve_skeleton(skeleton_path: str | None, builtin: str | None) -> Skeleton | None:
    """Load the skeleton named by --skeleton / --builtin-skeleton, if any."""
    if skeleton_path and builtin:
        fail("Give at most one of --skeleton or --builtin-skeleton", EXIT_USAGE)
    try:
        if builtin:
            return builtin_skeleton(builtin)
        if skeleton_path:
            return load_skeleton(skeleton_path)
    except ModelFileError as e:
        fail(str(e), EXIT_USAGE)
    return None


def parse_variables(
    model: RelationalModel, texts: tuple[str, ...], option: str
) -> list[RelationalVariable]:
    """Parse bracket-syntax variables and check them against the schema."""
    variables: list[RelationalVariable] = []
    for text in texts:
        try:
            variable = RelationalVariable.parse(text)
            check = is_valid_path(model.schema, variable.path.items)
        except (PreconditionError, UnknownNameError) as e:
            fail(f"{option}: {e}", EXIT_USAGE)
        if not check:
            fail(f"{option}: {variable.path} is not a valid path: {check.reason}", EXIT_USAGE)
        if variable.attribute not in model.schema.attributes_of(variable.terminal):
            fail(
                f"{option}: '{variable.terminal}' has no attribute '{variable.attribute}'",
                EXIT_USAGE,
            )
        variables.append(variable)
    return variables


def resolve_hop(model: RelationalModel, hop: int | None, config: RCMConfig) -> int:
    """--hop, else the model's hop threshold, else the configured default."""
    if hop is not None:
        return hop
    if model.hop_threshold_hint is not None:
        return model.hop_threshold_hint
    return config.default_hop
