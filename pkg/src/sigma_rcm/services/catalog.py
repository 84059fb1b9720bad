"""Built-in models and skeletons.

``social-*`` is the users/posts/media domain: users react to posts, media
create posts. ``lee-counterexample`` is the five-entity model on which the
acyclic AGG reports a dependence no skeleton exhibits.
"""

from __future__ import annotations

from typing import Any

from sigma_rcm.exceptions import UnknownNameError
from sigma_rcm.models.relational import RelationalModel, RelationalPath, RelationalVariable
from sigma_rcm.models.skeleton import Skeleton


def _dep(path: list[str], cause: str, effect: str) -> dict[str, Any]:
    return {
        "cause": {"path": path, "attribute": cause},
        "effect": {"class": path[0], "attribute": effect},
    }


_SOCIAL_SCHEMA: dict[str, Any] = {
    "entities": [
        {"name": "USER", "attributes": ["Sentiment"]},
        {"name": "POST", "attributes": ["Engagement"]},
        {"name": "MEDIA", "attributes": ["Preference"]},
    ],
    "relationships": [
        {
            "name": "REACTS",
            "participants": [
                {"entity": "USER", "cardinality": "many"},
                {"entity": "POST", "cardinality": "many"},
            ],
        },
        {
            "name": "CREATES",
            "participants": [
                {"entity": "MEDIA", "cardinality": "many"},
                {"entity": "POST", "cardinality": "one"},
            ],
        },
    ],
}

_SOCIAL_DEPENDENCIES = [
    _dep(["POST", "REACTS", "USER"], "Sentiment", "Engagement"),
    _dep(["MEDIA", "CREATES", "POST"], "Engagement", "Preference"),
]

_SOCIAL_FEEDBACK = _dep(["USER", "REACTS", "POST"], "Engagement", "Sentiment")


def _lee_schema(cardinality: str) -> dict[str, Any]:
    def rel(name: str, *entities: str) -> dict[str, Any]:
        return {
            "name": name,
            "participants": [{"entity": e, "cardinality": cardinality} for e in entities],
        }

    return {
        "entities": [
            {"name": "E1", "attributes": []},
            {"name": "E2", "attributes": ["Y"]},
            {"name": "E3", "attributes": ["X"]},
            {"name": "E4", "attributes": []},
            {"name": "E5", "attributes": ["Z"]},
        ],
        "relationships": [
            rel("R1", "E1", "E2", "E4"),
            rel("R2", "E2", "E3"),
            rel("R3", "E3", "E4", "E5"),
        ],
    }


_LEE_DEPENDENCIES = [
    _dep(["E2", "R2", "E3", "R3", "E4", "R1", "E2", "R2", "E3"], "X", "Y"),
    _dep(["E2", "R2", "E3", "R3", "E5"], "Z", "Y"),
]

MODELS: dict[str, dict[str, Any]] = {
    "social-acyclic": {"schema": _SOCIAL_SCHEMA, "dependencies": _SOCIAL_DEPENDENCIES},
    "social-cyclic": {
        "schema": _SOCIAL_SCHEMA,
        "dependencies": [*_SOCIAL_DEPENDENCIES, _SOCIAL_FEEDBACK],
    },
    "lee-counterexample": {
        "schema": _lee_schema("one"),
        "dependencies": _LEE_DEPENDENCIES,
        "hop_threshold": 6,
    },
    "lee-counterexample-many": {
        "schema": _lee_schema("many"),
        "dependencies": _LEE_DEPENDENCIES,
        "hop_threshold": 6,
    },
}

SKELETONS: dict[str, dict[str, Any]] = {
    "social-skeleton": {
        "entities": {"USER": ["Alice", "Bob"], "POST": ["P1", "P2"], "MEDIA": ["M1"]},
        "relationships": [
            {"class": "REACTS", "participants": ["Alice", "P1"]},
            {"class": "REACTS", "participants": ["Bob", "P1"]},
            {"class": "REACTS", "participants": ["Alice", "P2"]},
            {"class": "CREATES", "participants": ["M1", "P1"]},
            {"class": "CREATES", "participants": ["M1", "P2"]},
        ],
    },
}

# Paths of the counterexample queries, perspective E1
LEE_PATHS: dict[str, RelationalPath] = {
    "P": RelationalPath(("E1", "R1", "E2", "R2", "E3")),
    "Q": RelationalPath(("E1", "R1", "E4", "R3", "E3", "R2", "E2")),
    "S": RelationalPath(("E1", "R1", "E4", "R3", "E5")),
    "S_prime": RelationalPath(("E1", "R1", "E2", "R2", "E3", "R3", "E5")),
}


def lee_variables() -> tuple[RelationalVariable, RelationalVariable, RelationalVariable]:
    """(P.X, S'.Z, Q.Y) of the counterexample query."""
    return (
        RelationalVariable(LEE_PATHS["P"], "X"),
        RelationalVariable(LEE_PATHS["S_prime"], "Z"),
        RelationalVariable(LEE_PATHS["Q"], "Y"),
    )


def builtin_model(name: str) -> RelationalModel:
    """Look up a built-in model.

    Raises:
        UnknownNameError: If ``name`` is not registered
    """
    try:
        return RelationalModel.from_dict(MODELS[name])
    except KeyError:
        raise UnknownNameError(
            f"Unknown built-in model '{name}'; choose from {', '.join(sorted(MODELS))}"
        ) from None


def builtin_skeleton(name: str) -> Skeleton:
    """Look up a built-in skeleton.

    Raises:
        UnknownNameError: If ``name`` is not registered
    """
    try:
        return Skeleton.from_dict(SKELETONS[name])
    except KeyError:
        raise UnknownNameError(
            f"Unknown built-in skeleton '{name}'; choose from {', '.join(sorted(SKELETONS))}"
        ) from None
