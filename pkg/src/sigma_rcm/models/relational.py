"""Relational paths, variables, dependencies and models.

Paths are value types compared by their item sequence, so sorting a
collection of paths orders it lexicographically by items. Variables print in
bracket syntax (``[USER, REACTS, POST].Engagement``) and ``parse`` accepts the
same syntax with any whitespace inside the brackets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from sigma_rcm.exceptions import PreconditionError
from sigma_rcm.models.schema import Schema


_VARIABLE_RE = re.compile(r"^\s*\[([^\[\]]*)\]\s*\.\s*([^\s.\[\]]+)\s*$")


@dataclass(frozen=True, order=True)
class RelationalPath:
    """Alternating sequence of entity and relationship classes.

    The first item is the perspective (base) of every variable built on the
    path; the last item is the terminal item class.
    """

    items: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise PreconditionError("A relational path needs at least one item")

    @classmethod
    def of(cls, *items: str) -> RelationalPath:
        return cls(tuple(items))

    @property
    def base(self) -> str:
        return self.items[0]

    @property
    def terminal(self) -> str:
        return self.items[-1]

    def __len__(self) -> int:
        return len(self.items)

    def reversed(self) -> RelationalPath:
        return RelationalPath(tuple(reversed(self.items)))

    def is_prefix_of(self, other: RelationalPath) -> bool:
        return len(self) <= len(other) and other.items[: len(self)] == self.items

    def __str__(self) -> str:
        return "[" + ", ".join(self.items) + "]"

    def to_list(self) -> list[str]:
        return list(self.items)


@dataclass(frozen=True, order=True)
class RelationalVariable:
    """A relational path paired with an attribute of its terminal class."""

    path: RelationalPath
    attribute: str

    @property
    def perspective(self) -> str:
        return self.path.base

    @property
    def terminal(self) -> str:
        return self.path.terminal

    def __str__(self) -> str:
        return f"{self.path}.{self.attribute}"

    @classmethod
    def parse(cls, text: str) -> RelationalVariable:
        """Parse bracket syntax such as ``[USER, REACTS, POST].Engagement``.

        Raises:
            PreconditionError: If the text is not a bracketed path followed by
                ``.attribute``
        """
        match = _VARIABLE_RE.match(text)
        if not match:
            raise PreconditionError(
                f"Cannot parse relational variable '{text}'; "
                "expected '[ITEM, ...].attribute'"
            )
        items = tuple(part.strip() for part in match.group(1).split(","))
        if any(not item for item in items):
            raise PreconditionError(f"Empty item class in '{text}'")
        return cls(RelationalPath(items), match.group(2))

    def to_dict(self) -> dict[str, Any]:
        return {"path": self.path.to_list(), "attribute": self.attribute}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RelationalVariable:
        return cls(RelationalPath(tuple(data["path"])), data["attribute"])


def parse_relational_variable(text: str) -> RelationalVariable:
    """Parse a relational variable from bracket syntax."""
    return RelationalVariable.parse(text)


@dataclass(frozen=True, order=True)
class RelationalDependency:
    """Dependency ``[I_j, ..., I_k].X -> [I_j].Y``.

    Attributes:
        cause: Cause variable; its path starts at the effect class
        effect_class: Item class I_j carrying the effect attribute
        effect_attribute: Effect attribute Y (may equal the cause attribute)
    """

    cause: RelationalVariable
    effect_class: str
    effect_attribute: str

    @classmethod
    def build(
        cls, cause_path: tuple[str, ...] | list[str], cause_attribute: str, effect: str
    ) -> RelationalDependency:
        """Build ``[cause_path].cause_attribute -> [cause_path[0]].effect``."""
        path = RelationalPath(tuple(cause_path))
        return cls(RelationalVariable(path, cause_attribute), path.base, effect)

    @property
    def effect(self) -> RelationalVariable:
        return RelationalVariable(RelationalPath((self.effect_class,)), self.effect_attribute)

    @property
    def cause_node(self) -> tuple[str, str]:
        """Class-level node (terminal class, attribute) of the cause."""
        return (self.cause.terminal, self.cause.attribute)

    @property
    def effect_node(self) -> tuple[str, str]:
        return (self.effect_class, self.effect_attribute)

    def __str__(self) -> str:
        return f"{self.cause} -> {self.effect}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "cause": self.cause.to_dict(),
            "effect": {"class": self.effect_class, "attribute": self.effect_attribute},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RelationalDependency:
        return cls(
            cause=RelationalVariable.from_dict(data["cause"]),
            effect_class=data["effect"]["class"],
            effect_attribute=data["effect"]["attribute"],
        )


@dataclass(frozen=True)
class RelationalModel:
    """A schema plus a set of relational dependencies (possibly cyclic)."""

    schema: Schema
    dependencies: tuple[RelationalDependency, ...] = ()
    hop_threshold_hint: int | None = None

    def __post_init__(self) -> None:
        # Set semantics: drop repeated dependencies, keep declaration order
        unique = tuple(dict.fromkeys(self.dependencies))
        object.__setattr__(self, "dependencies", unique)

    def with_dependencies(
        self, dependencies: tuple[RelationalDependency, ...] | list[RelationalDependency]
    ) -> RelationalModel:
        return RelationalModel(self.schema, tuple(dependencies), self.hop_threshold_hint)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "schema": self.schema.to_dict(),
            "dependencies": [d.to_dict() for d in self.dependencies],
        }
        if self.hop_threshold_hint is not None:
            data["hop_threshold"] = self.hop_threshold_hint
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RelationalModel:
        return cls(
            schema=Schema.from_dict(data.get("schema", {})),
            dependencies=tuple(
                RelationalDependency.from_dict(d) for d in data.get("dependencies", [])
            ),
            hop_threshold_hint=data.get("hop_threshold"),
        )
