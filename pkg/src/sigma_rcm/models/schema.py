"""Relational schema: entity, relationship and attribute classes.

A schema is the type level of a relational domain. Entity classes and
relationship classes both carry attribute classes; relationship classes list
their participants positionally, each with a cardinality.

Design Decision: Frozen dataclasses with tuple fields

Rationale: Schemas are shared read-only by grounding, AGG construction and
verification workers (including worker processes), so they are immutable and
picklable. Tuples keep declaration order, which the JSON round trip needs and
which lets the validator see duplicate attribute names.

Trade-offs:
- Lookups go through cached name indexes built on first use
- Duplicate names are tolerated at construction time and reported by
  ``validate_schema`` instead of raising
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any

from sigma_rcm.exceptions import UnknownNameError


logger = logging.getLogger(__name__)


class Cardinality(str, Enum):
    """Participation constraint of one entity slot in a relationship class.

    ONE: an entity instance fills this slot in at most one relationship instance
    MANY: no limit
    """

    ONE = "one"
    MANY = "many"


@dataclass(frozen=True, order=True)
class Participant:
    """One positional slot of a relationship class.

    Attributes:
        entity: Entity class filling the slot
        cardinality: Participation constraint for the slot
    """

    entity: str
    cardinality: Cardinality = Cardinality.MANY


@dataclass(frozen=True)
class EntityClass:
    """Entity class with its attribute classes."""

    name: str
    attributes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RelationshipClass:
    """Relationship class (binary or n-ary) with its attribute classes."""

    name: str
    participants: tuple[Participant, ...]
    attributes: tuple[str, ...] = ()

    def slots_of(self, entity: str) -> list[int]:
        """Positions of the slots filled by ``entity``."""
        return [i for i, p in enumerate(self.participants) if p.entity == entity]


ItemClass = EntityClass | RelationshipClass


@dataclass(frozen=True, order=True)
class ValidationIssue:
    """A violated invariant, reported as data.

    Attributes:
        code: Machine-readable violation code (e.g. UNKNOWN_ENTITY)
        subject: Name of the offending element
        message: Human-readable description
    """

    code: str
    subject: str
    message: str

    def to_dict(self) -> dict[str, str]:
        """Convert to a JSON-ready dictionary."""
        return {"code": self.code, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class Schema:
    """Relational schema ⟨entities, relationships, attributes, cardinality⟩."""

    entities: tuple[EntityClass, ...] = ()
    relationships: tuple[RelationshipClass, ...] = ()

    @cached_property
    def _index(self) -> dict[str, ItemClass]:
        index: dict[str, ItemClass] = {}
        for item in (*self.entities, *self.relationships):
            index.setdefault(item.name, item)
        return index

    def item_class(self, name: str) -> ItemClass:
        """Resolve an item-class name.

        Raises:
            UnknownNameError: If ``name`` is neither an entity nor a
                relationship class
        """
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNameError(f"Unknown item class '{name}'") from None

    def has_class(self, name: str) -> bool:
        return name in self._index

    def is_entity(self, name: str) -> bool:
        """True iff ``name`` resolves to an entity class."""
        return isinstance(self.item_class(name), EntityClass)

    def is_relationship(self, name: str) -> bool:
        """True iff ``name`` resolves to a relationship class."""
        return isinstance(self.item_class(name), RelationshipClass)

    def relationship(self, name: str) -> RelationshipClass:
        item = self.item_class(name)
        if not isinstance(item, RelationshipClass):
            raise UnknownNameError(f"'{name}' is not a relationship class")
        return item

    def attributes_of(self, name: str) -> tuple[str, ...]:
        """Attribute classes declared on an item class."""
        return self.item_class(name).attributes

    @property
    def entity_names(self) -> list[str]:
        return [e.name for e in self.entities]

    @property
    def relationship_names(self) -> list[str]:
        return [r.name for r in self.relationships]

    def to_dict(self) -> dict[str, Any]:
        """Convert schema to the JSON document layout."""
        return {
            "entities": [
                {"name": e.name, "attributes": list(e.attributes)}
                for e in self.entities
            ],
            "relationships": [
                {
                    "name": r.name,
                    "participants": [
                        {"entity": p.entity, "cardinality": p.cardinality.value}
                        for p in r.participants
                    ],
                    "attributes": list(r.attributes),
                }
                for r in self.relationships
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Schema:
        """Create a schema from its JSON document layout."""
        return cls(
            entities=tuple(
                EntityClass(name=e["name"], attributes=tuple(e.get("attributes", [])))
                for e in data.get("entities", [])
            ),
            relationships=tuple(
                RelationshipClass(
                    name=r["name"],
                    participants=tuple(
                        Participant(
                            entity=p["entity"],
                            cardinality=Cardinality(p.get("cardinality", "many")),
                        )
                        for p in r.get("participants", [])
                    ),
                    attributes=tuple(r.get("attributes", [])),
                )
                for r in data.get("relationships", [])
            ),
        )

    def to_json(self) -> str:
        """Serialize with canonical key order and 2-space indentation."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> Schema:
        return cls.from_dict(json.loads(text))


def validate_schema(schema: Schema) -> list[ValidationIssue]:
    """Report every violated schema invariant.

    The result is sorted, so permuting declaration order never changes it.

    Args:
        schema: Schema to check

    Returns:
        List of issues; empty means the schema is valid
    """
    issues: set[ValidationIssue] = set()
    items: list[ItemClass] = [*schema.entities, *schema.relationships]

    name_counts = Counter(item.name for item in items)
    for name, count in name_counts.items():
        if not name:
            issues.add(
                ValidationIssue("EMPTY_NAME", name, "Class names must be nonempty")
            )
        if count > 1:
            issues.add(
                ValidationIssue(
                    "DUPLICATE_NAME", name, f"Name '{name}' is declared {count} times"
                )
            )

    for item in items:
        for attr, count in Counter(item.attributes).items():
            if not attr:
                issues.add(
                    ValidationIssue(
                        "EMPTY_NAME", item.name, f"Empty attribute name on '{item.name}'"
                    )
                )
            if count > 1:
                issues.add(
                    ValidationIssue(
                        "DUPLICATE_ATTRIBUTE",
                        f"{item.name}.{attr}",
                        f"Attribute '{attr}' is declared {count} times on '{item.name}'",
                    )
                )

    entity_names = set(schema.entity_names)
    for rel in schema.relationships:
        if len(rel.participants) < 2:
            issues.add(
                ValidationIssue(
                    "TOO_FEW_PARTICIPANTS",
                    rel.name,
                    f"Relationship '{rel.name}' has {len(rel.participants)} "
                    "participant(s); at least 2 are required",
                )
            )
        for p in rel.participants:
            if p.entity not in entity_names:
                issues.add(
                    ValidationIssue(
                        "UNKNOWN_ENTITY",
                        rel.name,
                        f"Relationship '{rel.name}' names unknown entity '{p.entity}'",
                    )
                )

    result = sorted(issues)
    logger.debug(f"Schema validation found {len(result)} issue(s)")
    return result


def classes_adjacent(schema: Schema, a: str, b: str) -> bool:
    """True iff exactly one of ``a``/``b`` is a relationship class and the
    other participates in it.

    Raises:
        UnknownNameError: If either name does not resolve
    """
    first = schema.item_class(a)
    second = schema.item_class(b)
    if isinstance(first, RelationshipClass) and isinstance(second, EntityClass):
        return bool(first.slots_of(second.name))
    if isinstance(second, RelationshipClass) and isinstance(first, EntityClass):
        return bool(second.slots_of(first.name))
    return False
