"""Relational skeletons: entity and relationship instances of a schema."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sigma_rcm.exceptions import UnknownNameError


@dataclass(frozen=True, order=True)
class RelationshipInstance:
    """A relationship instance: class name plus positional participant ids.

    Identity is the (class, participants) pair; the display name
    ``REACTS(Alice,P1)`` doubles as the instance id in ground graphs.
    """

    relationship: str
    participants: tuple[str, ...]

    @property
    def name(self) -> str:
        return f"{self.relationship}({','.join(self.participants)})"

    def __str__(self) -> str:
        return self.name

    def to_dict(self) -> dict[str, Any]:
        return {"class": self.relationship, "participants": list(self.participants)}


@dataclass(frozen=True)
class Skeleton:
    """Concrete instantiation of a schema.

    Attributes:
        entities: Entity class name -> entity instance ids
        relationships: Relationship instances
    """

    entities: dict[str, tuple[str, ...]] = field(default_factory=dict)
    relationships: tuple[RelationshipInstance, ...] = ()

    @classmethod
    def build(
        cls,
        entities: dict[str, list[str] | tuple[str, ...]],
        relationships: list[tuple[str, tuple[str, ...] | list[str]]],
    ) -> Skeleton:
        """Convenience constructor from plain lists."""
        return cls(
            entities={name: tuple(ids) for name, ids in entities.items()},
            relationships=tuple(
                RelationshipInstance(rel, tuple(parts)) for rel, parts in relationships
            ),
        )

    @cached_property
    def _class_of(self) -> dict[str, str]:
        index: dict[str, str] = {}
        for cls_name, ids in self.entities.items():
            for instance in ids:
                index.setdefault(instance, cls_name)
        for rel in self.relationships:
            index.setdefault(rel.name, rel.relationship)
        return index

    @cached_property
    def _incident(self) -> dict[str, tuple[RelationshipInstance, ...]]:
        incident: dict[str, list[RelationshipInstance]] = defaultdict(list)
        for rel in dict.fromkeys(self.relationships):
            for instance in dict.fromkeys(rel.participants):
                incident[instance].append(rel)
        return {k: tuple(v) for k, v in incident.items()}

    @cached_property
    def _by_name(self) -> dict[str, RelationshipInstance]:
        return {rel.name: rel for rel in self.relationships}

    @cached_property
    def _by_class(self) -> dict[str, tuple[str, ...]]:
        grouped: dict[str, list[str]] = defaultdict(list)
        for cls_name, ids in self.entities.items():
            grouped[cls_name].extend(ids)
        for rel in dict.fromkeys(self.relationships):
            grouped[rel.relationship].append(rel.name)
        return {k: tuple(v) for k, v in grouped.items()}

    def class_of(self, instance: str) -> str:
        """Item class of an entity id or relationship-instance name.

        Raises:
            UnknownNameError: If the instance is not part of the skeleton
        """
        try:
            return self._class_of[instance]
        except KeyError:
            raise UnknownNameError(f"Unknown instance '{instance}'") from None

    def has_instance(self, instance: str) -> bool:
        return instance in self._class_of

    def instances_of(self, item_class: str) -> tuple[str, ...]:
        """Ids of every instance of an entity or relationship class."""
        return self._by_class.get(item_class, ())

    def incident(self, entity: str) -> tuple[RelationshipInstance, ...]:
        """Distinct relationship instances an entity instance participates in."""
        return self._incident.get(entity, ())

    def relationship_instance(self, name: str) -> RelationshipInstance:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownNameError(f"Unknown relationship instance '{name}'") from None

    @property
    def entity_ids(self) -> list[str]:
        return [i for ids in self.entities.values() for i in ids]

    @property
    def size(self) -> int:
        """Total number of entity instances."""
        return sum(len(ids) for ids in self.entities.values())

    @property
    def label(self) -> str:
        """Canonical text label used to order reports."""
        entity_part = ";".join(
            f"{name}:{','.join(sorted(ids))}" for name, ids in sorted(self.entities.items())
        )
        rel_part = ";".join(sorted(rel.name for rel in self.relationships))
        return f"{entity_part}|{rel_part}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "entities": {name: list(ids) for name, ids in self.entities.items()},
            "relationships": [rel.to_dict() for rel in self.relationships],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Skeleton:
        return cls(
            entities={
                name: tuple(ids) for name, ids in data.get("entities", {}).items()
            },
            relationships=tuple(
                RelationshipInstance(r["class"], tuple(r["participants"]))
                for r in data.get("relationships", [])
            ),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)
