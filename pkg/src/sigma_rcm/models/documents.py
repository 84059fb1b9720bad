"""Pydantic models for model and skeleton files.

These models validate the *structure* of a file (required keys, types,
cardinality literals). Domain invariants such as unknown entities or
self-loop dependencies are left to the validators so that they are reported
as violations rather than parse errors.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class ParticipantDocument(BaseModel):
    """Participant slot of a relationship class."""

    model_config = ConfigDict(extra="forbid")

    entity: str = Field(..., description="Participating entity class")
    cardinality: Literal["one", "many"] = Field(
        "many", description="Participation constraint"
    )


class EntityDocument(BaseModel):
    """Entity class entry."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Entity class name")
    attributes: list[str] = Field(default_factory=list, description="Attribute classes")


class RelationshipDocument(BaseModel):
    """Relationship class entry."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Relationship class name")
    participants: list[ParticipantDocument] = Field(
        ..., description="Ordered participant slots"
    )
    attributes: list[str] = Field(default_factory=list, description="Attribute classes")


class SchemaDocument(BaseModel):
    """Schema section of a model file."""

    model_config = ConfigDict(extra="forbid")

    entities: list[EntityDocument] = Field(default_factory=list)
    relationships: list[RelationshipDocument] = Field(default_factory=list)


class VariableDocument(BaseModel):
    """Relational variable ``{"path": [...], "attribute": ...}``."""

    model_config = ConfigDict(extra="forbid")

    path: list[str] = Field(..., min_length=1, description="Relational path items")
    attribute: str = Field(..., description="Attribute of the terminal class")


class EffectDocument(BaseModel):
    """Effect side of a dependency."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    item_class: str = Field(..., alias="class", description="Effect item class")
    attribute: str = Field(..., description="Effect attribute")


class DependencyDocument(BaseModel):
    """Relational dependency entry."""

    model_config = ConfigDict(extra="forbid")

    cause: VariableDocument
    effect: EffectDocument


class ModelDocument(BaseModel):
    """Complete model file: schema, dependencies, optional hop threshold."""

    model_config = ConfigDict(extra="forbid")

    schema_: SchemaDocument = Field(..., alias="schema", description="Schema section")
    dependencies: list[DependencyDocument] = Field(default_factory=list)
    hop_threshold: int | None = Field(None, ge=0, description="Default hop threshold")


class RelationshipInstanceDocument(BaseModel):
    """Relationship instance entry of a skeleton file."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    relationship: str = Field(..., alias="class", description="Relationship class")
    participants: list[str] = Field(..., description="Participant instance ids")


class SkeletonDocument(BaseModel):
    """Skeleton file."""

    model_config = ConfigDict(extra="forbid")

    entities: dict[str, list[str]] = Field(default_factory=dict)
    relationships: list[RelationshipInstanceDocument] = Field(default_factory=list)
