"""Value types, file documents and settings for sigma-rcm."""

from sigma_rcm.models.config import RCMConfig
from sigma_rcm.models.relational import (
    RelationalDependency,
    RelationalModel,
    RelationalPath,
    RelationalVariable,
    parse_relational_variable,
)
from sigma_rcm.models.schema import (
    Cardinality,
    EntityClass,
    Participant,
    RelationshipClass,
    Schema,
    ValidationIssue,
    validate_schema,
)
from sigma_rcm.models.skeleton import RelationshipInstance, Skeleton


__all__ = [
    "Cardinality",
    "EntityClass",
    "Participant",
    "RCMConfig",
    "RelationalDependency",
    "RelationalModel",
    "RelationalPath",
    "RelationalVariable",
    "RelationshipClass",
    "RelationshipInstance",
    "Schema",
    "Skeleton",
    "ValidationIssue",
    "parse_relational_variable",
    "validate_schema",
]
