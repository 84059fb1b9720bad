"""Relational path validity, enumeration, ``extend`` and model cycles.

Design Decision: Cardinality-sensitive immediate-return rule

Rationale: Terminal sets use bridge burning, so a path that immediately
returns to the class it just left only reaches anything when the skeleton can
hold a *different* instance there:

- ``[E, R, E]`` needs a second slot of class E in R (a self-relationship),
  otherwise the only E filler of each R instance is the burned one.
- ``[R, E, R]`` needs an E instance that can sit in two R instances: either a
  MANY slot of E in R, or two slots of class E.

Paths violating the rule always have empty terminal sets, so they are
rejected as invalid and silently filtered from ``extend``.

Design Decision: ``extend`` pivots

Rationale: A pivot of size m is admissible when the last m items of the
original path equal the first m items of the extension reversed. The
candidate drops the last m-1 items of the original and the first m items of
the extension. m = 1 is plain concatenation at the shared endpoint. Results
are filtered by validity and by the hop threshold.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

import networkx as nx

from sigma_rcm.exceptions import PreconditionError
from sigma_rcm.models.relational import (
    RelationalDependency,
    RelationalModel,
    RelationalPath,
)
from sigma_rcm.models.schema import (
    Cardinality,
    Schema,
    ValidationIssue,
    classes_adjacent,
    validate_schema,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathCheck:
    """Outcome of a path validity check.

    Attributes:
        valid: True iff every path invariant holds
        reason: Description of the first violation (None when valid)
    """

    valid: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def _return_allowed(schema: Schema, outer: str, inner: str) -> bool:
    """Whether ``[outer, inner, outer]`` can reach a different ``outer`` instance."""
    if schema.is_entity(outer):
        rel = schema.relationship(inner)
        return len(rel.slots_of(outer)) >= 2
    rel = schema.relationship(outer)
    slots = rel.slots_of(inner)
    return len(slots) >= 2 or any(
        rel.participants[i].cardinality is Cardinality.MANY for i in slots
    )


def is_valid_path(schema: Schema, items: list[str] | tuple[str, ...]) -> PathCheck:
    """Check adjacency, alternation and the immediate-return rule.

    Args:
        schema: Schema the path traverses
        items: Item-class names, perspective first

    Returns:
        PathCheck with the first violation, if any

    Raises:
        PreconditionError: If ``items`` is empty
        UnknownNameError: If an item does not resolve
    """
    if not items:
        raise PreconditionError("A relational path needs at least one item")
    for name in items:
        schema.item_class(name)

    for a, b in zip(items, items[1:], strict=False):
        if not classes_adjacent(schema, a, b):
            return PathCheck(False, f"'{a}' and '{b}' are not adjacent")

    for i in range(len(items) - 2):
        outer, inner = items[i], items[i + 1]
        if items[i + 2] == outer and not _return_allowed(schema, outer, inner):
            return PathCheck(
                False,
                f"[{outer}, {inner}, {outer}] returns to the instance it came from "
                "under the cardinality constraints",
            )
    return PathCheck(True)


def enumerate_paths(
    schema: Schema,
    perspective: str,
    h: int,
    attributed_only: bool = False,
) -> list[RelationalPath]:
    """All valid paths from ``perspective`` with at most h+1 items.

    Args:
        schema: Schema to traverse
        perspective: First item class of every path
        h: Hop threshold (h >= 0)
        attributed_only: Keep only paths whose terminal class has attributes

    Returns:
        Paths sorted lexicographically by item sequence

    Raises:
        PreconditionError: If ``h`` is negative
        UnknownNameError: If ``perspective`` does not resolve
    """
    if h < 0:
        raise PreconditionError(f"Hop threshold must be >= 0, got {h}")
    schema.item_class(perspective)

    neighbors: dict[str, list[str]] = {}
    for name in (*schema.entity_names, *schema.relationship_names):
        neighbors[name] = [
            other
            for other in (*schema.entity_names, *schema.relationship_names)
            if classes_adjacent(schema, name, other)
        ]

    found: list[RelationalPath] = []
    frontier: list[tuple[str, ...]] = [(perspective,)]
    while frontier:
        items = frontier.pop()
        found.append(RelationalPath(items))
        if len(items) == h + 1:
            continue
        for nxt in neighbors.get(items[-1], []):
            candidate = (*items, nxt)
            if is_valid_path(schema, candidate):
                frontier.append(candidate)

    if attributed_only:
        found = [p for p in found if schema.attributes_of(p.terminal)]
    return sorted(set(found))


def extend(
    schema: Schema,
    original: RelationalPath,
    extension: RelationalPath,
    h: int,
) -> list[RelationalPath]:
    """Join two paths at every admissible pivot.

    Args:
        schema: Schema used for validity filtering
        original: Path ending in the first item of ``extension``
        extension: Path to append
        h: Hop threshold; results have at most h+1 items

    Returns:
        Distinct valid paths, sorted

    Raises:
        PreconditionError: If the endpoint classes differ
    """
    if original.terminal != extension.base:
        raise PreconditionError(
            f"Cannot extend {original} with {extension}: "
            f"'{original.terminal}' != '{extension.base}'"
        )

    a, b = original.items, extension.items
    results: set[RelationalPath] = set()
    for m in range(1, min(len(a), len(b)) + 1):
        if any(a[-i] != b[i - 1] for i in range(1, m + 1)):
            break
        candidate = a[: len(a) - (m - 1)] + b[m:]
        if len(candidate) <= h + 1 and is_valid_path(schema, candidate):
            results.add(RelationalPath(candidate))
    return sorted(results)


def detect_model_cycles(model: RelationalModel) -> list[list[RelationalDependency]]:
    """Every elementary cycle of the class-level dependency digraph.

    Nodes are (class, attribute) pairs; each dependency is an edge from its
    cause node to its effect node. Parallel dependencies between the same
    nodes yield one cycle per combination.

    Returns:
        Cycles as dependency lists, each rotated to start at its smallest
        node and the whole list sorted; empty iff the model is acyclic
    """
    graph = nx.DiGraph()
    for dep in model.dependencies:
        if graph.has_edge(dep.cause_node, dep.effect_node):
            graph.edges[dep.cause_node, dep.effect_node]["deps"].append(dep)
        else:
            graph.add_edge(dep.cause_node, dep.effect_node, deps=[dep])

    cycles: list[list[RelationalDependency]] = []
    for node_cycle in nx.simple_cycles(graph):
        start = node_cycle.index(min(node_cycle))
        nodes = node_cycle[start:] + node_cycle[:start]
        hops = [
            sorted(graph.edges[u, nodes[(i + 1) % len(nodes)]]["deps"])
            for i, u in enumerate(nodes)
        ]
        cycles.extend(list(combo) for combo in product(*hops))

    cycles.sort(key=lambda cycle: [str(dep) for dep in cycle])
    if cycles:
        logger.debug(f"Model has {len(cycles)} dependency cycle(s)")
    return cycles


def validate_model(model: RelationalModel) -> list[ValidationIssue]:
    """Schema issues plus dependency well-formedness issues.

    Codes: INVALID_PATH, UNKNOWN_ATTRIBUTE, EFFECT_CLASS_MISMATCH, SELF_LOOP.
    """
    schema = model.schema
    issues = set(validate_schema(schema))

    for dep in model.dependencies:
        subject = str(dep)
        items = dep.cause.path.items
        unknown = [name for name in items if not schema.has_class(name)]
        if unknown:
            issues.add(
                ValidationIssue(
                    "INVALID_PATH", subject, f"Unknown item class(es): {', '.join(unknown)}"
                )
            )
            continue
        check = is_valid_path(schema, items)
        if not check:
            issues.add(ValidationIssue("INVALID_PATH", subject, check.reason or ""))
            continue
        if dep.cause.attribute not in schema.attributes_of(dep.cause.terminal):
            issues.add(
                ValidationIssue(
                    "UNKNOWN_ATTRIBUTE",
                    subject,
                    f"'{dep.cause.terminal}' has no attribute '{dep.cause.attribute}'",
                )
            )
        if dep.effect_class != dep.cause.path.base:
            issues.add(
                ValidationIssue(
                    "EFFECT_CLASS_MISMATCH",
                    subject,
                    f"Effect class '{dep.effect_class}' must equal the cause path's "
                    f"first item '{dep.cause.path.base}'",
                )
            )
        elif dep.effect_attribute not in schema.attributes_of(dep.effect_class):
            issues.add(
                ValidationIssue(
                    "UNKNOWN_ATTRIBUTE",
                    subject,
                    f"'{dep.effect_class}' has no attribute '{dep.effect_attribute}'",
                )
            )
        if len(items) == 1 and dep.cause.attribute == dep.effect_attribute:
            issues.add(
                ValidationIssue(
                    "SELF_LOOP", subject, "Dependency would make every node its own parent"
                )
            )

    return sorted(issues)
