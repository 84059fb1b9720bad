"""Skeleton validation, terminal sets, enumeration and random generation.

Design Decision: Connected shapes first, disjoint unions assembled from them

Rationale: Every skeleton up to isomorphism is a multiset of connected
components. Connected shapes are grown breadth-first by relationship count,
one relationship instance at a time; each new instance must touch an existing
entity instance and may introduce fresh ones. Candidates are deduplicated by
a Weisfeiler-Lehman hash bucket followed by an exact ``nx.is_isomorphic``
check on the incidence graph (node labels = classes, edge labels = slot
index). Disconnected skeletons are then multisets of those shapes whose
per-class counts fit the bound, which needs no isomorphism test at all.

Base-anchored verification only touches the component holding the base, so
the oracle asks for ``connected_only`` skeletons and skips the unions.

Trade-offs:
- Breadth-first growth keeps one level in memory at a time, but the unions
  need every connected shape kept until growth finishes
- The minimum-degree filter (degree > 1) is applied when yielding, never when
  growing, since low-degree skeletons grow into high-degree ones
"""

from __future__ import annotations

import logging
import random
from collections import Counter, defaultdict
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import product
from typing import Literal

import networkx as nx
from networkx.algorithms.isomorphism import categorical_edge_match, categorical_node_match

from sigma_rcm.exceptions import InfeasibleSizeError, PreconditionError, UnknownNameError
from sigma_rcm.models.relational import RelationalPath
from sigma_rcm.models.schema import Cardinality, Schema, ValidationIssue
from sigma_rcm.models.skeleton import RelationshipInstance, Skeleton


logger = logging.getLogger(__name__)

BurnScope = Literal["history", "previous"]
TerminalSet = frozenset[str]

_NODE_MATCH = categorical_node_match("label", None)
_EDGE_MATCH = categorical_edge_match("slot", None)


def instance_degree(skeleton: Skeleton, instance: str) -> int:
    """Number of distinct relationship instances an entity instance joins."""
    return len(skeleton.incident(instance))


def validate_skeleton(
    schema: Schema,
    skeleton: Skeleton,
    require_min_degree_2: bool = False,
) -> list[ValidationIssue]:
    """Report every violated skeleton invariant.

    Args:
        schema: Schema the skeleton instantiates
        skeleton: Skeleton to check
        require_min_degree_2: Also require degree > 1 for every entity
            instance

    Returns:
        Sorted issues; empty means valid
    """
    issues: set[ValidationIssue] = set()

    id_counts: Counter[str] = Counter()
    class_of: dict[str, str] = {}
    for cls_name, ids in skeleton.entities.items():
        if not schema.has_class(cls_name) or not schema.is_entity(cls_name):
            issues.add(
                ValidationIssue(
                    "UNKNOWN_ENTITY_CLASS", cls_name, f"'{cls_name}' is not an entity class"
                )
            )
        for instance in ids:
            id_counts[instance] += 1
            class_of.setdefault(instance, cls_name)
    for instance, count in id_counts.items():
        if count > 1:
            issues.add(
                ValidationIssue(
                    "DUPLICATE_INSTANCE", instance, f"Instance id '{instance}' is used {count} times"
                )
            )

    slot_use: dict[tuple[str, int, str], int] = defaultdict(int)
    for rel, count in Counter(skeleton.relationships).items():
        subject = rel.name
        if count > 1:
            issues.add(
                ValidationIssue(
                    "DUPLICATE_RELATIONSHIP_INSTANCE", subject, f"'{subject}' is listed {count} times"
                )
            )
        if not schema.has_class(rel.relationship) or schema.is_entity(rel.relationship):
            issues.add(
                ValidationIssue(
                    "UNKNOWN_RELATIONSHIP",
                    subject,
                    f"'{rel.relationship}' is not a relationship class",
                )
            )
            continue
        rel_cls = schema.relationship(rel.relationship)
        if len(rel.participants) != len(rel_cls.participants):
            issues.add(
                ValidationIssue(
                    "ARITY_MISMATCH",
                    subject,
                    f"'{rel.relationship}' takes {len(rel_cls.participants)} participants, "
                    f"got {len(rel.participants)}",
                )
            )
            continue
        if len(set(rel.participants)) != len(rel.participants):
            issues.add(
                ValidationIssue(
                    "REPEATED_PARTICIPANT", subject, "An instance fills two slots of one relationship instance"
                )
            )
        for k, (instance, slot) in enumerate(zip(rel.participants, rel_cls.participants, strict=True)):
            if instance not in class_of:
                issues.add(
                    ValidationIssue("UNKNOWN_INSTANCE", subject, f"Participant '{instance}' is not declared")
                )
                continue
            if class_of[instance] != slot.entity:
                issues.add(
                    ValidationIssue(
                        "PARTICIPANT_CLASS_MISMATCH",
                        subject,
                        f"Slot {k} expects '{slot.entity}', '{instance}' is '{class_of[instance]}'",
                    )
                )
            if slot.cardinality is Cardinality.ONE:
                slot_use[(rel.relationship, k, instance)] += 1

    for (rel_name, k, instance), count in slot_use.items():
        if count > 1:
            entity = schema.relationship(rel_name).participants[k].entity
            issues.add(
                ValidationIssue(
                    "CARDINALITY_VIOLATION",
                    instance,
                    f"'{instance}' participates in {count} '{rel_name}' instances, "
                    f"but {entity} participates with cardinality ONE",
                )
            )

    if require_min_degree_2:
        for instance in sorted(class_of):
            degree = instance_degree(skeleton, instance)
            if degree <= 1:
                issues.add(
                    ValidationIssue(
                        "MIN_DEGREE", instance, f"'{instance}' has degree {degree}; degree > 1 is required"
                    )
                )

    return sorted(issues)


def terminal_set(
    skeleton: Skeleton,
    path: RelationalPath,
    base: str,
    burn: BurnScope = "history",
) -> TerminalSet:
    """Instances reached by traversing ``path`` from ``base``.

    Layer 0 is {base}; layer i+1 holds the instances of item class i+1
    adjacent to layer i, minus burned instances. With ``burn="history"`` an
    instance met in any earlier layer is burned; with ``burn="previous"``
    only layer i-1 is.

    Raises:
        UnknownNameError: If ``base`` is not in the skeleton
        PreconditionError: If ``base`` is not an instance of the path's first class
    """
    if skeleton.class_of(base) != path.base:
        raise PreconditionError(
            f"Base '{base}' is a {skeleton.class_of(base)}, path starts at {path.base}"
        )

    layers: list[set[str]] = [{base}]
    burned: set[str] = {base}
    for target in path.items[1:]:
        current = layers[-1]
        reached: set[str] = set()
        for instance in current:
            if skeleton.has_instance(instance) and _is_relationship(skeleton, instance):
                rel = skeleton.relationship_instance(instance)
                reached.update(p for p in rel.participants if skeleton.class_of(p) == target)
            else:
                reached.update(
                    r.name for r in skeleton.incident(instance) if r.relationship == target
                )
        excluded = burned if burn == "history" else (layers[-2] if len(layers) > 1 else set())
        layer = reached - excluded
        if not layer:
            return frozenset()
        layers.append(layer)
        burned |= layer
    return frozenset(layers[-1])


def _is_relationship(skeleton: Skeleton, instance: str) -> bool:
    try:
        skeleton.relationship_instance(instance)
    except UnknownNameError:
        return False
    return True


@dataclass(frozen=True)
class _GrowthState:
    counts: tuple[tuple[str, int], ...]
    relationships: tuple[RelationshipInstance, ...]

    def count(self, entity: str) -> int:
        return dict(self.counts).get(entity, 0)

    def to_skeleton(self) -> Skeleton:
        return Skeleton(
            entities={
                name: tuple(_instance_id(name, i) for i in range(n))
                for name, n in self.counts
                if n > 0
            },
            relationships=self.relationships,
        )


def _instance_id(entity: str, index: int) -> str:
    return f"{entity}_{index}"


def _extensions(schema: Schema, state: _GrowthState, max_per_entity: int) -> Iterator[_GrowthState]:
    existing = set(state.relationships)
    counts = dict(state.counts)
    used_one_slots = {
        (rel.relationship, k, instance)
        for rel in state.relationships
        for k, instance in enumerate(rel.participants)
    }
    for rel_cls in schema.relationships:
        options: list[list[tuple[str, bool]]] = []
        for slot in rel_cls.participants:
            n = counts.get(slot.entity, 0)
            choices = [(_instance_id(slot.entity, i), False) for i in range(n)]
            choices.append((slot.entity, True))
            options.append(choices)

        for combo in product(*options):
            fresh_used: Counter[str] = Counter()
            participants: list[str] = []
            # (existing id, False) or (entity class, True) for a fresh instance
            for value, is_fresh in combo:
                if is_fresh:
                    participants.append(
                        _instance_id(value, counts.get(value, 0) + fresh_used[value])
                    )
                    fresh_used[value] += 1
                else:
                    participants.append(value)
            if sum(fresh_used.values()) == len(participants):
                continue
            if any(counts.get(c, 0) + n > max_per_entity for c, n in fresh_used.items()):
                continue
            if len(set(participants)) != len(participants):
                continue
            rel = RelationshipInstance(rel_cls.name, tuple(participants))
            if rel in existing:
                continue
            if any(
                slot.cardinality is Cardinality.ONE
                and (rel_cls.name, k, participants[k]) in used_one_slots
                for k, slot in enumerate(rel_cls.participants)
            ):
                continue
            new_counts = dict(counts)
            for c, n in fresh_used.items():
                new_counts[c] = new_counts.get(c, 0) + n
            yield _GrowthState(
                counts=tuple(sorted(new_counts.items())),
                relationships=tuple(sorted((*state.relationships, rel))),
            )


def _incidence_graph(state: _GrowthState) -> nx.Graph:
    graph = nx.Graph()
    for name, n in state.counts:
        for i in range(n):
            graph.add_node(_instance_id(name, i), label=name)
    for idx, rel in enumerate(state.relationships):
        rel_node = f"#{idx}"
        graph.add_node(rel_node, label=rel.relationship)
        for k, instance in enumerate(rel.participants):
            graph.add_edge(rel_node, instance, slot=str(k))
    return graph


def _has_min_degree_2(skeleton: Skeleton) -> bool:
    return all(instance_degree(skeleton, i) >= 2 for i in skeleton.entity_ids)


def _connected_shapes(schema: Schema, max_per_entity: int) -> Iterator[_GrowthState]:
    level = [
        _GrowthState(counts=((entity.name, 1),), relationships=())
        for entity in schema.entities
    ]
    yield from level

    depth = 0
    while level:
        depth += 1
        buckets: dict[str, list[nx.Graph]] = defaultdict(list)
        seen: set[_GrowthState] = set()
        next_level: list[_GrowthState] = []
        for state in level:
            for candidate in _extensions(schema, state, max_per_entity):
                # same ids reached from two parents
                if candidate in seen:
                    continue
                seen.add(candidate)
                graph = _incidence_graph(candidate)
                digest = nx.weisfeiler_lehman_graph_hash(
                    graph, node_attr="label", edge_attr="slot", iterations=3
                )
                bucket = buckets[digest]
                if any(
                    nx.is_isomorphic(graph, other, node_match=_NODE_MATCH, edge_match=_EDGE_MATCH)
                    for other in bucket
                ):
                    continue
                bucket.append(graph)
                next_level.append(candidate)
                yield candidate
        logger.debug(f"Skeleton level {depth}: {len(next_level)} connected shapes")
        level = next_level


def _component_unions(
    shapes: list[_GrowthState], max_per_entity: int
) -> Iterator[tuple[_GrowthState, ...]]:
    """Multisets of two or more shapes whose class counts stay within the bound."""

    def extend(
        start: int, chosen: tuple[_GrowthState, ...], counts: Counter[str]
    ) -> Iterator[tuple[_GrowthState, ...]]:
        for idx in range(start, len(shapes)):
            merged = counts + Counter(dict(shapes[idx].counts))
            if any(n > max_per_entity for n in merged.values()):
                continue
            picked = (*chosen, shapes[idx])
            if len(picked) >= 2:
                yield picked
            yield from extend(idx, picked, merged)

    yield from extend(0, (), Counter())


def _disjoint_union(components: tuple[_GrowthState, ...]) -> _GrowthState:
    offsets: Counter[str] = Counter()
    relationships: list[RelationshipInstance] = []
    for component in components:
        renamed = {
            _instance_id(name, i): _instance_id(name, offsets[name] + i)
            for name, n in component.counts
            for i in range(n)
        }
        relationships.extend(
            RelationshipInstance(rel.relationship, tuple(renamed[p] for p in rel.participants))
            for rel in component.relationships
        )
        offsets.update(dict(component.counts))
    return _GrowthState(
        counts=tuple(sorted(offsets.items())),
        relationships=tuple(sorted(relationships)),
    )


def enumerate_skeletons(
    schema: Schema,
    max_per_entity: int,
    require_min_degree_2: bool = False,
    connected_only: bool = False,
) -> Iterator[Skeleton]:
    """Stream non-empty skeletons up to isomorphism.

    Connected skeletons come first, smallest first. Unless ``connected_only``
    is set, disjoint unions of two or more connected shapes follow. Connected
    shapes are pairwise non-isomorphic, so each multiset of shapes is a
    distinct isomorphism class and no further dedup is needed.

    Args:
        schema: Schema to instantiate
        max_per_entity: Maximum instances per entity class (>= 1)
        require_min_degree_2: Yield only skeletons where every entity
            instance has degree > 1
        connected_only: Stop after the connected skeletons

    Yields:
        Valid skeletons, ordered as above; instance ids are ``<CLASS>_<index>``

    Raises:
        PreconditionError: If ``max_per_entity`` < 1
    """
    if max_per_entity < 1:
        raise PreconditionError(f"max_per_entity must be >= 1, got {max_per_entity}")

    shapes: list[_GrowthState] = []
    total = 0
    for state in _connected_shapes(schema, max_per_entity):
        skeleton = state.to_skeleton()
        if require_min_degree_2 and not _has_min_degree_2(skeleton):
            continue
        if not connected_only:
            shapes.append(state)
        total += 1
        yield skeleton

    # a union passes the degree filter iff each of its components does
    for components in _component_unions(shapes, max_per_entity):
        total += 1
        yield _disjoint_union(components).to_skeleton()

    scope = "connected " if connected_only else ""
    logger.info(
        f"Enumerated {total} {scope}skeleton(s) (max {max_per_entity} per entity class)"
    )


def random_skeleton(
    schema: Schema,
    sizes: dict[str, int],
    density: float,
    seed: int,
) -> Skeleton:
    """Sample a skeleton that always respects cardinalities.

    Every candidate relationship tuple (distinct participants of the right
    classes) is visited in a seeded random order and kept with probability
    ``density`` if its ONE slots are still free. ``density=1`` therefore
    yields a maximal assignment.

    Args:
        schema: Schema to instantiate
        sizes: Entity class -> number of instances
        density: Inclusion probability in [0, 1]
        seed: Random seed; equal seeds give equal skeletons

    Raises:
        PreconditionError: If density is outside [0, 1]
        UnknownNameError: If a size names an unknown class
        InfeasibleSizeError: If a size is negative or names a relationship class
    """
    if not 0.0 <= density <= 1.0:
        raise PreconditionError(f"density must be in [0, 1], got {density}")
    for name, n in sizes.items():
        if not schema.is_entity(name):
            raise InfeasibleSizeError(f"'{name}' is a relationship class; sizes apply to entities")
        if not isinstance(n, int) or n < 0:
            raise InfeasibleSizeError(f"Size for '{name}' must be a non-negative integer, got {n!r}")

    rng = random.Random(seed)
    entities = {
        entity.name: tuple(_instance_id(entity.name, i) for i in range(sizes.get(entity.name, 0)))
        for entity in schema.entities
    }
    relationships: list[RelationshipInstance] = []
    for rel_cls in schema.relationships:
        used: set[tuple[int, str]] = set()
        candidates = [
            combo
            for combo in product(*(entities.get(p.entity, ()) for p in rel_cls.participants))
            if len(set(combo)) == len(combo)
        ]
        rng.shuffle(candidates)
        for combo in candidates:
            if rng.random() >= density:
                continue
            one_slots = [
                (k, instance)
                for k, (instance, slot) in enumerate(zip(combo, rel_cls.participants, strict=True))
                if slot.cardinality is Cardinality.ONE
            ]
            if any(key in used for key in one_slots):
                continue
            used.update(one_slots)
            relationships.append(RelationshipInstance(rel_cls.name, tuple(combo)))

    skeleton = Skeleton(
        entities={k: v for k, v in entities.items() if v},
        relationships=tuple(relationships),
    )
    logger.debug(
        f"Random skeleton (seed={seed}): {skeleton.size} entities, {len(relationships)} relationships"
    )
    return skeleton
