"""Abstract ground graphs (AGG) and σ-abstract ground graphs (σ-AGG).

Design Decision: One construction for both graph kinds

Rationale: AGG and σ-AGG are built identically; the only difference is that
the acyclic kind refuses models with class-level dependency cycles. Which
separation criterion may run on the result is checked at query time: mode D
needs an acyclic graph, mode SIGMA accepts any graph.

Design Decision: Intersection variables by constructive witness search

Rationale: Two relational variables intersect when some skeleton has an
instance reached from the same base along both paths. Candidates are pairs
with the same perspective, terminal class and attribute whose paths are
distinct (and, under full-history burning, where neither path is a prefix of
the other: the prefix's terminal layer is burned for the longer path). A
candidate is kept only if ``find_intersection_witness`` builds such a
skeleton within ``intersection_bound`` instances per entity class.

The search lays both paths out as walks sharing the base and the terminal,
picks a slot for every walk neighbour of each relationship position, fills
the remaining slots with fresh entity variables, then tries every way of
identifying same-class entity variables (restricted-growth partitions with at
most k blocks, k = 1..bound). The first partition yielding a valid skeleton
with overlapping terminal sets is returned.

Trade-offs:
- Bounded search: a pair that only intersects in larger skeletons is dropped
- Intersections inherit every in-edge and out-edge of both constituents
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations, product
from typing import Any

import networkx as nx

from sigma_rcm.exceptions import (
    CyclicModelError,
    ModeMismatchError,
    PreconditionError,
    UnknownNameError,
)
from sigma_rcm.models.relational import RelationalModel, RelationalPath, RelationalVariable
from sigma_rcm.models.schema import Schema
from sigma_rcm.models.skeleton import RelationshipInstance, Skeleton
from sigma_rcm.services.paths import detect_model_cycles, enumerate_paths, extend
from sigma_rcm.services.separation import (
    SeparationEngine,
    SeparationMode,
    SeparationQuery,
    SeparationResult,
    Walk,
)
from sigma_rcm.services.skeletons import BurnScope, terminal_set, validate_skeleton


logger = logging.getLogger(__name__)


class AggNodeKind(str, Enum):
    RELVAR = "relvar"
    INTERSECTION = "intersection"


class AggMode(str, Enum):
    """Which abstract ground graph to build."""

    ACYCLIC_AGG = "agg"
    SIGMA_AGG = "sigma-agg"


@dataclass(frozen=True, order=True)
class AggNode:
    """Relational variable node or intersection of two relational variables.

    Intersections are stored with their constituents in sorted order, so the
    pair is unordered.
    """

    kind: AggNodeKind
    primary: RelationalVariable
    secondary: RelationalVariable | None = None

    @classmethod
    def relvar(cls, variable: RelationalVariable) -> AggNode:
        return cls(AggNodeKind.RELVAR, variable)

    @classmethod
    def intersection(cls, a: RelationalVariable, b: RelationalVariable) -> AggNode:
        if a == b:
            raise PreconditionError(f"Cannot intersect {a} with itself")
        if a.attribute != b.attribute or a.terminal != b.terminal or a.perspective != b.perspective:
            raise PreconditionError(f"{a} and {b} cannot share instances")
        first, second = sorted((a, b))
        return cls(AggNodeKind.INTERSECTION, first, second)

    @property
    def is_intersection(self) -> bool:
        return self.kind is AggNodeKind.INTERSECTION

    @property
    def constituents(self) -> tuple[RelationalVariable, ...]:
        if self.secondary is None:
            return (self.primary,)
        return (self.primary, self.secondary)

    def __str__(self) -> str:
        if self.secondary is None:
            return str(self.primary)
        return f"{self.primary} ∩ {self.secondary}"


@dataclass(frozen=True)
class SigmaAGG:
    """Abstract ground graph for one perspective and hop threshold.

    Attributes:
        perspective: Base item class of every node
        hop: Hop threshold h (paths have at most h+1 items)
        mode: Which construction produced the graph
        nodes: Relational variable and intersection nodes
        rv_edges: Edges between relational variable nodes
        iv_edges: Edges with exactly one intersection endpoint
    """

    perspective: str
    hop: int
    mode: AggMode
    nodes: frozenset[AggNode]
    rv_edges: frozenset[tuple[AggNode, AggNode]]
    iv_edges: frozenset[tuple[AggNode, AggNode]]

    @property
    def edges(self) -> frozenset[tuple[AggNode, AggNode]]:
        return self.rv_edges | self.iv_edges

    @cached_property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.nodes))
        graph.add_edges_from(sorted(self.edges))
        return graph

    @cached_property
    def engine(self) -> SeparationEngine:
        return SeparationEngine(self.digraph)

    @property
    def is_cyclic(self) -> bool:
        return not nx.is_directed_acyclic_graph(self.digraph)

    @property
    def relational_variables(self) -> list[RelationalVariable]:
        return sorted(n.primary for n in self.nodes if not n.is_intersection)

    @property
    def intersections(self) -> list[AggNode]:
        return sorted(n for n in self.nodes if n.is_intersection)

    def node_for(self, variable: RelationalVariable) -> AggNode:
        """RV node of ``variable``.

        Raises:
            UnknownNameError: If the variable is not a node of this graph
        """
        node = AggNode.relvar(variable)
        if node not in self.nodes:
            raise UnknownNameError(
                f"{variable} is not a relational variable of the "
                f"{self.perspective} graph with h={self.hop}"
            )
        return node


@dataclass(frozen=True)
class AugmentedSet:
    """Base variables plus every intersection node built on one of them."""

    base: frozenset[RelationalVariable]
    augmented: frozenset[AggNode]


@dataclass(frozen=True)
class IntersectionWitness:
    """Skeleton in which two paths reach a common instance from ``base``."""

    skeleton: Skeleton
    base: str
    overlap: frozenset[str]


@dataclass
class _Layout:
    entity_vars: list[str]
    # relationship position -> (class, required entity variables)
    rel_positions: list[tuple[str, list[int]]]
    base: tuple[str, int]


def _layout(schema: Schema, a: RelationalPath, b: RelationalPath) -> _Layout:
    entity_vars: list[str] = []
    rel_positions: list[tuple[str, list[int]]] = []

    def new_position(item: str) -> tuple[str, int]:
        if schema.is_entity(item):
            entity_vars.append(item)
            return ("E", len(entity_vars) - 1)
        rel_positions.append((item, []))
        return ("R", len(rel_positions) - 1)

    base = new_position(a.base)
    terminal = base if min(len(a), len(b)) == 1 else new_position(a.terminal)
    for path in (a, b):
        if len(path) == 1:
            continue
        walk = [base, *(new_position(item) for item in path.items[1:-1]), terminal]
        for u, v in zip(walk, walk[1:], strict=False):
            entity, rel = (u, v) if u[0] == "E" else (v, u)
            required = rel_positions[rel[1]][1]
            if entity[1] not in required:
                required.append(entity[1])
    return _Layout(entity_vars, rel_positions, base)


def _restricted_growth(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of n items into at most k blocks."""
    if n == 0:
        yield ()
        return

    def grow(prefix: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for block in range(min(top + 2, k)):
            prefix.append(block)
            yield from grow(prefix, max(top, block))
            prefix.pop()

    yield from grow([0], 0)


def _slot_assignments(
    schema: Schema, layout: _Layout
) -> Iterator[tuple[list[str], list[tuple[str, list[list[int]]]]]]:
    """Each way of seating required entity variables in relationship slots.

    Yields the extended entity-variable list (free slots become fresh
    variables) and, per relationship position, the variables seated in each slot.
    """
    choices_per_position: list[list[list[int]]] = []
    for rel_name, required in layout.rel_positions:
        rel = schema.relationship(rel_name)
        options = [rel.slots_of(layout.entity_vars[var]) for var in required]
        choices_per_position.append([list(c) for c in product(*options)])

    for choice in product(*choices_per_position):
        entity_vars = list(layout.entity_vars)
        seating: list[tuple[str, list[list[int]]]] = []
        for (rel_name, required), slots in zip(layout.rel_positions, choice, strict=True):
            rel = schema.relationship(rel_name)
            seated: list[list[int]] = [[] for _ in rel.participants]
            for var, slot in zip(required, slots, strict=True):
                seated[slot].append(var)
            for k, participant in enumerate(rel.participants):
                if not seated[k]:
                    entity_vars.append(participant.entity)
                    seated[k].append(len(entity_vars) - 1)
            seating.append((rel_name, seated))
        yield entity_vars, seating


def _build_candidate(
    entity_vars: list[str],
    seating: list[tuple[str, list[list[int]]]],
    blocks: dict[int, int],
) -> tuple[Skeleton, list[str]] | None:
    instance_of = {var: f"{cls}_{blocks[var]}" for var, cls in enumerate(entity_vars)}
    rel_names: list[str] = []
    relationships: dict[RelationshipInstance, None] = {}
    for rel_name, seated in seating:
        participants: list[str] = []
        for vars_in_slot in seated:
            ids = {instance_of[v] for v in vars_in_slot}
            if len(ids) != 1:
                return None
            participants.append(ids.pop())
        if len(set(participants)) != len(participants):
            return None
        rel = RelationshipInstance(rel_name, tuple(participants))
        relationships[rel] = None
        rel_names.append(rel.name)

    entities: dict[str, set[str]] = defaultdict(set)
    for var, cls in enumerate(entity_vars):
        entities[cls].add(instance_of[var])
    skeleton = Skeleton(
        entities={cls: tuple(sorted(ids)) for cls, ids in sorted(entities.items())},
        relationships=tuple(relationships),
    )
    return skeleton, rel_names


def find_intersection_witness(
    schema: Schema,
    a: RelationalPath,
    b: RelationalPath,
    bound: int = 3,
    burn: BurnScope = "history",
) -> IntersectionWitness | None:
    """Search for a skeleton where ``a`` and ``b`` reach a shared instance.

    Args:
        schema: Schema both paths traverse
        a: First path
        b: Second path (same first and last item class as ``a``)
        bound: Maximum instances per entity class
        burn: Bridge-burning scope for terminal sets

    Returns:
        Witness with the fewest instances per class found, or None
    """
    if a.base != b.base or a.terminal != b.terminal:
        return None
    if a == b:
        return None

    layout = _layout(schema, a, b)
    for k in range(1, bound + 1):
        for entity_vars, seating in _slot_assignments(schema, layout):
            by_class: dict[str, list[int]] = defaultdict(list)
            for var, cls in enumerate(entity_vars):
                by_class[cls].append(var)
            classes = sorted(by_class)
            per_class = [list(_restricted_growth(len(by_class[c]), k)) for c in classes]
            for combo in product(*per_class):
                if max((max(rg, default=0) for rg in combo), default=0) != k - 1:
                    continue
                blocks = {
                    var: rg[i]
                    for cls, rg in zip(classes, combo, strict=True)
                    for i, var in enumerate(by_class[cls])
                }
                built = _build_candidate(entity_vars, seating, blocks)
                if built is None:
                    continue
                skeleton, rel_names = built
                if validate_skeleton(schema, skeleton):
                    continue
                kind, index = layout.base
                base = (
                    f"{entity_vars[index]}_{blocks[index]}" if kind == "E" else rel_names[index]
                )
                overlap = terminal_set(skeleton, a, base, burn) & terminal_set(
                    skeleton, b, base, burn
                )
                if overlap:
                    return IntersectionWitness(skeleton, base, frozenset(overlap))
    return None


def intersectable(
    schema: Schema,
    a: RelationalVariable,
    b: RelationalVariable,
    bound: int = 3,
    burn: BurnScope = "history",
) -> bool:
    """Whether ``a`` and ``b`` can share an instance in some skeleton."""
    if not _candidate_pair(a, b, burn):
        return False
    return find_intersection_witness(schema, a.path, b.path, bound, burn) is not None


def _candidate_pair(a: RelationalVariable, b: RelationalVariable, burn: BurnScope) -> bool:
    if a == b or a.path == b.path:
        return False
    if a.perspective != b.perspective or a.terminal != b.terminal or a.attribute != b.attribute:
        return False
    if burn == "history" and (a.path.is_prefix_of(b.path) or b.path.is_prefix_of(a.path)):
        return False
    return True


def build_agg(
    model: RelationalModel,
    perspective: str,
    h: int,
    mode: AggMode = AggMode.SIGMA_AGG,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
) -> SigmaAGG:
    """Build the (σ-)AGG of ``model`` from ``perspective`` with hop threshold ``h``.

    Raises:
        CyclicModelError: If ``mode`` is ACYCLIC_AGG and the model is cyclic
        UnknownNameError: If ``perspective`` does not resolve
        PreconditionError: If ``h`` is negative
    """
    schema = model.schema
    if mode is AggMode.ACYCLIC_AGG:
        cycles = detect_model_cycles(model)
        if cycles:
            first = " ; ".join(str(dep) for dep in cycles[0])
            raise CyclicModelError(
                f"Model has {len(cycles)} dependency cycle(s), e.g. {first}; "
                "build a sigma-agg instead"
            )

    paths = enumerate_paths(schema, perspective, h)
    variables = [
        RelationalVariable(path, attr) for path in paths for attr in schema.attributes_of(path.terminal)
    ]
    nodes: set[AggNode] = {AggNode.relvar(v) for v in variables}

    rv_edges: set[tuple[AggNode, AggNode]] = set()
    for dep in model.dependencies:
        cause_path = dep.cause.path
        for p_j in paths:
            if p_j.terminal != dep.effect_class:
                continue
            effect = AggNode.relvar(RelationalVariable(p_j, dep.effect_attribute))
            for p_k in extend(schema, p_j, cause_path, h):
                cause = AggNode.relvar(RelationalVariable(p_k, dep.cause.attribute))
                rv_edges.add((cause, effect))

    witness_cache: dict[tuple[RelationalPath, RelationalPath], bool] = {}
    intersections: list[AggNode] = []
    for a, b in combinations(sorted(variables), 2):
        if not _candidate_pair(a, b, burn):
            continue
        key = (a.path, b.path)
        if key not in witness_cache:
            witness_cache[key] = (
                find_intersection_witness(schema, a.path, b.path, intersection_bound, burn)
                is not None
            )
        if witness_cache[key]:
            intersections.append(AggNode.intersection(a, b))
    nodes.update(intersections)

    incoming: dict[AggNode, set[AggNode]] = defaultdict(set)
    outgoing: dict[AggNode, set[AggNode]] = defaultdict(set)
    for u, v in rv_edges:
        outgoing[u].add(v)
        incoming[v].add(u)
    iv_edges: set[tuple[AggNode, AggNode]] = set()
    for iv in intersections:
        for variable in iv.constituents:
            node = AggNode.relvar(variable)
            iv_edges.update((u, iv) for u in incoming[node])
            iv_edges.update((iv, w) for w in outgoing[node])

    agg = SigmaAGG(
        perspective=perspective,
        hop=h,
        mode=mode,
        nodes=frozenset(nodes),
        rv_edges=frozenset(rv_edges),
        iv_edges=frozenset(iv_edges),
    )
    logger.info(
        f"Built {mode.value} for {perspective} (h={h}): {len(variables)} variables, "
        f"{len(intersections)} intersections, {len(rv_edges) + len(iv_edges)} edges"
    )
    return agg


def augment(agg: SigmaAGG, base: Iterable[RelationalVariable]) -> AugmentedSet:
    """``base`` plus every intersection node with a constituent in ``base``.

    Raises:
        UnknownNameError: If a variable is not a node of ``agg``
    """
    variables = frozenset(base)
    augmented = {agg.node_for(v) for v in variables}
    augmented.update(iv for iv in agg.intersections if set(iv.constituents) & variables)
    return AugmentedSet(variables, frozenset(augmented))


def relational_separated(
    agg: SigmaAGG,
    x: Iterable[RelationalVariable],
    y: Iterable[RelationalVariable],
    z: Iterable[RelationalVariable] = (),
    mode: SeparationMode | str = SeparationMode.SIGMA,
) -> SeparationResult:
    """Relational separation of ``x`` and ``y`` given ``z`` on ``agg``.

    Runs the separation engine on the augmented sets; conditioned nodes are
    removed from the augmented ends. If the ends still share an intersection
    node the answer is "connected" with a one-node witness.

    Raises:
        ModeMismatchError: If mode is D and ``agg`` was not built as an acyclic AGG
        PreconditionError: If x or y is empty or the sets overlap
        UnknownNameError: If a variable is not a node of ``agg``
    """
    sep_mode = SeparationMode(mode)
    xs, ys, zs = frozenset(x), frozenset(y), frozenset(z)
    if not xs or not ys:
        raise PreconditionError("Separation queries need nonempty x and y")
    if xs & ys or xs & zs or ys & zs:
        raise PreconditionError("x, y and z must be pairwise disjoint")
    if sep_mode is SeparationMode.D and agg.mode is not AggMode.ACYCLIC_AGG:
        raise ModeMismatchError(
            f"d-separation needs a graph built in {AggMode.ACYCLIC_AGG.value!r} mode, "
            f"got {agg.mode.value!r}; use mode sigma"
        )

    z_bar = augment(agg, zs).augmented
    x_bar = augment(agg, xs).augmented - z_bar
    y_bar = augment(agg, ys).augmented - z_bar

    shared = x_bar & y_bar
    if shared:
        node = min(shared)
        return SeparationResult(False, Walk((node,), ()))
    if not x_bar or not y_bar:
        return SeparationResult(True)
    return agg.engine.query(SeparationQuery(x_bar, y_bar, z_bar, sep_mode))


def agg_to_dict(agg: SigmaAGG) -> dict[str, Any]:
    """JSON-ready form with nodes and edges in canonical order."""
    return {
        "perspective": agg.perspective,
        "hop": agg.hop,
        "mode": agg.mode.value,
        "nodes": [str(n) for n in sorted(agg.nodes)],
        "rv_edges": sorted([str(u), str(v)] for u, v in agg.rv_edges),
        "iv_edges": sorted([str(u), str(v)] for u, v in agg.iv_edges),
    }


def export_agg_dot(agg: SigmaAGG) -> str:
    """Byte-stable DOT rendering; intersections appear as ``A ∩ B`` labels."""
    lines = ["digraph agg {"]
    lines.extend(f'  "{name}";' for name in sorted(str(n) for n in agg.nodes))
    lines.extend(
        f'  "{u}" -> "{v}";' for u, v in sorted((str(a), str(b)) for a, b in agg.edges)
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
