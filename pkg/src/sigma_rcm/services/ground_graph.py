"""Ground a relational model on a skeleton.

Every dependency ``[I_j, ..., I_k].X -> [I_j].Y`` contributes, for each
instance i_j of I_j, an edge i_k.X -> i_j.Y for every i_k in the terminal set
of the cause path from i_j. Parallel contributions collapse into one edge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import networkx as nx

from sigma_rcm.exceptions import InvalidSkeletonError, UnknownNameError
from sigma_rcm.models.relational import RelationalModel
from sigma_rcm.models.skeleton import Skeleton
from sigma_rcm.services.skeletons import BurnScope, terminal_set, validate_skeleton


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AttributeNode:
    """Attribute of one instance, printed ``Alice.Sentiment``."""

    instance: str
    attribute: str

    def __str__(self) -> str:
        return f"{self.instance}.{self.attribute}"


@dataclass(frozen=True)
class GroundGraph:
    """Directed (possibly cyclic) graph over attribute-instance nodes.

    ``self_loops`` lists nodes a dependency would have made their own
    parent; they are reported here and never added as edges.
    """

    nodes: frozenset[AttributeNode] = frozenset()
    edges: frozenset[tuple[AttributeNode, AttributeNode]] = frozenset()
    self_loops: frozenset[AttributeNode] = frozenset()

    @cached_property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.nodes))
        graph.add_edges_from(sorted(self.edges))
        return graph

    def node(self, text: str) -> AttributeNode:
        """Resolve ``instance.attribute`` text to a node of this graph."""
        instance, _, attribute = text.strip().rpartition(".")
        candidate = AttributeNode(instance, attribute)
        if candidate not in self.nodes:
            raise UnknownNameError(f"Ground graph has no node '{text}'")
        return candidate


def ground(
    model: RelationalModel,
    skeleton: Skeleton,
    validate: bool = True,
    burn: BurnScope = "history",
) -> GroundGraph:
    """Build the ground graph of ``model`` on ``skeleton``.

    Args:
        model: Relational model
        skeleton: Skeleton of ``model.schema``
        validate: Check the skeleton first (disable only for skeletons that
            were produced by ``enumerate_skeletons``)
        burn: Bridge-burning scope for terminal sets

    Raises:
        InvalidSkeletonError: If the skeleton violates the schema
    """
    schema = model.schema
    if validate:
        issues = validate_skeleton(schema, skeleton)
        if issues:
            raise InvalidSkeletonError(
                f"Skeleton violates the schema: {issues[0].message}", issues
            )

    nodes: set[AttributeNode] = set()
    for item in (*schema.entities, *schema.relationships):
        for instance in skeleton.instances_of(item.name):
            nodes.update(AttributeNode(instance, attr) for attr in item.attributes)

    edges: set[tuple[AttributeNode, AttributeNode]] = set()
    self_loops: set[AttributeNode] = set()
    for dep in model.dependencies:
        path = dep.cause.path
        for effect_instance in skeleton.instances_of(dep.effect_class):
            effect = AttributeNode(effect_instance, dep.effect_attribute)
            for cause_instance in terminal_set(skeleton, path, effect_instance, burn):
                cause = AttributeNode(cause_instance, dep.cause.attribute)
                if cause == effect:
                    self_loops.add(effect)
                else:
                    edges.add((cause, effect))

    if self_loops:
        logger.warning(
            f"Dropped {len(self_loops)} self-loop(s) while grounding, e.g. {min(self_loops)}"
        )
    logger.debug(f"Ground graph: {len(nodes)} nodes, {len(edges)} edges")
    return GroundGraph(frozenset(nodes), frozenset(edges), frozenset(self_loops))


def is_cyclic(gg: GroundGraph) -> bool:
    """True iff the ground graph has a directed cycle."""
    return not nx.is_directed_acyclic_graph(gg.digraph)


def export_dot(gg: GroundGraph) -> str:
    """Byte-stable DOT rendering with sorted node and edge lines."""
    lines = ["digraph gg {"]
    lines.extend(f'  "{node}";' for node in sorted(str(n) for n in gg.nodes))
    lines.extend(
        f'  "{u}" -> "{v}";' for u, v in sorted((str(a), str(b)) for a, b in gg.edges)
    )
    lines.append("}")
    return "\n".join(lines) + "\n"


def ground_to_dict(gg: GroundGraph) -> dict[str, Any]:
    """JSON-ready form: sorted node names and ``[cause, effect]`` pairs.

    Dropped self-loops appear under ``self_loops`` only when there are any.
    """
    data: dict[str, Any] = {
        "nodes": sorted(str(n) for n in gg.nodes),
        "edges": sorted([str(u), str(v)] for u, v in gg.edges),
    }
    if gg.self_loops:
        data["self_loops"] = sorted(str(n) for n in gg.self_loops)
    return data
