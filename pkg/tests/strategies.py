"""Hypothesis strategies for graphs, separation queries and relational models."""

from __future__ import annotations

from collections.abc import Hashable, Sequence
from itertools import permutations

import networkx as nx
from hypothesis import strategies as st

from sigma_rcm.models.relational import RelationalDependency, RelationalModel
from sigma_rcm.services.catalog import builtin_model
from sigma_rcm.services.paths import enumerate_paths
from sigma_rcm.services.separation import SeparationMode, SeparationQuery


@st.composite
def digraphs(
    draw: st.DrawFn, max_nodes: int = 6, max_edges: int = 8, acyclic: bool = False
) -> nx.DiGraph:
    """Directed graphs on nodes ``0..n-1`` without self-loops.

    With ``acyclic`` only edges ``i -> j`` for ``i < j`` are drawn. Edges are
    capped so the walk-enumeration oracle stays fast.
    """
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    pairs = [(u, v) for u, v in permutations(range(n), 2) if not acyclic or u < v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), max_edges)))
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(chosen)
    return graph


QUERY_LABELS: tuple[str, ...] = ("x", "y", "z", "-")


def query_from_labels(
    nodes: Sequence[Hashable], labels: Sequence[str], mode: SeparationMode
) -> SeparationQuery:
    """Turn one label per node into a valid query.

    Y is the ``y``-labelled nodes (else the last node), X the ``x``-labelled
    nodes outside Y (else the first node outside Y) and Z the ``z``-labelled
    nodes outside both. Needs at least two nodes.
    """
    labelled = dict(zip(nodes, labels, strict=True))
    y = [n for n in nodes if labelled[n] == "y"] or [nodes[-1]]
    if len(y) == len(nodes):
        y = y[1:]
    x = [n for n in nodes if labelled[n] == "x" and n not in y] or [
        n for n in nodes if n not in y
    ][:1]
    z = [n for n in nodes if labelled[n] == "z" and n not in x and n not in y]
    return SeparationQuery.of(x, y, z, mode)


@st.composite
def queries(draw: st.DrawFn, graph: nx.DiGraph, mode: SeparationMode) -> SeparationQuery:
    """Disjoint nonempty X and Y, possibly empty Z, over the nodes of ``graph``."""
    nodes = sorted(graph.nodes)
    labels = draw(st.lists(st.sampled_from(QUERY_LABELS), min_size=len(nodes), max_size=len(nodes)))
    return query_from_labels(nodes, labels, mode)


@st.composite
def graphs_with_queries(
    draw: st.DrawFn, max_nodes: int = 6, mode: SeparationMode = SeparationMode.SIGMA, acyclic: bool = False
) -> tuple[nx.DiGraph, SeparationQuery]:
    graph = draw(digraphs(max_nodes=max_nodes, acyclic=acyclic))
    return graph, draw(queries(graph, mode))


def _social_dependency_pool() -> list[RelationalDependency]:
    """Every dependency of the social schema with a cause path of up to 4 hops."""
    base = builtin_model("social-acyclic")
    schema = base.schema
    pool: list[RelationalDependency] = []
    for entity in schema.entity_names:
        effect_attribute = schema.attributes_of(entity)[0]
        for path in enumerate_paths(schema, entity, 4, attributed_only=True):
            cause_attribute = schema.attributes_of(path.terminal)[0]
            if len(path) == 1 and cause_attribute == effect_attribute:
                continue
            pool.append(RelationalDependency.build(path.items, cause_attribute, effect_attribute))
    return sorted(pool)


SOCIAL_POOL = _social_dependency_pool()


@st.composite
def social_models(draw: st.DrawFn, max_dependencies: int = 4) -> RelationalModel:
    """Random dependency subsets over the social schema (cyclic or not)."""
    deps = draw(
        st.lists(st.sampled_from(SOCIAL_POOL), min_size=1, max_size=max_dependencies, unique=True)
    )
    return builtin_model("social-acyclic").with_dependencies(deps)
