"""Brute-force walk enumeration for d- and σ-separation.

This module shares no blocking logic with ``services.separation``: it
computes ancestors, descendants and strongly connected components from
scratch and checks every enumerated walk against the blocking conditions one
node at a time.

Walks are enumerated without repeating a directed step (the same edge
traversed in the same direction). Cutting a walk between two occurrences of
one step never unblocks a node, so a connecting walk exists iff one without
repeated steps does.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import Any

import networkx as nx

from sigma_rcm.exceptions import StateLimitExceededError
from sigma_rcm.services.separation import SeparationMode, SeparationQuery, Walk


logger = logging.getLogger(__name__)


def _closure(graph: nx.DiGraph, seeds: Iterable[Any], upward: bool) -> set[Any]:
    step = graph.predecessors if upward else graph.successors
    seen = set(seeds)
    stack = list(seen)
    while stack:
        node = stack.pop()
        for nxt in step(node):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _strong_component(graph: nx.DiGraph, node: Any) -> set[Any]:
    return _closure(graph, [node], upward=True) & _closure(graph, [node], upward=False)


class _BlockingRules:
    def __init__(self, graph: nx.DiGraph, z: frozenset[Any], mode: SeparationMode) -> None:
        self.graph = graph
        self.z = z
        self.mode = mode
        self.an_z = _closure(graph, z, upward=True)
        self._sc: dict[Any, set[Any]] = {}

    def sc(self, node: Any) -> set[Any]:
        if node not in self._sc:
            self._sc[node] = _strong_component(self.graph, node)
        return self._sc[node]

    def blocks_inner(self, prev: Any, node: Any, nxt: Any, fwd_in: bool, fwd_out: bool) -> bool:
        """Whether ``node`` blocks the walk ``prev - node - nxt``.

        ``fwd_in`` is True for ``prev -> node``; ``fwd_out`` is True for
        ``node -> nxt``.
        """
        if fwd_in and not fwd_out:
            return node not in self.an_z
        if node not in self.z:
            return False
        if self.mode is SeparationMode.D:
            return True
        # σ: a walk edge pointing away from the node into another component
        if fwd_out and nxt not in self.sc(node):
            return True
        if not fwd_in and prev not in self.sc(node):
            return True
        return False


def walk_is_blocked(
    graph: nx.DiGraph,
    walk: Walk,
    z: Iterable[Any],
    mode: SeparationMode | str,
) -> bool:
    """Check one walk against the blocking conditions node by node."""
    rules = _BlockingRules(graph, frozenset(z), SeparationMode(mode))
    nodes, forward = walk.nodes, walk.forward
    for i, fwd in enumerate(forward):
        u, v = nodes[i], nodes[i + 1]
        if not (graph.has_edge(u, v) if fwd else graph.has_edge(v, u)):
            raise ValueError(f"Walk step {u} - {v} is not an edge of the graph")
    if nodes[0] in rules.z or nodes[-1] in rules.z:
        return True
    return any(
        rules.blocks_inner(nodes[i - 1], nodes[i], nodes[i + 1], forward[i - 1], forward[i])
        for i in range(1, len(nodes) - 1)
    )


def walk_enumeration_separated(
    graph: nx.DiGraph,
    query: SeparationQuery,
    state_limit: int = 1_000_000,
) -> bool:
    """True iff every walk between ``query.x`` and ``query.y`` is blocked.

    Raises:
        StateLimitExceededError: If more than ``state_limit`` walk prefixes
            are visited
    """
    rules = _BlockingRules(graph, query.z, query.mode)
    visited = 0

    def neighbours(node: Any) -> list[tuple[Any, bool]]:
        out = [(w, True) for w in sorted(graph.successors(node), key=str)]
        back = [(w, False) for w in sorted(graph.predecessors(node), key=str)]
        return out + back

    for start in sorted(query.x, key=str):
        if start in query.z:
            continue
        # (nodes, directions, used steps)
        stack: list[tuple[list[Any], list[bool], set[tuple[Any, Any, bool]]]] = [
            ([start], [], set())
        ]
        while stack:
            nodes, forward, used = stack.pop()
            visited += 1
            if visited > state_limit:
                raise StateLimitExceededError(state_limit)
            tail = nodes[-1]
            for w, fwd in neighbours(tail):
                step = (tail, w, fwd)
                if step in used:
                    continue
                if len(nodes) >= 2 and rules.blocks_inner(
                    nodes[-2], tail, w, forward[-1], fwd
                ):
                    continue
                if w in query.y:
                    logger.debug(f"Connecting walk: {Walk((*nodes, w), (*forward, fwd))}")
                    return False
                stack.append(([*nodes, w], [*forward, fwd], used | {step}))
    return True
