"""d-separation and σ-separation on arbitrary directed graphs.

Design Decision: Reachability over walk states

Rationale: Both criteria quantify over walks, and whether a walk is blocked
at an inner node depends only on the two walk edges meeting there. A search
over states ``(node, arrived_on_head, crossed_scc)`` therefore decides
separation exactly, in time linear in the state count:

- ``arrived_on_head``: the walk edge into the node points at it
- ``crossed_scc``: the walk edge into the node was traversed against its
  direction and leaves the node's strongly connected component

Blocking rules at an inner node v with mode-specific non-collider handling:

- collider (both walk edges point at v): blocks iff v is not in AN(Z)
- non-collider in Z, mode D: always blocks
- non-collider in Z, mode SIGMA: blocks iff one of its walk edges points
  away from v into another strongly connected component

Trade-offs:
- Nodes are any hashable, str-sortable ids so the same engine serves ground
  graphs and abstract ground graphs
- Witnesses are the first connecting walk in BFS order (deterministic)
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import networkx as nx

from sigma_rcm.exceptions import PreconditionError, UnknownNameError


logger = logging.getLogger(__name__)


class SeparationMode(str, Enum):
    """Blocking criterion."""

    D = "d"
    SIGMA = "sigma"


@dataclass(frozen=True)
class SeparationQuery:
    """``x`` vs ``y`` given ``z`` under ``mode``.

    Raises:
        PreconditionError: If x or y is empty or the three sets overlap
    """

    x: frozenset[Any]
    y: frozenset[Any]
    z: frozenset[Any] = frozenset()
    mode: SeparationMode = SeparationMode.D

    def __post_init__(self) -> None:
        if not self.x or not self.y:
            raise PreconditionError("Separation queries need nonempty x and y")
        if self.x & self.y or self.x & self.z or self.y & self.z:
            raise PreconditionError("x, y and z must be pairwise disjoint")

    @classmethod
    def of(
        cls,
        x: Iterable[Any],
        y: Iterable[Any],
        z: Iterable[Any] = (),
        mode: SeparationMode | str = SeparationMode.D,
    ) -> SeparationQuery:
        return cls(frozenset(x), frozenset(y), frozenset(z), SeparationMode(mode))


@dataclass(frozen=True)
class Walk:
    """Walk as nodes plus, per step, whether the edge points forward."""

    nodes: tuple[Any, ...]
    forward: tuple[bool, ...]

    def __str__(self) -> str:
        return " ".join(self.to_list())

    def to_list(self) -> list[str]:
        """JSON form: node ids interleaved with ``->``/``<-`` markers."""
        parts = [str(self.nodes[0])]
        for node, fwd in zip(self.nodes[1:], self.forward, strict=True):
            parts.extend(("->" if fwd else "<-", str(node)))
        return parts


@dataclass(frozen=True)
class SeparationResult:
    """Verdict plus a connecting walk when not separated."""

    separated: bool
    witness: Walk | None = None

    def __bool__(self) -> bool:
        return self.separated

    def to_dict(self) -> dict[str, Any]:
        return {
            "separated": self.separated,
            "witness": self.witness.to_list() if self.witness else None,
        }


@dataclass
class SccIndex:
    """Strongly connected components with deterministic ids.

    Component ids are assigned in order of each component's smallest node
    (by string form).
    """

    component_of: dict[Any, int] = field(default_factory=dict)

    def same(self, u: Any, v: Any) -> bool:
        return self.component_of[u] == self.component_of[v]

    def components(self) -> list[set[Any]]:
        grouped: dict[int, set[Any]] = {}
        for node, cid in self.component_of.items():
            grouped.setdefault(cid, set()).add(node)
        return [grouped[cid] for cid in sorted(grouped)]


def scc(graph: nx.DiGraph) -> SccIndex:
    """Partition ``graph`` into strongly connected components."""
    components = sorted(
        nx.strongly_connected_components(graph), key=lambda c: min(str(n) for n in c)
    )
    return SccIndex({node: cid for cid, comp in enumerate(components) for node in comp})


def ancestors(graph: nx.DiGraph, targets: Iterable[Hashable]) -> set[Any]:
    """Reflexive ancestors of ``targets``."""
    result: set[Any] = set()
    for target in targets:
        if target in result:
            continue
        result.add(target)
        result |= nx.ancestors(graph, target)
    return result


class SeparationEngine:
    """Answers many separation queries against one graph.

    The SCC index is computed once; ancestor closures are cached per
    conditioning set.
    """

    def __init__(self, graph: nx.DiGraph) -> None:
        self.graph = graph
        self._scc: SccIndex | None = None
        self._ancestors: dict[frozenset[Any], set[Any]] = {}
        self._succ = {n: sorted(graph.successors(n), key=str) for n in graph.nodes}
        self._pred = {n: sorted(graph.predecessors(n), key=str) for n in graph.nodes}

    @property
    def scc_index(self) -> SccIndex:
        if self._scc is None:
            self._scc = scc(self.graph)
        return self._scc

    def ancestors_of(self, z: frozenset[Any]) -> set[Any]:
        if z not in self._ancestors:
            self._ancestors[z] = ancestors(self.graph, z)
        return self._ancestors[z]

    def query(self, query: SeparationQuery) -> SeparationResult:
        """Decide ``query``; the witness is the first connecting walk found.

        Raises:
            UnknownNameError: If a queried node is not in the graph
        """
        for node in (*query.x, *query.y, *query.z):
            if node not in self.graph:
                raise UnknownNameError(f"Node '{node}' is not in the graph")

        sigma = query.mode is SeparationMode.SIGMA
        scc_index = self.scc_index if sigma else None
        an_z = self.ancestors_of(query.z)

        State = tuple[Any, bool, bool]
        parent: dict[State, tuple[State, bool] | None] = {}
        queue: deque[State] = deque()
        for start in sorted(query.x, key=str):
            state = (start, False, False)
            if state not in parent:
                parent[state] = None
                queue.append(state)

        starts = query.x
        while queue:
            state = queue.popleft()
            v, arrived_head, crossed = state
            is_start = parent[state] is None and v in starts
            for fwd, neighbors in ((True, self._succ[v]), (False, self._pred[v])):
                for w in neighbors:
                    if not is_start and not self._passes(
                        v, w, fwd, arrived_head, crossed, query.z, an_z, scc_index
                    ):
                        continue
                    next_crossed = (
                        sigma and not fwd and scc_index is not None and not scc_index.same(v, w)
                    )
                    nxt = (w, fwd, next_crossed)
                    if nxt in parent:
                        continue
                    parent[nxt] = (state, fwd)
                    if w in query.y:
                        return SeparationResult(False, self._walk(parent, nxt))
                    queue.append(nxt)
        return SeparationResult(True)

    @staticmethod
    def _passes(
        v: Any,
        w: Any,
        fwd: bool,
        arrived_head: bool,
        crossed: bool,
        z: frozenset[Any],
        an_z: set[Any],
        scc_index: SccIndex | None,
    ) -> bool:
        collider = arrived_head and not fwd
        if collider:
            return v in an_z
        if v not in z:
            return True
        if scc_index is None:
            return False
        leaves_scc = fwd and not scc_index.same(v, w)
        return not (crossed or leaves_scc)

    @staticmethod
    def _walk(parent: dict[Any, Any], end: tuple[Any, bool, bool]) -> Walk:
        nodes = [end[0]]
        forward: list[bool] = []
        state = end
        while parent[state] is not None:
            prev, fwd = parent[state]
            forward.append(fwd)
            nodes.append(prev[0])
            state = prev
        return Walk(tuple(reversed(nodes)), tuple(reversed(forward)))


def blocked_status_search(graph: nx.DiGraph, query: SeparationQuery) -> bool:
    """True iff every walk between ``query.x`` and ``query.y`` is blocked."""
    return SeparationEngine(graph).query(query).separated


def d_separated(graph: nx.DiGraph, query: SeparationQuery) -> SeparationResult:
    """d-separation verdict (the query's mode is taken as D)."""
    q = SeparationQuery(query.x, query.y, query.z, SeparationMode.D)
    return SeparationEngine(graph).query(q)


def sigma_separated(graph: nx.DiGraph, query: SeparationQuery) -> SeparationResult:
    """σ-separation verdict (the query's mode is taken as SIGMA)."""
    q = SeparationQuery(query.x, query.y, query.z, SeparationMode.SIGMA)
    return SeparationEngine(graph).query(q)
