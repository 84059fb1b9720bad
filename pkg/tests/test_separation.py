"""Tests for d- and σ-separation on directed graphs."""

from collections import defaultdict
from collections.abc import Hashable, Iterable, Sequence
from functools import cache
from itertools import chain, combinations, permutations, product

import networkx as nx
import pytest
from hypothesis import assume, example, given, settings
from hypothesis import strategies as st

from sigma_rcm.exceptions import PreconditionError, UnknownNameError
from sigma_rcm.services.oracle.walks import walk_enumeration_separated, walk_is_blocked
from sigma_rcm.services.separation import (
    SeparationEngine,
    SeparationMode,
    SeparationQuery,
    ancestors,
    blocked_status_search,
    d_separated,
    scc,
    sigma_separated,
)
from tests.strategies import (
    QUERY_LABELS,
    digraphs,
    graphs_with_queries,
    queries,
    query_from_labels,
)


def _graph(*edges: tuple[Hashable, Hashable], nodes: Iterable[Hashable] = ()) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges)
    return graph


@cache
def _digraph_classes(n: int) -> tuple[nx.DiGraph, ...]:
    """Every loop-free digraph on nodes ``0..n-1`` up to isomorphism.

    Grown one edge at a time; isomorphs are dropped by WL hash bucket plus an
    exact check.
    """
    pairs = list(permutations(range(n), 2))
    level = [_graph(nodes=range(n))]
    classes = list(level)
    while level:
        buckets: dict[str, list[nx.DiGraph]] = defaultdict(list)
        next_level: list[nx.DiGraph] = []
        for graph in level:
            for u, v in pairs:
                if graph.has_edge(u, v):
                    continue
                candidate = graph.copy()
                candidate.add_edge(u, v)
                bucket = buckets[nx.weisfeiler_lehman_graph_hash(candidate)]
                if any(nx.is_isomorphic(candidate, other) for other in bucket):
                    continue
                bucket.append(candidate)
                next_level.append(candidate)
        classes.extend(next_level)
        level = next_level
    return tuple(classes)


def _labelled_query(labels: Sequence[str], mode: SeparationMode) -> SeparationQuery | None:
    """Query with node ``i`` in the set its label names; None without X or Y."""
    x = [v for v, label in enumerate(labels) if label == "x"]
    y = [v for v, label in enumerate(labels) if label == "y"]
    if not x or not y:
        return None
    z = [v for v, label in enumerate(labels) if label == "z"]
    return SeparationQuery.of(x, y, z, mode)


def _conditioning_sets(rest: list[int], exhaustive: bool) -> Iterable[tuple[int, ...]]:
    if not exhaustive:
        return [(), tuple(rest)]
    return chain.from_iterable(combinations(rest, k) for k in range(len(rest) + 1))


def _first_node_in_y(mode: SeparationMode) -> tuple[nx.DiGraph, SeparationQuery]:
    """Two nodes, the first labelled ``y``: X falls back to the second."""
    return _graph((0, 1)), query_from_labels([0, 1], ["y", "-"], mode)

# d-separated, σ-connected: 1 -> 2 <-> 3 <- 4 given {2, 3}
FEEDBACK = _graph((1, 2), (2, 3), (3, 2), (4, 3))


class TestSeparationQuery:
    """Test query preconditions."""

    def test_empty_sides(self) -> None:
        """Test X and Y must be nonempty."""
        with pytest.raises(PreconditionError):
            SeparationQuery.of([], ["b"])
        with pytest.raises(PreconditionError):
            SeparationQuery.of(["a"], [])

    def test_overlap(self) -> None:
        """Test X, Y and Z must be pairwise disjoint."""
        with pytest.raises(PreconditionError):
            SeparationQuery.of(["a"], ["a"])
        with pytest.raises(PreconditionError):
            SeparationQuery.of(["a"], ["b"], ["a"])

    def test_mode_from_string(self) -> None:
        """Test modes parse from their CLI spelling."""
        assert SeparationQuery.of(["a"], ["b"], mode="sigma").mode is SeparationMode.SIGMA


class TestDSeparation:
    """Test d-separation on small DAGs."""

    def test_chain(self) -> None:
        """Test a chain is blocked by its middle node."""
        graph = _graph(("a", "b"), ("b", "c"))

        assert not d_separated(graph, SeparationQuery.of(["a"], ["c"])).separated
        assert d_separated(graph, SeparationQuery.of(["a"], ["c"], ["b"])).separated

    def test_fork(self) -> None:
        """Test a common cause is blocked when conditioned on."""
        graph = _graph(("b", "a"), ("b", "c"))

        assert not d_separated(graph, SeparationQuery.of(["a"], ["c"])).separated
        assert d_separated(graph, SeparationQuery.of(["a"], ["c"], ["b"])).separated

    def test_collider(self) -> None:
        """Test a collider opens when it or a descendant is conditioned on."""
        graph = _graph(("a", "b"), ("c", "b"), ("b", "d"))

        assert d_separated(graph, SeparationQuery.of(["a"], ["c"])).separated
        assert not d_separated(graph, SeparationQuery.of(["a"], ["c"], ["b"])).separated
        assert not d_separated(graph, SeparationQuery.of(["a"], ["c"], ["d"])).separated

    def test_isolated_nodes(self) -> None:
        """Test nodes with no edges are separated."""
        graph = _graph(nodes="ab")

        assert d_separated(graph, SeparationQuery.of(["a"], ["b"])).separated

    def test_adjacent_nodes_never_separated(self) -> None:
        """Test an edge between X and Y connects them whatever Z is."""
        graph = _graph(("a", "b"), ("c", "a"), ("c", "b"))

        assert not d_separated(graph, SeparationQuery.of(["a"], ["b"], ["c"])).separated

    def test_witness(self) -> None:
        """Test the witness walk of a connected query."""
        graph = _graph(("a", "b"), ("c", "b"))

        result = d_separated(graph, SeparationQuery.of(["a"], ["c"], ["b"]))

        assert result.witness is not None
        assert result.witness.to_list() == ["a", "->", "b", "<-", "c"]
        assert str(result.witness) == "a -> b <- c"
        assert result.to_dict() == {"separated": False, "witness": ["a", "->", "b", "<-", "c"]}

    def test_unknown_node(self) -> None:
        """Test querying a node outside the graph raises."""
        with pytest.raises(UnknownNameError):
            d_separated(_graph(("a", "b")), SeparationQuery.of(["a"], ["z"]))


class TestSigmaSeparation:
    """Test σ-separation on cyclic graphs."""

    def test_feedback_differs_from_d(self) -> None:
        """Test a conditioned non-collider inside its SCC does not block."""
        query = SeparationQuery.of([1], [4], [2, 3])

        assert d_separated(FEEDBACK, query).separated
        result = sigma_separated(FEEDBACK, query)
        assert not result.separated
        assert str(result.witness) == "1 -> 2 -> 3 <- 4"

    def test_edge_leaving_scc_blocks(self) -> None:
        """Test a conditioned node blocks when the walk leaves its SCC forward."""
        graph = _graph(("a", "b"), ("b", "a"), ("b", "c"))

        assert sigma_separated(graph, SeparationQuery.of(["a"], ["c"], ["b"])).separated

    def test_social_ground_graph(self) -> None:
        """Test the cyclic social ground graph queries."""
        graph = _graph(
            ("Alice.S", "P1.E"),
            ("Bob.S", "P1.E"),
            ("Alice.S", "P2.E"),
            ("P1.E", "M1.Pref"),
            ("P2.E", "M1.Pref"),
            ("P1.E", "Alice.S"),
            ("P2.E", "Alice.S"),
            ("P1.E", "Bob.S"),
        )

        assert not sigma_separated(graph, SeparationQuery.of(["Bob.S"], ["Alice.S"], ["P1.E"])).separated
        assert sigma_separated(
            graph, SeparationQuery.of(["Bob.S"], ["M1.Pref"], ["P1.E", "P2.E"])
        ).separated

    def test_blocked_status_search_honours_mode(self) -> None:
        """Test the boolean entry point follows the query's mode."""
        assert blocked_status_search(FEEDBACK, SeparationQuery.of([1], [4], [2, 3], "d"))
        assert not blocked_status_search(FEEDBACK, SeparationQuery.of([1], [4], [2, 3], "sigma"))


class TestGraphHelpers:
    """Test SCC index and ancestor closure."""

    def test_scc_index(self) -> None:
        """Test components and same-component checks."""
        index = scc(FEEDBACK)

        assert index.same(2, 3)
        assert not index.same(1, 2)
        assert sorted(sorted(c) for c in index.components()) == [[1], [2, 3], [4]]

    def test_ancestors_reflexive(self) -> None:
        """Test ancestors include the targets themselves."""
        assert ancestors(FEEDBACK, [2]) == {1, 2, 3, 4}
        assert ancestors(FEEDBACK, [1]) == {1}

    def test_engine_caches_per_conditioning_set(self) -> None:
        """Test repeated queries reuse one ancestor closure."""
        engine = SeparationEngine(FEEDBACK)
        z = frozenset({2})

        assert engine.ancestors_of(z) is engine.ancestors_of(z)


class TestWalkBlocking:
    """Test the single-walk blocking check of the oracle."""

    def test_walk_is_blocked(self) -> None:
        """Test per-node rules on the feedback graph."""
        result = sigma_separated(FEEDBACK, SeparationQuery.of([1], [4], [2, 3]))
        assert result.witness is not None

        assert not walk_is_blocked(FEEDBACK, result.witness, {2, 3}, "sigma")
        assert walk_is_blocked(FEEDBACK, result.witness, {2, 3}, "d")

    def test_endpoint_in_z_blocks(self) -> None:
        """Test a walk ending in Z is blocked."""
        graph = _graph(("a", "b"))
        witness = d_separated(graph, SeparationQuery.of(["a"], ["b"])).witness
        assert witness is not None

        assert walk_is_blocked(graph, witness, {"b"}, "d")


class TestAgainstWalkOracle:
    """Differential tests: state search vs brute-force walk enumeration."""

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    @example(_first_node_in_y(SeparationMode.SIGMA))
    def test_sigma_matches_oracle(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test σ verdicts agree with walk enumeration on random DCGs."""
        graph, query = case

        assert blocked_status_search(graph, query) == walk_enumeration_separated(graph, query)

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.D))
    @example(_first_node_in_y(SeparationMode.D))
    def test_d_matches_oracle(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test d verdicts agree with walk enumeration on random DCGs."""
        graph, query = case

        assert blocked_status_search(graph, query) == walk_enumeration_separated(graph, query)

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA, acyclic=True))
    def test_sigma_equals_d_on_dags(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test both criteria coincide on acyclic graphs."""
        graph, query = case

        assert sigma_separated(graph, query).separated == d_separated(graph, query).separated

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    def test_sigma_separation_implies_d(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test σ-separation is the stronger statement."""
        graph, query = case

        if sigma_separated(graph, query).separated:
            assert d_separated(graph, query).separated

    @settings(max_examples=200, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    def test_witness_is_open(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test connecting witnesses pass the oracle's per-walk check."""
        graph, query = case

        result = SeparationEngine(graph).query(query)

        if not result.separated:
            assert result.witness is not None
            assert result.witness.nodes[0] in query.x
            assert result.witness.nodes[-1] in query.y
            assert not walk_is_blocked(graph, result.witness, query.z, query.mode)

    @pytest.mark.parametrize(("n", "count"), [(2, 3), (3, 16), (4, 218)])
    def test_digraph_classes_are_complete(self, n: int, count: int) -> None:
        """Test the exhaustive sweeps see every isomorphism class once."""
        assert len(_digraph_classes(n)) == count

    @pytest.mark.slow
    @settings(max_examples=1000, deadline=None, derandomize=True)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    def test_thousand_seeded_graphs(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test both criteria against walk enumeration on 1000 seeded DCGs."""
        graph, query = case
        engine = SeparationEngine(graph)

        for mode in SeparationMode:
            moded = SeparationQuery.of(query.x, query.y, query.z, mode)
            assert engine.query(moded).separated == walk_enumeration_separated(graph, moded)

    @pytest.mark.slow
    @pytest.mark.parametrize("mode", [SeparationMode.D, SeparationMode.SIGMA])
    def test_exhaustive_up_to_four_nodes(self, mode: SeparationMode) -> None:
        """Test every digraph on 2-4 nodes with every query."""
        for n in (2, 3, 4):
            for graph in _digraph_classes(n):
                engine = SeparationEngine(graph)
                for labels in product("xyz-", repeat=n):
                    query = _labelled_query(labels, mode)
                    if query is None:
                        continue
                    assert engine.query(query).separated == walk_enumeration_separated(
                        graph, query
                    ), (sorted(graph.edges), labels)

    @pytest.mark.slow
    @pytest.mark.parametrize("mode", [SeparationMode.D, SeparationMode.SIGMA])
    def test_exhaustive_five_nodes(self, mode: SeparationMode) -> None:
        """Test every digraph on 5 nodes with single-node X and Y.

        Z is empty, one other node, or all three other nodes.
        """
        classes = _digraph_classes(5)
        assert len(classes) == 9608

        for graph in classes:
            engine = SeparationEngine(graph)
            for u, v in combinations(range(5), 2):
                rest = [w for w in range(5) if w not in (u, v)]
                for z in [[], *([w] for w in rest), rest]:
                    query = SeparationQuery.of([u], [v], z, mode)
                    assert engine.query(query).separated == walk_enumeration_separated(
                        graph, query
                    ), (sorted(graph.edges), u, v, z)


class TestSeparationProperties:
    """Symmetry, decomposition and relabelling invariance of both criteria."""

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    def test_symmetry(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test X vs Y and Y vs X get the same verdict."""
        graph, query = case
        engine = SeparationEngine(graph)

        for mode in SeparationMode:
            forward = engine.query(SeparationQuery.of(query.x, query.y, query.z, mode))
            backward = engine.query(SeparationQuery.of(query.y, query.x, query.z, mode))
            assert forward.separated == backward.separated

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA))
    def test_decomposition(self, case: tuple[nx.DiGraph, SeparationQuery]) -> None:
        """Test separation from Y ∪ W implies separation from Y and from W."""
        graph, query = case
        assume(len(query.y) >= 2)
        engine = SeparationEngine(graph)
        first, *rest = sorted(query.y)

        for mode in SeparationMode:
            if engine.query(SeparationQuery.of(query.x, query.y, query.z, mode)).separated:
                assert engine.query(SeparationQuery.of(query.x, [first], query.z, mode)).separated
                assert engine.query(SeparationQuery.of(query.x, rest, query.z, mode)).separated

    @settings(max_examples=300, deadline=None)
    @given(graphs_with_queries(max_nodes=6, mode=SeparationMode.SIGMA), st.data())
    def test_relabelling_invariance(
        self, case: tuple[nx.DiGraph, SeparationQuery], data: st.DataObject
    ) -> None:
        """Test renaming nodes through a random permutation keeps every verdict."""
        graph, query = case
        nodes = sorted(graph.nodes)
        order = data.draw(st.permutations(nodes))
        mapping = {node: f"v{target}" for node, target in zip(nodes, order, strict=True)}
        renamed = nx.relabel_nodes(graph, mapping)

        for mode in SeparationMode:
            original = SeparationQuery.of(query.x, query.y, query.z, mode)
            moved = SeparationQuery.of(
                (mapping[n] for n in query.x),
                (mapping[n] for n in query.y),
                (mapping[n] for n in query.z),
                mode,
            )
            assert (
                SeparationEngine(graph).query(original).separated
                == SeparationEngine(renamed).query(moved).separated
            )

    @pytest.mark.slow
    def test_exhaustive_symmetry_and_decomposition(self) -> None:
        """Test symmetry and decomposition on every digraph with up to 5 nodes.

        X is a single node and Y a pair. Z is every subset of the remaining
        nodes up to 4 nodes; on 5 nodes it is empty or all of them.
        """
        for n in (3, 4, 5):
            for graph in _digraph_classes(n):
                engine = SeparationEngine(graph)
                for x in range(n):
                    others = [w for w in range(n) if w != x]
                    for y in combinations(others, 2):
                        rest = [w for w in others if w not in y]
                        for z in _conditioning_sets(rest, exhaustive=n < 5):
                            for mode in SeparationMode:
                                whole = engine.query(SeparationQuery.of([x], y, z, mode))
                                flipped = engine.query(SeparationQuery.of(y, [x], z, mode))
                                assert whole.separated == flipped.separated
                                if whole.separated:
                                    for part in y:
                                        assert engine.query(
                                            SeparationQuery.of([x], [part], z, mode)
                                        ).separated


class TestDagReduction:
    """σ- and d-separation coincide on acyclic graphs."""

    @pytest.mark.slow
    @settings(max_examples=500, deadline=None, derandomize=True)
    @given(digraphs(max_nodes=8, max_edges=14, acyclic=True), st.data())
    def test_five_hundred_dags(self, graph: nx.DiGraph, data: st.DataObject) -> None:
        """Test four random queries on each of 500 random DAGs."""
        engine = SeparationEngine(graph)

        for _ in range(4):
            query = data.draw(queries(graph, SeparationMode.SIGMA))
            d_query = SeparationQuery.of(query.x, query.y, query.z, SeparationMode.D)
            assert engine.query(query).separated == engine.query(d_query).separated


class TestQueryStrategy:
    """Every node labelling becomes a valid query."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_every_labelling_is_valid(self, n: int) -> None:
        """Test X and Y are nonempty and disjoint for all labellings, including all-``y``."""
        nodes = list(range(n))
        for labels in product(QUERY_LABELS, repeat=n):
            query = query_from_labels(nodes, labels, SeparationMode.SIGMA)

            assert query.x and query.y
            assert not query.x & query.y
            assert not query.z & (query.x | query.y)

    def test_first_node_labelled_y(self) -> None:
        """Test X falls back to a node outside Y."""
        query = query_from_labels([0, 1], ["y", "-"], SeparationMode.D)

        assert query.y == {0}
        assert query.x == {1}

    def test_only_x_labels(self) -> None:
        """Test Y falls back to the last node when every node is labelled ``x``."""
        query = query_from_labels([0, 1, 2], ["x", "x", "x"], SeparationMode.D)

        assert query.y == {2}
        assert query.x == {0, 1}

