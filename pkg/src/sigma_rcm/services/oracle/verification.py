"""Bounded verification of the abstraction against enumerated ground graphs.

Design Decision: Compare against every enumerated skeleton and base

Rationale: Relational separation on an abstract ground graph claims a
verdict for all skeletons and all base instances. At desk scale the claim is
checked over ``enumerate_skeletons`` (or an explicit collection):

- soundness: the AGG says separated, yet some instantiation is connected
  (recorded per instance, keeping the smallest skeleton)
- completeness: the AGG says connected, yet no enumerated instantiation is
  (recorded once per query after the sweep)

Both sides treat conditioning the same way: conditioned nodes are removed
from the two ends; ends that still share a node are connected; an empty end
is separated.

Trade-offs:
- Reports are labelled "bounded evidence": nothing beyond the bound is checked
- Sweeps are split across processes by skeleton with a deterministic merge
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice

from sigma_rcm.exceptions import InvalidSkeletonError, ModeMismatchError
from sigma_rcm.models.relational import RelationalDependency, RelationalModel, RelationalVariable
from sigma_rcm.models.skeleton import Skeleton
from sigma_rcm.services.agg import AggMode, AggNode, SigmaAGG, build_agg, relational_separated
from sigma_rcm.services.ground_graph import AttributeNode, GroundGraph, ground, is_cyclic
from sigma_rcm.services.oracle.report import Disagreement, VerificationReport
from sigma_rcm.services.paths import detect_model_cycles
from sigma_rcm.services.separation import (
    SeparationEngine,
    SeparationMode,
    SeparationQuery,
    SeparationResult,
    Walk,
)
from sigma_rcm.services.skeletons import (
    BurnScope,
    enumerate_skeletons,
    terminal_set,
    validate_skeleton,
)
from sigma_rcm.utils.logger import PACKAGE_LOGGER, configure_worker


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationalQuery:
    """``x`` vs ``y`` given ``z`` over relational variables."""

    x: tuple[RelationalVariable, ...]
    y: tuple[RelationalVariable, ...]
    z: tuple[RelationalVariable, ...] = ()

    def __str__(self) -> str:
        given = ", ".join(str(v) for v in self.z)
        return f"{_side(self.x)} vs {_side(self.y)} given {{{given}}}"


def _side(variables: tuple[RelationalVariable, ...]) -> str:
    if len(variables) == 1:
        return str(variables[0])
    return "{" + ", ".join(str(v) for v in variables) + "}"


def _subsets(
    items: list[RelationalVariable], max_size: int
) -> Iterator[tuple[RelationalVariable, ...]]:
    for k in range(1, max_size + 1):
        yield from combinations(items, k)


def enumerate_queries(
    variables: list[RelationalVariable], max_conditioning: int, max_set: int = 1
) -> list[RelationalQuery]:
    """Unordered X/Y pairs of up to ``max_set`` variables each, with every
    conditioning set up to ``max_conditioning``."""
    ordered = sorted(variables)
    queries: list[RelationalQuery] = []
    for x in _subsets(ordered, max_set):
        for y in _subsets([v for v in ordered if v not in x], max_set):
            if y < x:
                continue
            rest = [v for v in ordered if v not in x and v not in y]
            for k in range(max_conditioning + 1):
                queries.extend(RelationalQuery(x, y, z) for z in combinations(rest, k))
    return queries


def _bound_label(max_per_entity: int | None, require_min_degree_2: bool, explicit: int | None) -> str:
    if explicit is not None:
        return f"{explicit} explicit skeleton(s)"
    label = f"connected skeletons with <= {max_per_entity} instances per entity class"
    if require_min_degree_2:
        label += ", entity degree > 1"
    return label


def _skeleton_batch(
    model: RelationalModel,
    max_per_entity: int,
    require_min_degree_2: bool,
    skeletons: Iterable[Skeleton] | None,
    state_limit: int,
) -> tuple[list[Skeleton], bool]:
    source: Iterator[Skeleton] = iter(
        skeletons
        if skeletons is not None
        else enumerate_skeletons(
            model.schema, max_per_entity, require_min_degree_2, connected_only=True
        )
    )
    batch = list(islice(source, state_limit + 1))
    if skeletons is not None:
        for skeleton in batch:
            issues = validate_skeleton(model.schema, skeleton)
            if issues:
                raise InvalidSkeletonError(
                    f"Skeleton violates the schema: {issues[0].message}", issues
                )
    if len(batch) > state_limit:
        logger.warning(f"Skeleton sweep stopped at the state limit of {state_limit}")
        return batch[:state_limit], True
    return batch, False


def ground_nodes(
    skeleton: Skeleton, variable: RelationalVariable, base: str, burn: BurnScope
) -> frozenset[AttributeNode]:
    return frozenset(
        AttributeNode(i, variable.attribute)
        for i in terminal_set(skeleton, variable.path, base, burn)
    )


def ground_separated(
    engine: SeparationEngine,
    x: frozenset[AttributeNode],
    y: frozenset[AttributeNode],
    z: frozenset[AttributeNode],
    mode: SeparationMode,
) -> SeparationResult:
    """Separation of instantiated variable sets on a ground graph."""
    x, y = x - z, y - z
    shared = x & y
    if shared:
        return SeparationResult(False, Walk((min(shared),), ()))
    if not x or not y:
        return SeparationResult(True)
    return engine.query(SeparationQuery(x, y, z, mode))


def relational_ground_separated(
    model: RelationalModel,
    skeleton: Skeleton,
    base: str,
    x: Iterable[RelationalVariable],
    y: Iterable[RelationalVariable],
    z: Iterable[RelationalVariable] = (),
    mode: SeparationMode | str = SeparationMode.SIGMA,
    burn: BurnScope = "history",
) -> SeparationResult:
    """Separation of X|b and Y|b given Z|b in the ground graph of ``skeleton``.

    Raises:
        InvalidSkeletonError: If the skeleton violates the schema
        ModeMismatchError: If mode is D and the ground graph is cyclic
        PreconditionError: If ``base`` is not an instance of the variables' perspective
    """
    sep_mode = SeparationMode(mode)
    gg = ground(model, skeleton, burn=burn)
    if sep_mode is SeparationMode.D and is_cyclic(gg):
        raise ModeMismatchError("d-separation needs an acyclic ground graph; use mode sigma")

    def instantiate(variables: Iterable[RelationalVariable]) -> frozenset[AttributeNode]:
        return frozenset().union(*(ground_nodes(skeleton, v, base, burn) for v in variables))

    return ground_separated(
        SeparationEngine(gg.digraph), instantiate(x), instantiate(y), instantiate(z), sep_mode
    )


@dataclass
class _SweepResult:
    counts: dict[str, int] = field(default_factory=dict)
    soundness: list[Disagreement] = field(default_factory=list)
    connected: set[int] = field(default_factory=set)


def _sweep(
    model: RelationalModel,
    perspective: str,
    queries: list[RelationalQuery],
    agg_separated: list[bool],
    skeletons: list[Skeleton],
    mode: SeparationMode,
    burn: BurnScope,
) -> _SweepResult:
    """Evaluate every query on every (skeleton, base); runs in worker processes."""
    result = _SweepResult(counts=defaultdict(int))
    variables = sorted({v for q in queries for v in (*q.x, *q.y, *q.z)})
    for skeleton in skeletons:
        result.counts["skeletons"] += 1
        gg = ground(model, skeleton, validate=False, burn=burn)
        engine = SeparationEngine(gg.digraph)
        for base in skeleton.instances_of(perspective):
            result.counts["bases"] += 1
            nodes = {v: ground_nodes(skeleton, v, base, burn) for v in variables}
            for index, query in enumerate(queries):
                result.counts["instantiations"] += 1
                x = frozenset().union(*(nodes[v] for v in query.x))
                y = frozenset().union(*(nodes[v] for v in query.y))
                z = frozenset().union(*(nodes[v] for v in query.z))
                separated = ground_separated(engine, x, y, z, mode).separated
                if separated:
                    continue
                result.connected.add(index)
                if agg_separated[index]:
                    result.soundness.append(
                        Disagreement(
                            kind="soundness",
                            subject=str(query),
                            detail="abstract graph separates, ground graph connects",
                            skeleton=skeleton.label,
                            base=base,
                            skeleton_size=skeleton.size,
                        )
                    )
    result.counts = dict(result.counts)
    return result


def verify_abstraction(
    model: RelationalModel,
    perspective: str,
    h: int,
    mode: SeparationMode | str,
    max_per_entity: int = 3,
    *,
    max_conditioning: int = 2,
    max_set: int = 1,
    skeletons: Iterable[Skeleton] | None = None,
    require_min_degree_2: bool = True,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
    state_limit: int = 1_000_000,
    jobs: int = 1,
) -> VerificationReport:
    """Check relational separation on the (σ-)AGG against ground graphs.

    Args:
        model: Relational model
        perspective: Base item class
        h: Hop threshold
        mode: ``d`` (builds an acyclic AGG) or ``sigma`` (builds a σ-AGG)
        max_per_entity: Enumeration bound per entity class
        max_conditioning: Largest conditioning set in the query sweep
        max_set: Largest X and Y sets in the query sweep
        skeletons: Explicit skeletons instead of enumeration
        require_min_degree_2: Keep only skeletons whose entity instances all
            have degree > 1
        intersection_bound: Bound for intersection witness searches
        burn: Bridge-burning scope
        state_limit: Maximum number of skeletons examined; hitting it marks
            the report partial
        jobs: Worker processes

    Raises:
        CyclicModelError: If mode is ``d`` and the model is cyclic
    """
    sep_mode = SeparationMode(mode)
    agg_mode = AggMode.SIGMA_AGG if sep_mode is SeparationMode.SIGMA else AggMode.ACYCLIC_AGG
    agg = build_agg(model, perspective, h, agg_mode, intersection_bound, burn)

    queries = enumerate_queries(agg.relational_variables, max_conditioning, max_set)
    agg_separated = [
        relational_separated(agg, set(q.x), set(q.y), q.z, sep_mode).separated for q in queries
    ]

    batch, partial = _skeleton_batch(
        model, max_per_entity, require_min_degree_2, skeletons, state_limit
    )
    explicit = len(batch) if skeletons is not None else None
    report = VerificationReport(
        tag=f"abstraction-{sep_mode.value}",
        bound=_bound_label(max_per_entity, require_min_degree_2, explicit),
        caps={"x": max_set, "y": max_set, "z": max_conditioning, "hop": h},
        partial=partial,
    )
    report.count("queries", len(queries))

    if jobs > 1 and len(batch) > 1:
        chunks = [batch[i::jobs] for i in range(jobs) if batch[i::jobs]]
        level = logging.getLogger(PACKAGE_LOGGER).getEffectiveLevel()
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=configure_worker, initargs=(level,)
        ) as pool:
            futures = [
                pool.submit(_sweep, model, perspective, queries, agg_separated, chunk, sep_mode, burn)
                for chunk in chunks
            ]
            results = [f.result() for f in futures]
    else:
        results = [_sweep(model, perspective, queries, agg_separated, batch, sep_mode, burn)]

    connected: set[int] = set()
    for result in results:
        for key, n in sorted(result.counts.items()):
            report.count(key, n)
        for disagreement in result.soundness:
            report.disagree(disagreement)
        connected |= result.connected

    for index, query in enumerate(queries):
        all_separated = index not in connected
        if all_separated == agg_separated[index]:
            report.agree()
        elif all_separated:
            report.disagree(
                Disagreement(
                    kind="completeness",
                    subject=str(query),
                    detail="abstract graph connects, every enumerated ground graph separates",
                )
            )
    logger.info(
        f"{report.tag}: {len(queries)} queries over {report.counts.get('skeletons', 0)} "
        f"skeleton(s), {len(report.disagreements)} disagreement(s)"
    )
    return report


def _node_cover(
    node: AggNode, covers: dict[RelationalVariable, frozenset[str]]
) -> frozenset[str]:
    result = covers[node.primary]
    if node.secondary is not None:
        result = result & covers[node.secondary]
    return result


def _edge_realized(
    gg: GroundGraph,
    u: AggNode,
    v: AggNode,
    covers: dict[RelationalVariable, frozenset[str]],
) -> bool:
    sources = _node_cover(u, covers)
    targets = _node_cover(v, covers)
    return any(
        (AttributeNode(i, u.primary.attribute), AttributeNode(j, v.primary.attribute)) in gg.edges
        for i in sources
        for j in targets
    )


@dataclass(frozen=True)
class CoOccurrence:
    """AGG nodes and edges that must all be realized from one base of one skeleton."""

    name: str
    nodes: tuple[AggNode, ...] = ()
    edges: tuple[tuple[AggNode, AggNode], ...] = ()

    @property
    def variables(self) -> set[RelationalVariable]:
        nodes = [*self.nodes, *(n for edge in self.edges for n in edge)]
        return {v for node in nodes for v in node.constituents}

    def realized(
        self, gg: GroundGraph, covers: dict[RelationalVariable, frozenset[str]]
    ) -> bool:
        return all(_node_cover(n, covers) for n in self.nodes) and all(
            _edge_realized(gg, u, v, covers) for u, v in self.edges
        )

    def __str__(self) -> str:
        parts = [str(n) for n in self.nodes] + [f"{u} -> {v}" for u, v in self.edges]
        return f"{self.name}: {'; '.join(parts)}"


def _skeleton_stream(
    model: RelationalModel,
    max_per_entity: int,
    require_min_degree_2: bool,
    skeletons: list[Skeleton] | None,
    state_limit: int,
    report: VerificationReport,
) -> Iterator[Skeleton]:
    """Lazy counterpart of ``_skeleton_batch`` for sweeps that stop early."""
    source: Iterable[Skeleton] = (
        skeletons
        if skeletons is not None
        else enumerate_skeletons(
            model.schema, max_per_entity, require_min_degree_2, connected_only=True
        )
    )
    for n, skeleton in enumerate(source):
        if n == state_limit:
            logger.warning(f"Skeleton sweep stopped at the state limit of {state_limit}")
            report.partial = True
            return
        if skeletons is not None:
            issues = validate_skeleton(model.schema, skeleton)
            if issues:
                raise InvalidSkeletonError(
                    f"Skeleton violates the schema: {issues[0].message}", issues
                )
        yield skeleton


def _report_co_occurrences(report: VerificationReport, groups: list[CoOccurrence]) -> None:
    for group in groups:
        report.disagree(
            Disagreement(
                kind="never_co_occur",
                subject=str(group),
                detail="never realized together from one base",
            )
        )


def check_lemma1(
    model: RelationalModel,
    perspective: str,
    h: int,
    max_per_entity: int = 3,
    *,
    skeletons: Iterable[Skeleton] | None = None,
    co_occurrences: Iterable[CoOccurrence] = (),
    require_min_degree_2: bool = True,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
    state_limit: int = 1_000_000,
) -> VerificationReport:
    """Find AGG nodes and edges with no realization in any checked skeleton.

    A relational variable is realized by a non-empty terminal set, an
    intersection by overlapping constituent terminal sets, and an edge by a
    ground edge between instances covered by its endpoints, all from one base.
    Each of ``co_occurrences`` must in addition be realized as a whole from a
    single base. The sweep stops once nothing is left unrealized.
    """
    agg = build_agg(model, perspective, h, AggMode.SIGMA_AGG, intersection_bound, burn)
    explicit = list(skeletons) if skeletons is not None else None
    report = VerificationReport(
        tag="realizability",
        bound=_bound_label(
            max_per_entity, require_min_degree_2, len(explicit) if explicit is not None else None
        ),
        caps={"hop": h},
    )

    pending_nodes = set(agg.nodes)
    pending_edges = set(agg.edges)
    pending_groups = list(co_occurrences)
    total = len(agg.nodes) + len(agg.edges) + len(pending_groups)
    variables = set(agg.relational_variables).union(*(g.variables for g in pending_groups))
    stream = _skeleton_stream(
        model, max_per_entity, require_min_degree_2, explicit, state_limit, report
    )
    for skeleton in stream:
        report.count("skeletons")
        gg = ground(model, skeleton, validate=False, burn=burn)
        for base in skeleton.instances_of(perspective):
            report.count("bases")
            covers = {
                v: terminal_set(skeleton, v.path, base, burn) for v in variables
            }
            pending_nodes = {n for n in pending_nodes if not _node_cover(n, covers)}
            pending_edges = {
                (u, v) for u, v in pending_edges if not _edge_realized(gg, u, v, covers)
            }
            pending_groups = [g for g in pending_groups if not g.realized(gg, covers)]
        if not pending_nodes and not pending_edges and not pending_groups:
            break

    report.agree(total - len(pending_nodes) - len(pending_edges) - len(pending_groups))
    for node in sorted(pending_nodes):
        report.disagree(
            Disagreement(
                kind="unrealizable",
                subject=str(node),
                detail="terminal set empty from every base" if not node.is_intersection
                else "constituents never overlap",
            )
        )
    for u, v in sorted(pending_edges):
        report.disagree(
            Disagreement(
                kind="unrealizable_edge",
                subject=f"{u} -> {v}",
                detail="no ground edge between covered instances",
            )
        )
    _report_co_occurrences(report, pending_groups)
    return report


def check_co_occurrence(
    model: RelationalModel,
    perspective: str,
    groups: Iterable[CoOccurrence],
    max_per_entity: int = 3,
    *,
    skeletons: Iterable[Skeleton] | None = None,
    require_min_degree_2: bool = False,
    burn: BurnScope = "history",
    state_limit: int = 1_000_000,
) -> VerificationReport:
    """Search skeletons for one base realizing each group as a whole.

    Needs no AGG, and stops at the first skeleton that leaves no group
    unrealized. Agreements count the realized groups; every other group is a
    ``never_co_occur`` disagreement.
    """
    explicit = list(skeletons) if skeletons is not None else None
    report = VerificationReport(
        tag="co-occurrence",
        bound=_bound_label(
            max_per_entity, require_min_degree_2, len(explicit) if explicit is not None else None
        ),
    )
    pending = list(groups)
    total = len(pending)
    variables: set[RelationalVariable] = set().union(*(g.variables for g in pending))
    stream = _skeleton_stream(
        model, max_per_entity, require_min_degree_2, explicit, state_limit, report
    )
    for skeleton in stream:
        report.count("skeletons")
        gg = ground(model, skeleton, validate=False, burn=burn)
        for base in skeleton.instances_of(perspective):
            report.count("bases")
            covers = {v: terminal_set(skeleton, v.path, base, burn) for v in variables}
            realized = [g for g in pending if g.realized(gg, covers)]
            for group in realized:
                logger.info(f"{group.name} realized on {skeleton.label} from {base}")
            pending = [g for g in pending if g not in realized]
        if not pending:
            break

    report.agree(total - len(pending))
    _report_co_occurrences(report, pending)
    return report


def check_edges(
    model: RelationalModel,
    perspective: str,
    h: int,
    max_per_entity: int = 3,
    *,
    skeletons: Iterable[Skeleton] | None = None,
    require_min_degree_2: bool = True,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
    state_limit: int = 1_000_000,
) -> VerificationReport:
    """Every ground edge must be represented in the σ-AGG.

    For a ground edge i.X -> j.Y seen from base b and every pair of relational
    variables U.X covering i and V.Y covering j, the σ-AGG needs U -> V, or an
    intersection I of U with some W where I -> V is inherited and i is
    covered by I, or an intersection J of V with some W where U -> J is
    inherited and j is covered by J.
    """
    agg = build_agg(model, perspective, h, AggMode.SIGMA_AGG, intersection_bound, burn)
    batch, partial = _skeleton_batch(
        model, max_per_entity, require_min_degree_2, skeletons, state_limit
    )
    explicit = len(batch) if skeletons is not None else None
    report = VerificationReport(
        tag="edge-completeness",
        bound=_bound_label(max_per_entity, require_min_degree_2, explicit),
        caps={"hop": h},
        partial=partial,
    )

    edges = agg.edges
    intersections_of: dict[RelationalVariable, list[AggNode]] = defaultdict(list)
    for iv in agg.intersections:
        for constituent in iv.constituents:
            intersections_of[constituent].append(iv)
    variables = agg.relational_variables

    for skeleton in batch:
        report.count("skeletons")
        gg = ground(model, skeleton, validate=False, burn=burn)
        for base in skeleton.instances_of(perspective):
            report.count("bases")
            covers = {v: terminal_set(skeleton, v.path, base, burn) for v in variables}
            covering: dict[AttributeNode, list[RelationalVariable]] = defaultdict(list)
            for variable, instances in covers.items():
                for instance in instances:
                    covering[AttributeNode(instance, variable.attribute)].append(variable)

            for source, target in sorted(gg.edges):
                for u_var in covering.get(source, []):
                    for v_var in covering.get(target, []):
                        report.count("edge_pairs")
                        u, v = AggNode.relvar(u_var), AggNode.relvar(v_var)
                        if (u, v) in edges or any(
                            (iv, v) in edges and source.instance in _node_cover(iv, covers)
                            for iv in intersections_of[u_var]
                        ) or any(
                            (u, iv) in edges and target.instance in _node_cover(iv, covers)
                            for iv in intersections_of[v_var]
                        ):
                            report.agree()
                            continue
                        report.disagree(
                            Disagreement(
                                kind="missing_edge",
                                subject=f"{u_var} -> {v_var}",
                                detail=f"ground edge {source} -> {target}",
                                skeleton=skeleton.label,
                                base=base,
                                skeleton_size=skeleton.size,
                            )
                        )
    return report


def feedback_pairs(
    model: RelationalModel,
) -> list[tuple[RelationalDependency, RelationalDependency]]:
    """Dependency pairs whose cause paths are mutual reversals with swapped attributes."""
    pairs = []
    for d1, d2 in combinations(model.dependencies, 2):
        if (
            d1.cause.path.reversed() == d2.cause.path
            and d1.cause.attribute == d2.effect_attribute
            and d2.cause.attribute == d1.effect_attribute
        ):
            pairs.append((d1, d2))
    return pairs


def _realized(skeleton: Skeleton, dep: RelationalDependency, burn: BurnScope) -> bool:
    return any(
        terminal_set(skeleton, dep.cause.path, i, burn)
        for i in skeleton.instances_of(dep.effect_class)
    )


def check_ground_cycles(
    model: RelationalModel,
    max_per_entity: int = 3,
    *,
    skeletons: Iterable[Skeleton] | None = None,
    require_min_degree_2: bool = False,
    burn: BurnScope = "history",
    state_limit: int = 1_000_000,
) -> VerificationReport:
    """Ground-graph cyclicity against class-level model cyclicity.

    Acyclic models must ground to acyclic graphs. For every feedback pair,
    a skeleton realizing either dependency must ground to a cyclic graph.
    """
    acyclic_model = not detect_model_cycles(model)
    pairs = feedback_pairs(model)
    batch, partial = _skeleton_batch(
        model, max_per_entity, require_min_degree_2, skeletons, state_limit
    )
    explicit = len(batch) if skeletons is not None else None
    report = VerificationReport(
        tag="ground-cycles",
        bound=_bound_label(max_per_entity, require_min_degree_2, explicit),
        partial=partial,
    )

    for skeleton in batch:
        report.count("skeletons")
        gg = ground(model, skeleton, validate=False, burn=burn)
        cyclic = is_cyclic(gg)
        if acyclic_model and cyclic:
            report.disagree(
                Disagreement(
                    kind="cycle",
                    subject="acyclic model",
                    detail="ground graph has a directed cycle",
                    skeleton=skeleton.label,
                    skeleton_size=skeleton.size,
                )
            )
            continue
        realized = [
            (d1, d2)
            for d1, d2 in pairs
            if _realized(skeleton, d1, burn) or _realized(skeleton, d2, burn)
        ]
        if realized and not cyclic:
            d1, d2 = realized[0]
            report.disagree(
                Disagreement(
                    kind="acyclic_ground",
                    subject=f"{d1} / {d2}",
                    detail="feedback pair realized but ground graph is acyclic",
                    skeleton=skeleton.label,
                    skeleton_size=skeleton.size,
                )
            )
            continue
        report.agree()
    return report


def agg_cycles_agree(
    model: RelationalModel,
    perspective: str,
    h: int,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
) -> bool:
    """Whether σ-AGG cyclicity matches class-level model cyclicity."""
    agg: SigmaAGG = build_agg(model, perspective, h, AggMode.SIGMA_AGG, intersection_bound, burn)
    return agg.is_cyclic == bool(detect_model_cycles(model))
