"""Reproduce the incompleteness counterexample for the acyclic AGG.

On the all-ONE five-entity model the AGG from E1 reports P.X and S'.Z as
d-connected given Q.Y, through the intersection of Q.Y with [E1, R1, E2].Y.
No skeleton exhibits that connection, and no skeleton of the schema has
every entity instance at degree > 1.

The connection would need S.Z and S'.Z to share an E5 instance while Q.Y
receives X from P. With ONE cardinalities the E3 instance reached by P and
the one reached by Q must then differ, and each sits in its own R3 instance,
so the overlap is empty whenever the P.X -> Q.Y edge is realized. Under MANY
an R3 instance of the P-side E3 can reuse the E5 instance of the Q side.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from typing import Any

from sigma_rcm.models.relational import RelationalVariable
from sigma_rcm.services.agg import AggMode, AggNode, build_agg, relational_separated
from sigma_rcm.services.catalog import LEE_PATHS, builtin_model, lee_variables
from sigma_rcm.services.ground_graph import ground
from sigma_rcm.services.oracle.verification import (
    CoOccurrence,
    check_co_occurrence,
    ground_nodes,
    ground_separated,
)
from sigma_rcm.services.paths import is_valid_path
from sigma_rcm.services.separation import SeparationEngine, SeparationMode
from sigma_rcm.services.skeletons import BurnScope, enumerate_skeletons


logger = logging.getLogger(__name__)


@dataclass
class CounterexampleReport:
    """Outcome of the counterexample reproduction.

    Attributes:
        claim1: The AGG reports P.X and S'.Z d-connected given Q.Y
        claim2: No enumerated ground graph connects them
        filtered_empty: No skeleton passes the degree > 1 filter
        overlap_realized: Some skeleton realizes ``overlap_with_dependency``
        paths_valid: P, Q, S and S' are valid paths
        skeletons_checked: Number of skeletons swept for claim2
        agg_witness: Connecting walk on the AGG, if any
        connecting_skeleton: Label of a skeleton refuting claim2, if any
    """

    claim1: bool
    claim2: bool
    filtered_empty: bool
    paths_valid: bool
    overlap_realized: bool
    skeletons_checked: int
    max_per_entity: int
    agg_witness: list[str] | None = None
    connecting_skeleton: str | None = None

    @property
    def reproduced(self) -> bool:
        return self.claim1 and self.claim2

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def overlap_with_dependency() -> CoOccurrence:
    """S.Z ∩ S'.Z non-empty while the P.X -> Q.Y edge is realized, from one E1 base."""
    p_x, s_prime_z, q_y = lee_variables()
    s_z = RelationalVariable(LEE_PATHS["S"], "Z")
    return CoOccurrence(
        name="overlap-with-dependency",
        nodes=(AggNode.intersection(s_z, s_prime_z),),
        edges=((AggNode.relvar(p_x), AggNode.relvar(q_y)),),
    )


def reproduce_counterexample(
    max_per_entity: int = 3,
    h: int = 6,
    intersection_bound: int = 3,
    burn: BurnScope = "history",
    model_name: str = "lee-counterexample",
) -> CounterexampleReport:
    """Check both claims of the counterexample up to ``max_per_entity``."""
    model = builtin_model(model_name)
    schema = model.schema
    p_x, s_z, q_y = lee_variables()

    agg = build_agg(model, "E1", h, AggMode.ACYCLIC_AGG, intersection_bound, burn)
    abstract = relational_separated(agg, {p_x}, {s_z}, {q_y}, SeparationMode.D)
    claim1 = not abstract.separated

    checked = 0
    connecting: str | None = None
    for skeleton in enumerate_skeletons(schema, max_per_entity, connected_only=True):
        checked += 1
        gg = ground(model, skeleton, validate=False, burn=burn)
        engine = SeparationEngine(gg.digraph)
        for base in skeleton.instances_of("E1"):
            x = ground_nodes(skeleton, p_x, base, burn)
            y = ground_nodes(skeleton, s_z, base, burn)
            z = ground_nodes(skeleton, q_y, base, burn)
            if not ground_separated(engine, x, y, z, SeparationMode.D).separated:
                connecting = skeleton.label
                break
        if connecting is not None:
            break

    filtered = enumerate_skeletons(
        schema, max_per_entity, require_min_degree_2=True, connected_only=True
    )
    filtered_empty = next(iter(filtered), None) is None
    paths_valid = all(bool(is_valid_path(schema, p.items)) for p in LEE_PATHS.values())
    overlap = check_co_occurrence(
        model, "E1", [overlap_with_dependency()], max_per_entity, burn=burn
    )

    report = CounterexampleReport(
        claim1=claim1,
        claim2=connecting is None,
        filtered_empty=filtered_empty,
        paths_valid=paths_valid,
        overlap_realized=overlap.held,
        skeletons_checked=checked,
        max_per_entity=max_per_entity,
        agg_witness=abstract.witness.to_list() if abstract.witness else None,
        connecting_skeleton=connecting,
    )
    logger.info(
        f"Counterexample ({model_name}, max={max_per_entity}): claim1={report.claim1} "
        f"claim2={report.claim2} over {checked} skeleton(s)"
    )
    return report
