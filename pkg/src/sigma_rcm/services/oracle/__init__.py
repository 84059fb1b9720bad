"""Brute-force oracle and bounded verification.

Public API:
- walk_enumeration_separated / walk_is_blocked: walk-level separation oracle
- verify_abstraction: AGG verdicts against enumerated ground graphs
- check_lemma1 / check_co_occurrence / check_edges / check_ground_cycles / agg_cycles_agree
- reproduce_counterexample: incompleteness counterexample for the acyclic AGG
- VerificationReport: JSON and table output

Example Usage:
    >>> from sigma_rcm.services.catalog import builtin_model
    >>> from sigma_rcm.services.oracle import verify_abstraction
    >>> report = verify_abstraction(builtin_model("social-cyclic"), "USER", 4, "sigma", 1)
    >>> report.to_dict()["evidence"]
    'bounded evidence'
"""

from sigma_rcm.services.oracle.counterexample import (
    CounterexampleReport,
    overlap_with_dependency,
    reproduce_counterexample,
)
from sigma_rcm.services.oracle.report import Disagreement, VerificationReport
from sigma_rcm.services.oracle.verification import (
    CoOccurrence,
    RelationalQuery,
    agg_cycles_agree,
    check_co_occurrence,
    check_edges,
    check_ground_cycles,
    check_lemma1,
    enumerate_queries,
    feedback_pairs,
    relational_ground_separated,
    verify_abstraction,
)
from sigma_rcm.services.oracle.walks import walk_enumeration_separated, walk_is_blocked


__all__ = [
    "CoOccurrence",
    "CounterexampleReport",
    "Disagreement",
    "RelationalQuery",
    "VerificationReport",
    "agg_cycles_agree",
    "check_co_occurrence",
    "check_edges",
    "check_ground_cycles",
    "check_lemma1",
    "enumerate_queries",
    "feedback_pairs",
    "overlap_with_dependency",
    "relational_ground_separated",
    "reproduce_counterexample",
    "verify_abstraction",
    "walk_enumeration_separated",
    "walk_is_blocked",
]
