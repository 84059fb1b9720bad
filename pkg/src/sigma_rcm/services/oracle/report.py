"""Verification reports produced by the oracle checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from rich.markup import escape
from rich.table import Table


BOUNDED_EVIDENCE = "bounded evidence"


@dataclass(frozen=True, order=True)
class Disagreement:
    """One instance on which a checked property failed.

    Attributes:
        kind: Failure class (``soundness``, ``completeness``, ``unrealizable``,
            ``missing_edge``, ``cycle`` ...)
        subject: What failed (query, variable or edge in text form)
        detail: Human-readable explanation
        skeleton: Canonical label of the smallest skeleton showing the failure
        base: Base instance the failure was observed from
        skeleton_size: Number of entity instances in ``skeleton``
    """

    kind: str
    subject: str
    detail: str = ""
    skeleton: str = ""
    base: str = ""
    skeleton_size: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "subject": self.subject,
            "detail": self.detail,
            "skeleton": self.skeleton,
            "base": self.base,
        }


@dataclass
class VerificationReport:
    """Outcome of a bounded verification run.

    Disagreements are kept per (kind, subject), retaining the smallest
    skeleton that exhibits each one. ``held`` is true iff no disagreement
    was recorded.
    """

    tag: str
    bound: str = ""
    counts: dict[str, int] = field(default_factory=dict)
    caps: dict[str, Any] = field(default_factory=dict)
    agreements: int = 0
    partial: bool = False
    _disagreements: dict[tuple[str, str], Disagreement] = field(default_factory=dict, repr=False)

    @property
    def disagreements(self) -> list[Disagreement]:
        return sorted(self._disagreements.values())

    @property
    def held(self) -> bool:
        return not self._disagreements

    def count(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n

    def agree(self, n: int = 1) -> None:
        self.agreements += n

    def disagree(self, disagreement: Disagreement) -> None:
        key = (disagreement.kind, disagreement.subject)
        current = self._disagreements.get(key)
        if current is None or (disagreement.skeleton_size, disagreement.skeleton) < (
            current.skeleton_size,
            current.skeleton,
        ):
            self._disagreements[key] = disagreement

    def of_kind(self, kind: str) -> list[Disagreement]:
        return [d for d in self.disagreements if d.kind == kind]

    def merge(self, other: VerificationReport) -> None:
        """Fold ``other`` into this report (order independent)."""
        for key, n in other.counts.items():
            self.count(key, n)
        self.agreements += other.agreements
        self.partial = self.partial or other.partial
        for disagreement in other.disagreements:
            self.disagree(disagreement)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tag": self.tag,
            "evidence": BOUNDED_EVIDENCE,
            "bound": self.bound,
            "caps": self.caps,
            "counts": dict(sorted(self.counts.items())),
            "agreements": self.agreements,
            "partial": self.partial,
            "held": self.held,
            "disagreements": [d.to_dict() for d in self.disagreements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_table(self, limit: int = 20) -> Table:
        """Rich table of the report; the title states the enumeration bound."""
        status = "[green]held[/green]" if self.held else "[red]violated[/red]"
        title = f"{escape(self.tag)}: {status} ({BOUNDED_EVIDENCE}, {escape(self.bound)})"
        if self.partial:
            title += " [yellow]partial[/yellow]"
        table = Table(title=title, show_lines=False)
        table.add_column("Kind", style="cyan", no_wrap=True)
        table.add_column("Subject", style="white")
        table.add_column("Detail", style="dim")
        table.add_column("Skeleton", style="dim")

        for disagreement in self.disagreements[:limit]:
            table.add_row(
                disagreement.kind,
                escape(disagreement.subject),
                escape(disagreement.detail),
                escape(disagreement.skeleton) or "-",
            )
        if len(self._disagreements) > limit:
            table.add_row("...", f"{len(self._disagreements) - limit} more", "", "")
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        table.caption = f"agreements={self.agreements}; {counts}"
        return table
