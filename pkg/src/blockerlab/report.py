"""Structured verification results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one relation over one or more instances.

    ``witness`` is present exactly when ``status`` is ``"fail"``; it holds the
    offending inputs and both computed sides. ``details`` carries whatever the
    checker computed on the way (values of every term, which hypotheses held).
    """

    relation: str
    status: str
    instances: int
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INAPPLICABLE):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == FAIL) != (self.witness is not None):
            raise ValueError("a witness is present iff the status is fail")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "relation": self.relation,
            "status": self.status,
            "instances": self.instances,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def summary(self) -> str:
        line = f"{self.status.upper()} {self.relation} ({self.instances} instance{'s' if self.instances != 1 else ''})"
        if self.witness is not None:
            parts = ", ".join(f"{k}={v}" for k, v in self.witness.items())
            line += f"\n  witness: {parts}"
        return line


def passed(relation: str, instances: int = 1, **details) -> VerificationReport:
    return VerificationReport(relation, PASS, instances, None, details)


def failed(relation: str, witness: dict[str, Any], instances: int = 1, **details) -> VerificationReport:
    return VerificationReport(relation, FAIL, instances, witness, details)


def combine(relation: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    """Aggregate a sweep: fails on the first failing report, counts every instance.

    Inapplicable reports are counted but neither pass nor fail the aggregate.
    """
    total = 0
    skipped = 0
    first_failure = None
    for rep in reports:
        total += rep.instances
        if rep.status == INAPPLICABLE:
            skipped += rep.instances
        elif rep.failed and first_failure is None:
            first_failure = rep
    details = {"inapplicable": skipped} if skipped else {}
    if first_failure is not None:
        witness = dict(first_failure.witness)
        witness.setdefault("relation", first_failure.relation)
        return VerificationReport(relation, FAIL, total, witness, details)
    return VerificationReport(relation, PASS, total, None, details)
