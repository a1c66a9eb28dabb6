"""Report types shared by the verification layers.

Reports are plain data: rerunning a verification with the same configuration
must produce an identical report (no timestamps, sorted keys in JSON).
"""

from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"
FAILED_AS_PRINTED = "failed-as-printed"


@dataclass
class VerificationReport:
    family: str
    q: int
    params: dict
    mode: str                     # "exact" | "series"
    status: str
    agreed_terms: int | None = None
    details: list = field(default_factory=list)
    min_agreed: int = 5

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "params": self.params,
            "mode": self.mode,
            "status": self.status,
            "agreedTerms": self.agreed_terms,
            "minAgreed": self.min_agreed,
            "details": self.details,
        }


@dataclass
class CheckReport:
    """Result of an exact CPY system check."""

    satisfied: bool
    failing_equation: int | None
    degenerate: bool

    def to_json(self) -> dict:
        return {"satisfied": self.satisfied, "failingEquation": self.failing_equation,
                "degenerate": self.degenerate}
