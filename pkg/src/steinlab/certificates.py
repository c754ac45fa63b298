"""Verification records.

Every inequality the library checks is returned as a certificate that keeps
both sides, the margin and the slack that was used, so a run can be
re-audited from its output alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class OrderCertificate:
    """Witness for an operator inequality ``lhs <= rhs``.

    ``margin`` is the smallest eigenvalue of ``rhs - lhs``.
    """

    claim: str
    lhs_label: str
    rhs_label: str
    margin: float
    slack: float
    holds: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "holds", bool(self.margin >= -self.slack))

    def as_row(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "lhs": self.lhs_label,
            "rhs": self.rhs_label,
            "margin": self.margin,
            "slack": self.slack,
            "pass": self.holds,
        }


@dataclass(frozen=True)
class ScalarCertificate:
    """A scalar inequality ``lhs <= rhs`` or equality ``lhs == rhs``.

    For ``kind == "leq"`` the margin is ``rhs - lhs``; for ``kind == "eq"`` it
    is ``-|lhs - rhs|``.  Either way the claim holds when
    ``margin >= -slack``.  A skipped certificate (degenerate input) counts as
    holding and carries the reason in ``note``.
    """

    claim: str
    lhs: float
    rhs: float
    slack: float
    kind: str = "leq"
    skipped: bool = False
    note: str = ""
    margin: float = field(init=False)
    holds: bool = field(init=False)

    def __post_init__(self):
        if self.kind not in ("leq", "eq"):
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if self.skipped:
            margin = float("nan")
            holds = True
        else:
            if self.kind == "leq":
                margin = float(self.rhs - self.lhs)
            else:
                margin = -abs(float(self.lhs - self.rhs))
            # inf - inf style comparisons are treated as failures
            holds = bool(margin >= -self.slack)
        object.__setattr__(self, "margin", margin)
        object.__setattr__(self, "holds", holds)

    def as_row(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "slack": self.slack,
            "pass": self.holds,
        }


def scalar_leq(claim: str, lhs: float, rhs: float, slack: float) -> ScalarCertificate:
    return ScalarCertificate(claim, float(lhs), float(rhs), float(slack), kind="leq")


def scalar_eq(claim: str, lhs: float, rhs: float, slack: float) -> ScalarCertificate:
    return ScalarCertificate(claim, float(lhs), float(rhs), float(slack), kind="eq")


def skipped(claim: str, note: str) -> ScalarCertificate:
    return ScalarCertificate(claim, float("nan"), float("nan"), 0.0, skipped=True, note=note)
