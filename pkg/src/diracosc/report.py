"""Verification reports shared by every checking routine."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Check:
    id: str
    residual: float
    passed: bool
    depth: Optional[int] = None
    raw_residual: Optional[float] = None
    note: str = ""

    def as_dict(self) -> Dict[str, Any]:
        out = {"id": self.id, "residual": self.residual, "passed": self.passed}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.raw_residual is not None:
            out["raw_residual"] = self.raw_residual
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    """Per-check residuals; ``passed`` iff every check passed.

    A check passes when ``residual <= tolerance`` unless the caller supplies
    an explicit verdict (used for expected-failure style audits).
    """

    name: str
    tolerance: float = 1e-10
    checks: List[Check] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def add(self, id, residual, passed=None, **kw) -> Check:
        residual = float(residual)
        if passed is None:
            passed = residual <= self.tolerance
        check = Check(id, residual, bool(passed), **kw)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.residual, c.passed, c.depth, c.raw_residual, c.note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def sorted(self) -> "VerificationReport":
        return VerificationReport(self.name, self.tolerance, sorted(self.checks, key=lambda c: c.id), dict(self.meta))

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "n_checks": len(self.checks),
            "meta": self.meta,
            "checks": [c.as_dict() for c in self.checks],
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {len(self.checks)} checks, max residual {self.max_residual:.3e}"
