from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional


@dataclass
class CheckResult:
    """Outcome of one exhaustive check: ``witness`` is set iff it failed."""

    name: str
    passed: bool
    checked: int = 0
    witness: Optional[Any] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {"name": self.name, "status": "pass" if self.passed else "FAIL", "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out

    def line(self) -> str:
        s = f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.checked} checked)"
        if self.detail:
            s += f": {self.detail}"
        if self.witness is not None:
            s += f"; witness: {self.witness}"
        return s


@dataclass
class Report:
    title: str
    checks: List[CheckResult] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self):
        out = {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.info:
            out["info"] = self.info
        return out

    def text(self) -> str:
        return "\n".join([self.title] + ["  " + c.line() for c in self.checks])
