"""Verification reports: named checks with pass/fail, counts and witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    witness: dict | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.passed, c.checked, c.witness, c.detail))

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"subject": self.subject, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = self.data
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  {c.name}: {'pass' if c.passed else 'FAIL'} ({c.checked} checked)"
            if c.witness is not None:
                line += f"  witness={json.dumps(c.witness, sort_keys=True, ensure_ascii=False)}"
            if c.detail:
                line += f"  [{c.detail}]"
            lines.append(line)
        return "\n".join(lines)


def run_check(name: str, cases, evaluate, is_zero, describe) -> CheckResult:
    """Evaluate ``evaluate(case)`` on every case; stop at the first nonzero defect.

    ``describe(case, defect)`` renders the witness dictionary.
    """
    count = 0
    for case in cases:
        count += 1
        defect = evaluate(case)
        if not is_zero(defect):
            return CheckResult(name, False, count, describe(case, defect))
    return CheckResult(name, True, count)
