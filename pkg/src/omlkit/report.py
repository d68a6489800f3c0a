"""Pass/fail reports with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None, note: str = "") -> bool:
        if witness is not None and not isinstance(witness, tuple):
            witness = (witness,)
        if not passed and witness is None:
            witness = ()
        self.checks.append(Check(name, bool(passed), witness if not passed else None, note))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> bool:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))
        return other.passed

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    **({"witness": [str(w) for w in c.witness]} if c.witness is not None else {}),
                    **({"note": c.note} if c.note else {}),
                }
                for c in self.checks
            ],
        }

    def format(self, witness: bool = True) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  {'ok  ' if c.passed else 'FAIL'} {c.name}"
            if c.note:
                line += f" ({c.note})"
            if witness and c.witness:
                line += " witness=(" + ", ".join(str(w) for w in c.witness) + ")"
            lines.append(line)
        return "\n".join(lines)
