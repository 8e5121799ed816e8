"""Mismatch records and verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Mismatch:
    input: str
    expected: str
    actual: str

    def to_json(self) -> dict:
        return {"input": self.input, "expected": self.expected, "actual": self.actual}


@dataclass
class Report:
    name: str
    cases: int = 0
    failures: list[Mismatch] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case, expected, actual) -> bool:
        """Record one case; ``case`` may be a zero-argument callable, formatted only on failure."""
        self.cases += 1
        if expected == actual:
            return True
        label = case() if callable(case) else case
        self.failures.append(Mismatch(label, str(expected), str(actual)))
        return False

    def expect(self, case: str, ok: bool, expected: str = "true", actual: str = "false") -> bool:
        self.cases += 1
        if not ok:
            self.failures.append(Mismatch(case, expected, actual))
        return ok

    def merge(self, other: "Report") -> "Report":
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "failures": [f.to_json() for f in sorted(self.failures, key=lambda f: f.input)],
            "notes": list(self.notes),
        }
