"""Structured pass/fail reports for the basis-level axiom checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import render_rational


@dataclass(frozen=True)
class Failure:
    condition: str
    indices: tuple
    lhs: tuple
    rhs: tuple

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "indices": list(self.indices),
            "lhs": [render_rational(x) for x in self.lhs],
            "rhs": [render_rational(x) for x in self.rhs],
        }


@dataclass
class ConditionReport:
    """Collects failures; passes iff none were recorded.

    By default only the first failing tuple of each condition is kept.  With
    ``exhaustive=True`` every failing tuple is recorded.
    """
    exhaustive: bool = False
    failures: list = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def wants(self, condition: str) -> bool:
        """False once a condition already failed and we are not exhaustive."""
        return self.exhaustive or condition not in self._seen

    def record(self, condition: str, indices, lhs, rhs) -> None:
        if not self.wants(condition):
            return
        self._seen.add(condition)
        self.failures.append(Failure(condition, tuple(indices), tuple(lhs), tuple(rhs)))

    def compare(self, condition: str, indices, lhs, rhs) -> bool:
        if tuple(lhs) != tuple(rhs):
            self.record(condition, indices, lhs, rhs)
            return False
        return True

    def conditions(self) -> list[str]:
        out = []
        for f in self.failures:
            if f.condition not in out:
                out.append(f.condition)
        return out

    def merge(self, other: "ConditionReport", prefix: str = "") -> "ConditionReport":
        for f in other.failures:
            self.record(prefix + f.condition, f.indices, f.lhs, f.rhs)
        return self

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "failures": [f.to_json() for f in self.failures]}

    def render(self, labels=None) -> str:
        if self.passed:
            return "pass"
        lines = ["fail"]
        for f in self.failures:
            idx = ", ".join(labels[i] if labels and i < len(labels) else str(i) for i in f.indices)
            lhs = ", ".join(render_rational(x) for x in f.lhs)
            rhs = ", ".join(render_rational(x) for x in f.rhs)
            lines.append(f"  [{f.condition}] at ({idx}): lhs=({lhs}) rhs=({rhs})")
        return "\n".join(lines)
