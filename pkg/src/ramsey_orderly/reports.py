"""Bounds and check reports shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._json import to_jsonable

MAX_RECORDED_VIOLATIONS = 100


@dataclass(frozen=True)
class Bounds:
    """Truncation of the orderly-term space: term size and largest variable index."""

    max_size: int
    max_index: int

    def __post_init__(self):
        if self.max_size < 1 or self.max_index < 0:
            raise ValueError(f"invalid bounds {self}")

    def capped(self, coverage):
        """Bounds restricted to a view that only covers ``coverage`` variables."""
        if coverage is None or coverage - 1 >= self.max_index:
            return self
        return Bounds(self.max_size, coverage - 1) if coverage > 0 else None

    def to_json(self) -> dict:
        return {"max_size": self.max_size, "max_index": self.max_index}


@dataclass
class CheckReport:
    """Outcome of an exhaustive check within stated bounds.

    Only the first ``MAX_RECORDED_VIOLATIONS`` violations are kept;
    ``violation_count`` is the full tally.
    """

    check: str
    bounds: Bounds | None
    checked: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def add(self, violation: dict) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_RECORDED_VIOLATIONS:
            self.violations.append(violation)

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": to_jsonable(self.violations),
            "bounds": self.bounds.to_json() if self.bounds else None,
        }
        out.update({k: to_jsonable(v) for k, v in self.details.items()})
        return out
