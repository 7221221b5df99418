"""Small result containers shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Report:
    """Named boolean checks plus free-form data.

    ``passed`` is the conjunction of all checks; an empty report passes.
    """

    name: str
    checks: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.passed

    def check(self, label: str, ok: bool) -> bool:
        self.checks[label] = bool(ok)
        return bool(ok)

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": dict(self.checks), "data": jsonable(self.data)}


def jsonable(x: Any):
    """Convert nested reports, sets, tuples and fractions into JSON-ready values."""
    from .exterior import ExtElement, render

    if isinstance(x, Report):
        return x.to_json()
    if isinstance(x, ExtElement):
        return render(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x
