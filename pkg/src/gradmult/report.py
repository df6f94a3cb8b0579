"""Check reports and exact-value serialization shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence-only"
SKIPPED = "skipped"
REFUSED = "refused"


def rational_str(x) -> str:
    """Exact "p/q" rendering; integers render without a denominator."""
    return str(Fraction(x))


def to_jsonable(value: Any) -> Any:
    """Recursively turn exact values into JSON-friendly data.

    Fractions become "p/q" strings so that no float ever leaks into the
    output; plain ints stay JSON integers; tuples used as keys are joined
    with commas.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {_key(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(v) for v in k)
    return str(k)


@dataclass
class CheckReport:
    name: str
    instance: str
    verdict: str
    lhs: Any = None
    rhs: Any = None
    mode: str = "exact"
    witnesses: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "verdict": self.verdict,
            "mode": self.mode,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "witnesses": to_jsonable(self.witnesses),
            "notes": list(self.notes),
            "details": to_jsonable(self.details),
        }


def combine_verdicts(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == FAIL for v in verdicts):
        return FAIL
    if any(v == EVIDENCE for v in verdicts):
        return EVIDENCE
    if verdicts and all(v == SKIPPED for v in verdicts):
        return SKIPPED
    return PASS
