"""Structured check reports with text and machine (JSON lines) renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import FieldScalar, format_rational, format_scalar

VERDICTS = ("pass", "fail", "truncated")


def describe(x) -> str:
    """Stable human-readable text for any object that can appear in a witness."""
    if hasattr(x, "describe"):
        return x.describe()
    if isinstance(x, FieldScalar):
        return format_scalar(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, bool) or x is None:
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(describe(y) for y in x) + ")"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{describe(k)}: {describe(v)}" for k, v in x.items()) + "}"
    if type(x).__name__ == "mpq":
        return format_rational(x)
    return str(x)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return x
    return describe(x)


@dataclass
class CheckReport:
    check: str
    target: str
    verdict: str = "pass"
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    timing: float | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.witnesses:
            raise ValueError(f"{self.check}: a failing report needs a witness")
        if self.verdict == "truncated" and "cap" not in self.stats:
            raise ValueError(f"{self.check}: a truncated report needs cap metadata")

    @classmethod
    def from_witnesses(cls, check, target, witnesses, **kw) -> CheckReport:
        return cls(check, target, "fail" if witnesses else "pass", list(witnesses), **kw)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "check": self.check,
            "target": self.target,
            "verdict": self.verdict,
            "witnesses": _plain(self.witnesses),
            "stats": _plain(self.stats),
            "notes": list(self.notes),
        }
        if timing and self.timing is not None:
            d["timing"] = round(self.timing, 6)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, ensure_ascii=False)

    def to_text(self, max_witnesses: int = 5) -> str:
        lines = [f"[{self.verdict.upper():9}] {self.check} on {self.target}"]
        for k, v in self.stats.items():
            lines.append(f"    {k}: {describe(v)}")
        for w in self.witnesses[:max_witnesses]:
            lines.append(f"    witness: {describe(w)}")
        if len(self.witnesses) > max_witnesses:
            extra = len(self.witnesses) - max_witnesses
            lines.append(f"    ... {extra} more witness{'es' if extra > 1 else ''}")
        for n in self.notes:
            lines.append(f"    note: {n}")
        return "\n".join(lines)


def render(reports, fmt: str = "text") -> str:
    if fmt == "machine":
        return "\n".join(r.to_json() for r in reports) + "\n"
    return "\n".join(r.to_text() for r in reports) + "\n"


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
