"""Verdict records shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["PASS", "FAIL", "INCONCLUSIVE", "Entry", "Report", "InputError", "combine"]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

_RANK = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2}


class InputError(ValueError):
    """Malformed or inconsistent input; carries a location string."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def combine(verdicts) -> str:
    worst = PASS
    for v in verdicts:
        if _RANK[v] > _RANK[worst]:
            worst = v
    return worst


@dataclass
class Entry:
    check: str
    verdict: str
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "verdict": self.verdict, "detail": self.detail}


@dataclass
class Report:
    title: str
    entries: list[Entry] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)

    def add(self, check: str, verdict: str, **detail: Any) -> Entry:
        e = Entry(check, verdict, detail)
        self.entries.append(e)
        return e

    def ok(self, check: str, **detail: Any) -> Entry:
        return self.add(check, PASS, **detail)

    def attach(self, child: "Report") -> "Report":
        self.children.append(child)
        return child

    @property
    def verdict(self) -> str:
        return combine([e.verdict for e in self.entries] + [c.verdict for c in self.children])

    def check_verdict(self, check: str) -> str:
        """Verdict restricted to entries named `check`, searching children too."""
        vs = [e.verdict for e in self.entries if e.check == check]
        vs += [c.check_verdict(check) for c in self.children if c.has_check(check)]
        return combine(vs) if vs else PASS

    def has_check(self, check: str) -> bool:
        return any(e.check == check for e in self.entries) or any(c.has_check(check) for c in self.children)

    def failures(self) -> list[Entry]:
        out = [e for e in self.entries if e.verdict == FAIL]
        for c in self.children:
            out.extend(c.failures())
        return out

    def count(self, verdict: str) -> int:
        return sum(e.verdict == verdict for e in self.entries) + sum(c.count(verdict) for c in self.children)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "verdict": self.verdict,
            "entries": [e.to_dict() for e in self.entries],
            "children": [c.to_dict() for c in self.children],
        }

    def summary_lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        lines = [f"{pad}{self.title}: {self.verdict}"]
        groups: dict[str, list[Entry]] = {}
        for e in self.entries:
            groups.setdefault(e.check, []).append(e)
        for name, es in groups.items():
            v = combine([e.verdict for e in es])
            n_fail = sum(e.verdict == FAIL for e in es)
            n_inc = sum(e.verdict == INCONCLUSIVE for e in es)
            lines.append(f"{pad}  {name}: {v} ({len(es)} checked, {n_fail} failed, {n_inc} inconclusive)")
        for c in self.children:
            lines.extend(c.summary_lines(indent + 1))
        return lines
