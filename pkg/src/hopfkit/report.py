"""Pass/fail reports with witnesses.

Every verification routine returns a :class:`Report`.  Reports serialize to
plain JSON-compatible dicts and parse back to equal objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _plain(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class Check:
    name: str
    ok: bool
    witness: Any = None
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "ok": bool(self.ok)}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(d["name"], d["ok"], d.get("witness"), d.get("detail"))


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    children: list["Report"] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness=None, detail: str | None = None) -> bool:
        self.checks.append(Check(name, bool(ok), witness, detail))
        return bool(ok)

    def extend(self, other: "Report") -> "Report":
        self.children.append(other)
        return other

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and all(r.ok for r in self.children)

    def __bool__(self) -> bool:
        return self.ok

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def child(self, title: str) -> "Report":
        for r in self.children:
            if r.title == title:
                return r
        raise KeyError(title)

    def failures(self) -> list[Check]:
        out = [c for c in self.checks if not c.ok]
        for r in self.children:
            out.extend(r.failures())
        return out

    def to_dict(self) -> dict:
        d = {"title": self.title, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            d["data"] = _plain(self.data)
        if self.children:
            d["children"] = [r.to_dict() for r in self.children]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            d["title"],
            [Check.from_dict(c) for c in d.get("checks", [])],
            dict(d.get("data", {})),
            [cls.from_dict(r) for r in d.get("children", [])],
        )

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{'PASS' if self.ok else 'FAIL'}  {self.title}"]
        for k, v in self.data.items():
            if isinstance(v, (list, tuple)) and v and isinstance(v[0], dict):
                lines.append(f"{pad}    {k}: {len(v)} entries (full data in JSON output)")
            else:
                lines.append(f"{pad}    {k}: {_plain(v)}")
        for c in self.checks:
            line = f"{pad}  [{'ok' if c.ok else 'FAIL'}] {c.name}"
            if c.detail:
                line += f" ({c.detail})"
            if not c.ok and c.witness is not None:
                line += f"  witness={_plain(c.witness)}"
            lines.append(line)
        for r in self.children:
            lines.append(r.render(indent + 1))
        return "\n".join(lines)
