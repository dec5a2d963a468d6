"""Small pass/fail reporting primitives shared by the verifiers."""

from __future__ import annotations


class CheckLine:
    def __init__(self, name: str, passed: bool, detail: str = ""):
        self.name = name
        self.passed = passed
        self.detail = detail

    def as_dict(self) -> dict:
        return {"check": self.name, "ok": self.passed, "detail": self.detail}

    def __repr__(self) -> str:
        status = "ok" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


class CheckReport:
    def __init__(self, title: str = ""):
        self.title = title
        self.lines: list[CheckLine] = []

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.lines.append(CheckLine(name, passed, detail))

    def extend(self, other: "CheckReport") -> None:
        self.lines.extend(other.lines)

    @property
    def ok(self) -> bool:
        return all(l.passed for l in self.lines)

    @property
    def counts(self) -> tuple[int, int]:
        passed = sum(1 for l in self.lines if l.passed)
        return passed, len(self.lines) - passed

    def failures(self) -> list[CheckLine]:
        return [l for l in self.lines if not l.passed]

    def __repr__(self) -> str:
        p, f = self.counts
        return f"CheckReport({self.title!r}: {p} ok, {f} failed)"
