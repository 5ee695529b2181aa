"""Pass/fail verdicts carried by the checking operations."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed(detail: str = "") -> "Verdict":
        return Verdict(True, detail)

    @staticmethod
    def failed(detail: str) -> "Verdict":
        return Verdict(False, detail)

    def __and__(self, other: "Verdict") -> "Verdict":
        if self.ok and other.ok:
            joined = "; ".join(d for d in (self.detail, other.detail) if d)
            return Verdict(True, joined)
        bad = [v.detail for v in (self, other) if not v.ok]
        return Verdict(False, "; ".join(bad))
