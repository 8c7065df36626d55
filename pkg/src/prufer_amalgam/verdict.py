from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class Verdict:
    """Outcome of one mechanical check: pass, fail, or info (no claim made)."""

    id: str
    verdict: str
    details: dict[str, Any] = field(default_factory=dict)
    witnesses: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict[str, Any]:
        return {"id": self.id, "verdict": self.verdict, "details": self.details, "witnesses": list(self.witnesses)}


def verdict_of(ok: bool) -> str:
    return PASS if ok else FAIL
