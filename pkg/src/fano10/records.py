"""Verification records shared by the geometry modules and the report writer."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIP = "pass", "fail", "skip"


class DegenerateInput(RuntimeError):
    """A sampled instance misses a genericity condition (distinct from a failed claim)."""

    def __init__(self, message: str, failed_checks: list[str] | None = None, attempts: int = 0):
        super().__init__(message)
        self.failed_checks = failed_checks or []
        self.attempts = attempts


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status, "witness": self.witness}


def check(name: str, anchor: str, ok: bool, **witness) -> Check:
    return Check(name, anchor, PASS if ok else FAIL, witness)
