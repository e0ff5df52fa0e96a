"""Named pass/fail checks with witnesses, shared by the action lab and the CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, List


@dataclass
class Check:
    id: str
    passed: bool
    witness: Any = None
    data: Any = None
    ms: float = 0.0

    def __post_init__(self):
        # a failure always carries a witness; fall back to the data payload
        if not self.passed and self.witness is None:
            self.witness = self.data if self.data is not None else {"check": self.id}

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class ActionReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "ActionReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.witness, c.data, c.ms))

    def __getitem__(self, cid: str) -> Check:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


def timed(cid: str, fn: Callable[[], tuple]) -> Check:
    """Run ``fn`` returning (passed, witness, data) and time it."""
    t0 = time.perf_counter()
    passed, witness, data = fn()
    return Check(cid, bool(passed), witness, data, (time.perf_counter() - t0) * 1000.0)
