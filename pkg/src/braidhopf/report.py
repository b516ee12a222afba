"""Verification reports: ordered named checks with witnesses on failure."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from .scalars import Matrix, decode_index


class TheoremViolation(AssertionError):
    """A structural identity that must hold on a verified instance did not."""


class PreconditionError(ValueError):
    """Inputs do not satisfy an operation's precondition; carries a witness."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ConstructionError(ValueError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skip"
    witness: Any = None
    detail: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        d["time_s"] = round(self.seconds, 6)
        return d


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def add(self, name: str, ok: bool, witness: Any = None, detail: str = "", seconds: float = 0.0):
        self.checks.append(Check(name, "pass" if ok else "fail", None if ok else witness,
                                 detail, seconds))
        return ok

    def skip(self, name: str, reason: str):
        self.checks.append(Check(name, "skip", None, reason))

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.detail, c.seconds))
        self.data.update({prefix + k: v for k, v in other.data.items()})

    def equal(self, name: str, lhs: Matrix, rhs: Matrix, dims: Sequence[int] | None = None,
              labels: Sequence[Sequence[str]] | None = None) -> bool:
        """Record an exact matrix identity; the witness is the first offending input basis tensor."""
        t0 = time.perf_counter()
        pos = lhs.first_difference(rhs)
        w = None
        if pos is not None:
            w = matrix_witness(pos, lhs, rhs, dims, labels)
        return self.add(name, pos is None, w, seconds=time.perf_counter() - t0)

    def assert_ok(self):
        if not self.ok:
            bad = self.failures()[0]
            raise TheoremViolation(f"{self.subject}: {bad.name} failed, witness {bad.witness}")

    def as_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok,
                "checks": [c.as_dict() for c in self.checks], "data": self.data}

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            tail = f"  witness={c.witness}" if c.witness is not None else ""
            lines.append(f"  [{c.status}] {c.name}{tail}")
        return "\n".join(lines)


def matrix_witness(pos, lhs: Matrix, rhs: Matrix, dims=None, labels=None) -> dict:
    i, j = pos
    if dims:
        idx = decode_index(j, dims)
        if labels:
            inp = [labels[k][x] for k, x in enumerate(idx)]
        else:
            inp = list(idx)
    else:
        inp = [j]
    return {"input": inp, "output_index": i, "lhs": str(lhs[i, j]), "rhs": str(rhs[i, j])}
