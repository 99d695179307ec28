"""Structured pass/fail evidence for law checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class LawResult:
    law: str
    passed: bool
    checked: int = 0
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"law": self.law, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


@dataclass
class Report:
    subject: str
    results: list[LawResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def law(self, name: str) -> LawResult:
        for r in self.results:
            if r.law == name:
                return r
        raise KeyError(name)

    def laws(self) -> list[str]:
        return [r.law for r in self.results]

    def record(self, law: str, passed: bool, checked: int = 1, witness: dict | None = None) -> LawResult:
        r = LawResult(law, passed, checked, witness)
        self.results.append(r)
        return r

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for r in other.results:
            self.results.append(LawResult(prefix + r.law, r.passed, r.checked, r.witness))
        return self

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
        }

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            mark = "ok " if r.passed else "BAD"
            line = f"  [{mark}] {r.law} ({r.checked} checked)"
            if r.witness is not None and not r.passed:
                line += " witness=" + json.dumps(_jsonable(r.witness), sort_keys=True)
            lines.append(line)
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.summary()


class LawCheck:
    """Accumulates one law over many basis tuples, keeping the first failure.

    Usage::

        with LawCheck(report, "coassociativity") as chk:
            for x in ...:
                if not chk(ok, basis=(x,), lhs=..., rhs=...):
                    break
    """

    def __init__(self, report: Report, law: str):
        self.report = report
        self.law = law
        self.checked = 0
        self.witness: dict | None = None

    def __call__(self, ok: bool, **witness) -> bool:
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = {k: _jsonable(v) for k, v in witness.items()}
        return ok

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def __enter__(self) -> "LawCheck":
        return self

    def __exit__(self, *exc) -> bool:
        if exc[0] is None:
            self.report.record(self.law, self.witness is None, self.checked, self.witness)
        return False


def all_passed(reports: Iterable[Report]) -> bool:
    return all(r.passed for r in reports)
