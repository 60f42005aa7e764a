"""Check results shared by every module and the command line."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class Report:
    check: str
    status: str
    witness: str = ""
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def record(self, timing: bool = False) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("elapsed")
        return out

    def line(self, timing: bool = False) -> str:
        text = f"{self.status.upper():5} {self.check}"
        if self.witness:
            text += f"  [{self.witness}]"
        if timing:
            text += f"  ({self.elapsed:.3f}s)"
        return text


def passed(check: str) -> Report:
    return Report(check, PASS)


def failed(check: str, witness: str) -> Report:
    if not witness:
        raise ValueError("a failing report needs a witness")
    return Report(check, FAIL, witness)


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def combine(check: str, reports) -> Report:
    """Collapse several reports into one, keeping the first failure's witness."""
    for r in reports:
        if not r.passed:
            return Report(check, r.status, f"{r.check}: {r.witness}")
    return passed(check)


@contextmanager
def timed(report_list: list):
    """Attach wall time to every report appended inside the block."""
    start = time.perf_counter()
    first = len(report_list)
    yield
    elapsed = time.perf_counter() - start
    for r in report_list[first:]:
        r.elapsed = elapsed


def format_table(reports, timing: bool = False) -> str:
    return "\n".join(r.line(timing) for r in reports)


def format_records(reports, timing: bool = False) -> str:
    return "\n".join(json.dumps(r.record(timing), sort_keys=True) for r in reports)
