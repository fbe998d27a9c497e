"""Machine-readable check records and run reports."""
from __future__ import annotations

import time
from dataclasses import dataclass, field, asdict

PASS = "pass"
FAIL = "fail"
APPROX = "approx"  # limit-surrogate checks: value reported, no exact target


@dataclass
class CheckRecord:
    check_id: str
    identity: str          # plain-language statement of what is certified
    status: str
    residual: float | None
    tolerance: float | None
    elapsed: float
    detail: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    config: dict
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "summary": {
                "total": len(self.checks),
                "pass": sum(c.status == PASS for c in self.checks),
                "fail": len(self.failures),
                "approx": sum(c.status == APPROX for c in self.checks),
            },
            "checks": [asdict(c) for c in self.checks],
        }


class CheckTimer:
    """Collects timed check records: with CheckTimer(report) as t: t.check(...)"""

    def __init__(self, report: VerificationReport):
        self.report = report

    def check(self, check_id: str, identity: str, residual: float,
              tolerance: float, detail: dict | None = None) -> CheckRecord:
        rec = CheckRecord(check_id, identity,
                          PASS if residual <= tolerance else FAIL,
                          float(residual), float(tolerance),
                          0.0, detail or {})
        self.report.checks.append(rec)
        return rec

    def flag(self, check_id: str, identity: str, ok: bool,
             detail: dict | None = None) -> CheckRecord:
        rec = CheckRecord(check_id, identity, PASS if ok else FAIL,
                          None, None, 0.0, detail or {})
        self.report.checks.append(rec)
        return rec

    def approx(self, check_id: str, identity: str, value: float,
               detail: dict | None = None) -> CheckRecord:
        rec = CheckRecord(check_id, identity, APPROX, float(value), None,
                          0.0, detail or {})
        self.report.checks.append(rec)
        return rec


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0
