"""Structured pass/fail records shared by every check."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
AMBIGUOUS = "precision-ambiguous"


@dataclass
class VerificationReport:
    check_id: str
    inputs: dict[str, Any]
    lhs: Any = None
    rhs: Any = None
    agreement: float | int | None = None  # bits (complex) or p-adic digits
    requested: float | int | None = None
    verdict: str = FAIL
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = asdict(self)
        d["schema"] = SCHEMA_VERSION
        if not timing:
            d.pop("wall_time")
        return _jsonable(d)

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if isinstance(obj, float):
        return obj
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


@contextmanager
def timed(report_holder: list):
    """Fill ``wall_time`` of the report appended to ``report_holder``."""
    t0 = time.perf_counter()
    yield
    if report_holder:
        report_holder[-1].wall_time = time.perf_counter() - t0


def verdict_from_bits(agree_bits: float, required_bits: float) -> str:
    return PASS if agree_bits >= required_bits else FAIL
