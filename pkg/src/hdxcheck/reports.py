"""Check outcomes, report records, and deterministic serialization."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

VERIFIED = "verified"
VIOLATED = "violated"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
INFEASIBLE = "infeasible"

SCHEMA_VERSION = 1


@dataclass
class CheckOutcome:
    """Three-valued check result plus the quantities that produced it."""

    status: str
    lhs: Any = None
    rhs: Any = None
    margin: Optional[float] = None
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def note(self, **kwargs) -> "CheckOutcome":
        self.detail.update(kwargs)
        return self


@dataclass
class CheckRecord:
    """One row of a verification report."""

    name: str
    anchor: str
    status: str
    lhs: Any = None
    rhs: Any = None
    margin: Optional[float] = None
    witness: Any = None
    detail: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @classmethod
    def from_outcome(cls, name: str, anchor: str, outcome: CheckOutcome,
                     elapsed: float = 0.0, counts: dict | None = None):
        return cls(name, anchor, outcome.status, outcome.lhs, outcome.rhs,
                   outcome.margin, outcome.witness, dict(outcome.detail),
                   counts or {}, elapsed)


def fmt_value(value: Any) -> Any:
    """Serialize rationals as 'p/q', floats to 12 significant digits."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.12g}"
    if isinstance(value, tuple):
        return [fmt_value(v) for v in value]
    if isinstance(value, list):
        return [fmt_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): fmt_value(v) for k, v in value.items()}
    return str(value)


def record_to_dict(rec: CheckRecord) -> dict:
    return {
        "name": rec.name,
        "anchor": rec.anchor,
        "status": rec.status,
        "lhs": fmt_value(rec.lhs),
        "rhs": fmt_value(rec.rhs),
        "margin": fmt_value(rec.margin),
        "witness": fmt_value(rec.witness),
        "detail": fmt_value(rec.detail),
        "counts": fmt_value(rec.counts),
    }


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def determinism_hash(report: dict) -> str:
    """Hash of the report with the timing section stripped."""
    stripped = {k: v for k, v in report.items()
                if k not in ("timings", "determinism_hash")}
    digest = hashlib.sha256(canonical_json(stripped).encode()).hexdigest()
    return f"sha256:{digest}"


def records_to_csv(records: list[CheckRecord]) -> str:
    """One check per row; nested details are flattened to JSON strings."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "anchor", "status", "lhs", "rhs", "margin",
                     "witness", "detail", "counts"])
    for rec in records:
        d = record_to_dict(rec)
        writer.writerow([
            d["name"], d["anchor"], d["status"],
            d["lhs"], d["rhs"], d["margin"],
            json.dumps(d["witness"]) if d["witness"] is not None else "",
            json.dumps(d["detail"], sort_keys=True),
            json.dumps(d["counts"], sort_keys=True),
        ])
    return buf.getvalue()
