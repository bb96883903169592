"""Serialization of candidates and census results to JSON lines.

A record carries the candidate itself, analysis flags, and enough
provenance to reproduce it: tool name, version, and a run id derived by
hashing the record content, so identical inputs serialize identically.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .census import canonical_form
from .groups import AbelianGroup
from .hyperfields import HyperfieldCandidate

TOOL_NAME = "hyperblocks"
TOOL_VERSION = "0.1.0"


def candidate_to_dict(h: HyperfieldCandidate) -> dict:
    return {
        "group": {"factors": list(h.group.factors)},
        "minus_one": h.minus_one,
        "pi": h.pi_bits(),
        "status": h.status,
    }


def candidate_from_dict(d: dict) -> HyperfieldCandidate:
    group = AbelianGroup(d["group"]["factors"])
    return HyperfieldCandidate.from_pi_bits(
        group, d["minus_one"], d["pi"], status=d.get("status", "unverified")
    )


def canonical_json(d: dict) -> str:
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class CatalogRecord:
    candidate: HyperfieldCandidate
    flags: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "candidate": candidate_to_dict(self.candidate),
            "flags": dict(self.flags),
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CatalogRecord:
        return cls(
            candidate_from_dict(d["candidate"]),
            dict(d.get("flags", {})),
            dict(d.get("provenance", {})),
        )


def make_record(h: HyperfieldCandidate, **flags) -> CatalogRecord:
    """Record with provenance; the run id hashes candidate and flags, so
    re-running the same analysis reproduces the same id."""
    flags = {k: v for k, v in flags.items() if v is not None}
    payload = canonical_json({"candidate": candidate_to_dict(h), "flags": flags})
    run_id = hashlib.sha256(payload.encode()).hexdigest()[:16]
    return CatalogRecord(
        h, flags, {"tool": TOOL_NAME, "version": TOOL_VERSION, "run_id": run_id}
    )


def append_records(path: str | Path, records) -> int:
    path = Path(path)
    n = 0
    with path.open("a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(canonical_json(rec.to_dict()) + "\n")
            n += 1
    return n


def load_records(path: str | Path) -> list[CatalogRecord]:
    out = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(CatalogRecord.from_dict(json.loads(line)))
    return out


def dedup_records(records) -> list[CatalogRecord]:
    """Keep the first record per isomorphism class (group, -1, canonical pi)."""
    seen = set()
    out = []
    for rec in records:
        h = rec.candidate
        key = (h.group.factors, h.minus_one, canonical_form(h))
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out
