"""
features/engine/records.py
---------------------------
Certificate records: one JSON object per line, keys in the order
{form, ell, claim, evidence, witnesses}. Derived evidence embeds the
full parent record.
"""

from __future__ import annotations

import json
from typing import IO, Iterable

from core.errors import DomainError
from features.engine.model import (
    CertifiedHecke, CongruenceCertificate, DerivedByRule, Evidence, VerifiedToBound, Witness, claim_from_record,
)


def _evidence_record(ev: Evidence) -> dict:
    if isinstance(ev, DerivedByRule):
        return {
            "kind": "derived",
            "rule": ev.rule,
            "parent": to_record(ev.parent),
            "reverified": ev.reverified,
            "bound": ev.bound,
        }
    return ev.to_record()


def _evidence_from(rec: dict) -> Evidence:
    kind = rec["kind"]
    if kind == "verified":
        grid = rec.get("grid") or {}
        return VerifiedToBound(int(rec["bound"]), int(rec["support"]), int(grid.get("denom", 1)), int(grid.get("offset", 0)))
    if kind == "hecke":
        return CertifiedHecke(tuple(rec["analyses"]))
    if kind == "derived":
        return DerivedByRule(rec["rule"], from_record(rec["parent"]), rec.get("reverified"), rec.get("bound"))
    raise DomainError("unknown evidence kind", kind=kind)


def to_record(cert: CongruenceCertificate) -> dict:
    return {
        "form": cert.form,
        "ell": cert.ell,
        "claim": cert.claim.to_record(),
        "evidence": _evidence_record(cert.evidence),
        "witnesses": [{"claim": w.progression.to_record(), "index": w.index} for w in cert.witnesses],
    }


def from_record(rec: dict) -> CongruenceCertificate:
    return CongruenceCertificate(
        form=rec["form"],
        ell=int(rec["ell"]),
        claim=claim_from_record(rec["claim"]),
        evidence=_evidence_from(rec["evidence"]),
        witnesses=tuple(Witness(claim_from_record(w["claim"]), int(w["index"])) for w in rec.get("witnesses", [])),
    )


def dumps(cert: CongruenceCertificate) -> str:
    return json.dumps(to_record(cert), ensure_ascii=False, separators=(",", ":"))


def loads(line: str) -> CongruenceCertificate:
    return from_record(json.loads(line))


def write_ndjson(certs: Iterable[CongruenceCertificate], stream: IO[str]) -> int:
    count = 0
    for cert in certs:
        stream.write(dumps(cert) + "\n")
        count += 1
    return count


def read_ndjson(path: str) -> list[CongruenceCertificate]:
    with open(path, "r", encoding="utf-8") as fh:
        return [loads(line) for line in fh if line.strip()]
