"""
ui/render.py
------------
Output formatting for the command line.

Two formats:
- records: one compact JSON object per line (certificates use the
  engine record layout)
- table:   aligned plain-text columns for people
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Sequence

from features.criterion.model import TableCell
from features.engine import records
from features.engine.model import CongruenceCertificate, DerivedByRule, VerifiedToBound


def emit_record(record: dict, stream: IO[str]) -> None:
    stream.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")


def emit_records(items: Iterable[dict], stream: IO[str]) -> int:
    count = 0
    for rec in items:
        emit_record(rec, stream)
        count += 1
    return count


def _columns(header: Sequence[str], rows: Sequence[Sequence[str]], stream: IO[str]) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    stream.write(line.rstrip() + "\n")
    stream.write("  ".join("-" * w for w in widths) + "\n")
    for row in rows:
        stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _evidence_label(cert: CongruenceCertificate) -> str:
    ev = cert.evidence
    if isinstance(ev, VerifiedToBound):
        return f"scan n≤{ev.bound} ({ev.support})"
    if isinstance(ev, DerivedByRule):
        state = {None: "unchecked", True: f"ok n≤{ev.bound}", False: "FAILS"}[ev.reverified]
        return f"rule {ev.rule} [{state}]"
    return "hecke"

# ------------------------------------------------------------
# Certificates
# ------------------------------------------------------------
def certificates(certs: Sequence[CongruenceCertificate], fmt: str, stream: IO[str]) -> None:
    if fmt == "records":
        records.write_ndjson(certs, stream)
        return
    rows = [
        [cert.form, str(cert.ell), cert.claim.label(), _evidence_label(cert), " ".join(str(w.index) for w in cert.witnesses)]
        for cert in certs
    ]
    _columns(["form", "ℓ", "claim", "evidence", "witnesses"], rows, stream)

# ------------------------------------------------------------
# The maximal-congruence table
# ------------------------------------------------------------
def table_cells(cells: Sequence[TableCell], fmt: str, stream: IO[str]) -> None:
    """ℓ rows against p columns, each cell listing its first exponents."""
    if fmt == "records":
        emit_records((c.to_record() for c in cells), stream)
        return
    ells = sorted({c.ell for c in cells})
    primes = sorted({c.p for c in cells})
    by_key = {(c.ell, c.p): c for c in cells}
    rows = []
    for ell in ells:
        row = [str(ell)]
        for p in primes:
            cell = by_key.get((ell, p))
            text = cell.label() if cell else ""
            if cell and cell.impossible:
                text += " !" + ",".join(str(m) for m in cell.impossible)
            row.append(text)
        rows.append(row)
    _columns(["ℓ \\ p"] + [str(p) for p in primes], rows, stream)

# ------------------------------------------------------------
# Generic key/value rows
# ------------------------------------------------------------
def rows(items: Sequence[dict], fmt: str, stream: IO[str]) -> None:
    if fmt == "records":
        emit_records(items, stream)
        return
    if not items:
        return
    header = list(items[0].keys())
    body = [[_cell(item.get(h)) for h in header] for item in items]
    _columns(header, body, stream)


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return str(value)
