"""
features/engine/store.py
-------------------------
Append-only certificate storage in SQLite via core/db.py.

Each certificate is kept as its JSON record (unique), with the claim
columns broken out for filtering. Storing the same certificate twice
is a no-op.
"""

from typing import Iterable, List, Optional

from core import db
from core.log import get_logger
from features.engine import records
from features.engine.model import CongruenceCertificate, GapProgression

log = get_logger("Store")

# ------------------------------------------------------------
# Initialization
# ------------------------------------------------------------
def init_storage() -> None:
    """Ensure the certificates table exists."""
    db.init_db()

# ------------------------------------------------------------
# Insert / query
# ------------------------------------------------------------
def add_certificate(cert: CongruenceCertificate) -> int:
    """Store a certificate; returns its row id, or 0 when it was already stored."""
    claim = cert.claim
    if isinstance(claim, GapProgression):
        kind, modulus, residue, gap = "gap", claim.stride, claim.offset, claim.gap_prime
    else:
        kind, modulus, residue, gap = "progression", claim.modulus, claim.residue, None
    rowid = db.execute(
        "INSERT OR IGNORE INTO certificates (form, ell, kind, modulus, residue, gap_prime, evidence, record) "
        "VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
        (cert.form, cert.ell, kind, modulus, residue, gap, records.to_record(cert)["evidence"]["kind"], records.dumps(cert)),
    )
    if not rowid:
        log.debug("already stored: %s mod %d on %s", cert.form, cert.ell, claim.label())
    return rowid

def add_certificates(certs: Iterable[CongruenceCertificate]) -> int:
    """Store several certificates; returns how many were new."""
    return sum(1 for cert in certs if add_certificate(cert))

def list_certificates(form: Optional[str] = None, ell: Optional[int] = None) -> List[CongruenceCertificate]:
    """Stored certificates in insertion order, optionally filtered by form and ℓ."""
    sql = "SELECT record FROM certificates"
    clauses, params = [], []
    if form is not None:
        clauses.append("form = ?")
        params.append(form)
    if ell is not None:
        clauses.append("ell = ?")
        params.append(ell)
    if clauses:
        sql += " WHERE " + " AND ".join(clauses)
    sql += " ORDER BY id ASC"
    return [records.loads(row[0]) for row in db.query_all(sql, params)]

def count_certificates() -> int:
    rows = db.query_all("SELECT COUNT(*) FROM certificates")
    return int(rows[0][0]) if rows else 0
