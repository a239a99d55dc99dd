"""
core/db.py
----------
SQLite bridge for the certificate store.

The database file defaults to `congruence_lab.db` next to the package;
the CLI repoints it at `LabSettings.certificate_db` before any access.
Only features/engine/store.py issues SQL against it.

Schema:
- certificates: one row per distinct certificate record (append-only),
  claim columns broken out and indexed by (form, ell)
"""

import os
import sqlite3
from typing import Iterable

_DB_PATH = os.path.normpath(
    os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "congruence_lab.db")
)

_SCHEMA = (
    """
    CREATE TABLE IF NOT EXISTS certificates (
        id INTEGER PRIMARY KEY AUTOINCREMENT,
        form TEXT NOT NULL,
        ell INTEGER NOT NULL,
        kind TEXT NOT NULL CHECK (kind IN ('progression', 'gap')),
        modulus INTEGER NOT NULL,
        residue INTEGER NOT NULL,
        gap_prime INTEGER,
        evidence TEXT NOT NULL,
        record TEXT NOT NULL UNIQUE,
        created_at TIMESTAMP NOT NULL DEFAULT (datetime('now'))
    )
    """,
    "CREATE INDEX IF NOT EXISTS idx_certificates_form_ell ON certificates (form, ell)",
)


def set_db_path(path: str) -> None:
    global _DB_PATH
    _DB_PATH = os.path.normpath(path)

# ------------------------------------------------------------
# Connections / schema
# ------------------------------------------------------------
def get_connection() -> sqlite3.Connection:
    return sqlite3.connect(_DB_PATH, check_same_thread=False)

def init_db() -> None:
    """Create the certificates table and its index when missing."""
    conn = get_connection()
    try:
        for statement in _SCHEMA:
            conn.execute(statement)
        conn.commit()
    finally:
        conn.close()

# ------------------------------------------------------------
# Statements
# ------------------------------------------------------------
def execute(sql: str, params: Iterable = ()) -> int:
    """Run one write statement; the new row id, or 0 when no row was written."""
    conn = get_connection()
    try:
        cur = conn.execute(sql, tuple(params))
        conn.commit()
        return cur.lastrowid if cur.rowcount > 0 and cur.lastrowid else 0
    finally:
        conn.close()

def query_all(sql: str, params: Iterable = ()) -> list[tuple]:
    conn = get_connection()
    try:
        return conn.execute(sql, tuple(params)).fetchall()
    finally:
        conn.close()
