"""
features/qseries/cache.py
--------------------------
JSON cache for generated series.

One file per series, keys in a fixed order so the same series always
produces the same bytes:
  {descriptor, domain, denom, valuation, precision, coefficients}
Exact coefficients are written as decimal strings.
"""

from __future__ import annotations

import json
import os
from typing import Optional

import numpy as np

from core.errors import DomainError
from core.log import get_logger
from core.settings import load_settings
from features.qseries.model import FormDescriptor, QExpansion

log = get_logger("Cache")


def to_record(f: QExpansion) -> dict:
    if f.modulus is None:
        coefficients = [str(int(c)) for c in f.coeffs]
    else:
        coefficients = [int(c) for c in f.coeffs]
    return {
        "descriptor": f.descriptor.to_record() if f.descriptor else None,
        "domain": "int" if f.modulus is None else f"mod {f.modulus}",
        "denom": f.denom,
        "valuation": f.valuation,
        "precision": f.precision,
        "coefficients": coefficients,
    }


def from_record(rec: dict) -> QExpansion:
    domain = rec.get("domain", "int")
    if domain == "int":
        modulus = None
        arr = np.array([int(c) for c in rec["coefficients"]], dtype=object)
    elif domain.startswith("mod "):
        modulus = int(domain[4:])
        arr = np.array([int(c) for c in rec["coefficients"]], dtype=np.int64)
    else:
        raise DomainError("unknown series domain", domain=domain)
    descriptor = FormDescriptor.from_record(rec["descriptor"]) if rec.get("descriptor") else None
    return QExpansion(int(rec["denom"]), int(rec["valuation"]), arr, int(rec["precision"]), modulus, descriptor)


def save_series(f: QExpansion, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(to_record(f), separators=(",", ":")))
        fh.write("\n")
    log.info("wrote %s (%s, precision %d)", path, f.domain, f.precision)
    return path


def load_series(path: str) -> QExpansion:
    with open(path, "r", encoding="utf-8") as fh:
        return from_record(json.load(fh))


def cache_path(name: str, cache_dir: Optional[str] = None) -> str:
    """Location of a named series under settings.cache_dir."""
    base = cache_dir or load_settings().cache_dir
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)
    return os.path.join(base, f"{safe}.json")
