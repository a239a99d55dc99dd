"""
core/settings.py
----------------
Persistent lab settings storage (JSON-based) for CongruenceLab.

Defines the LabSettings dataclass used to keep user preferences
such as the series cache directory, the certificate database,
scan thresholds and the logging level.

Provides simple load/save helpers to serialize/deserialize the settings
to `settings.json` located one level above the /core folder. The
CONGRUENCE_LAB_CACHE environment variable overrides the cache directory.
"""

from __future__ import annotations
from dataclasses import dataclass, asdict
import json
import os
from typing import Optional

from core.config import CACHE_ENV_VAR, DEFAULT_SUPPORT_MIN, DEFAULT_WEIGHT_CAP

# ------------------------------------------------------------
# Paths (one level above /core)
# ------------------------------------------------------------
_ROOT = os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(__file__)), ".."))
_SETTINGS_PATH = os.path.join(_ROOT, "settings.json")

# ------------------------------------------------------------
# Dataclass: LabSettings
# ------------------------------------------------------------
@dataclass
class LabSettings:
    cache_dir: str = os.path.join(_ROOT, "cache")
    certificate_db: str = os.path.join(_ROOT, "congruence_lab.db")
    support_min: int = DEFAULT_SUPPORT_MIN
    weight_cap: int = DEFAULT_WEIGHT_CAP
    log_level: str = "WARNING"     # DEBUG | INFO | WARNING | ERROR

    def is_valid(self) -> bool:
        """
        Return True if all fields hold usable values.
        """
        return (
            bool(self.cache_dir)
            and bool(self.certificate_db)
            and isinstance(self.support_min, int) and self.support_min >= 1
            and isinstance(self.weight_cap, int) and self.weight_cap >= 0
            and self.log_level in ("DEBUG", "INFO", "WARNING", "ERROR")
        )

# ------------------------------------------------------------
# Internal helpers
# ------------------------------------------------------------
def _ensure_dir(path: str) -> None:
    """Ensure that the parent directory exists."""
    os.makedirs(os.path.dirname(path), exist_ok=True)

def _apply_env(s: LabSettings) -> LabSettings:
    override: Optional[str] = os.environ.get(CACHE_ENV_VAR)
    if override:
        s.cache_dir = override
    return s

# ------------------------------------------------------------
# Public API: load / save
# ------------------------------------------------------------
def load_settings(path: Optional[str] = None) -> LabSettings:
    """
    Load lab settings from JSON file.
    Returns default settings if the file is missing or invalid.
    """
    try:
        with open(path or _SETTINGS_PATH, "r", encoding="utf-8") as f:
            data = json.load(f)
        s = LabSettings(**data)
        if not s.is_valid():
            s = LabSettings()
    except Exception:
        s = LabSettings()
    return _apply_env(s)

def save_settings(s: LabSettings, path: Optional[str] = None) -> None:
    """
    Save current settings to JSON (UTF-8, pretty formatted).
    """
    target = path or _SETTINGS_PATH
    _ensure_dir(target)
    with open(target, "w", encoding="utf-8") as f:
        json.dump(asdict(s), f, ensure_ascii=False, indent=2)
