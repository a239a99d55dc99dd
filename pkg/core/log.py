"""
core/log.py
------------
Logging setup for CongruenceLab.

All modules log through `get_logger(name)`; records are written to stderr
as `[Name] message`, so stdout stays reserved for command output.
"""

import logging
import sys

_FORMAT = "[%(component)s] %(message)s"
_ROOT_NAME = "congruence_lab"


class _ComponentFilter(logging.Filter):
    """Expose the last dotted part of the logger name as `component`."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.component = record.name.rsplit(".", 1)[-1]
        return True


def configure(level: str = "WARNING") -> None:
    """Install the stderr handler once and set the level."""
    root = logging.getLogger(_ROOT_NAME)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler.addFilter(_ComponentFilter())
        root.addHandler(handler)
        root.propagate = False
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))


def get_logger(name: str) -> logging.Logger:
    """Logger for a component, e.g. get_logger("Scan") -> [Scan] ..."""
    return logging.getLogger(f"{_ROOT_NAME}.{name}")
