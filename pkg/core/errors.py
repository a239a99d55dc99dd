"""
core/errors.py
---------------
Error hierarchy for CongruenceLab.

Every failure the lab reports on purpose derives from LabError, which
carries a stable machine-readable code, the CLI exit code it maps to,
and optional details rendered into the diagnostic record.
"""

from __future__ import annotations

from typing import Any

from core.config import EXIT_PRECISION, EXIT_USAGE


class LabError(Exception):
    code = "lab_error"
    exit_code = EXIT_USAGE

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details

    def to_record(self) -> dict:
        """Diagnostic record: code, message, then details in sorted key order."""
        record: dict = {"error": self.code, "message": str(self)}
        for key in sorted(self.details):
            record[key] = _plain(self.details[key])
        return record


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


# ------------------------------------------------------------
# Arithmetic
# ------------------------------------------------------------
class DomainError(LabError):
    code = "domain"

class NotAUnitError(LabError):
    code = "not_a_unit"

class RamifiedModulusError(LabError):
    code = "ramified_modulus"

class DomainMismatchError(LabError):
    code = "domain_mismatch"

class PrecisionError(LabError):
    code = "insufficient_precision"
    exit_code = EXIT_PRECISION

# ------------------------------------------------------------
# Linear algebra / forms
# ------------------------------------------------------------
class DegenerateBasisError(LabError):
    code = "degenerate_basis"

class NotInSpanError(LabError):
    code = "not_in_span"

class SemisimplicityError(LabError):
    code = "semisimplicity_failure"

class WitnessError(LabError):
    code = "no_witness"

class NoPreimageError(LabError):
    code = "no_preimage"

class ZeroFormError(LabError):
    code = "zero_form"

class RamifiedHeckeDatumError(LabError):
    code = "ramified_hecke_datum"

# ------------------------------------------------------------
# Engine / representations
# ------------------------------------------------------------
class RuleHypothesisError(LabError):
    code = "rule_hypothesis"

class ContextMismatchError(LabError):
    code = "context_mismatch"

class NonUnimodularError(LabError):
    code = "non_unimodular"

class UsageError(LabError):
    code = "usage"
