"""
features/engine/rules.py
-------------------------
The congruence calculus: new claims derived from a certified
congruence on MZ + β.

- rule_gap            vanishing on (M/p)(Z∖pZ) + M_p β', M_p β' ≡ β (mod M_p^#)
- rule_shrink         MZ + β  ->  M'Z + β, M' = gcd(M, M_sf N β)
- rule_shrink_sf8     the same with M_sf = gcd(8, M) ∏_{p odd} p
- rule_remove_prime   MZ + β  ->  M_p^# Z + β
- square_class_closure  MZ + β u² for every unit u mod M

Every rule takes the level N of the form, checks its hypotheses, and
optionally re-checks the derived claim against coefficient data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from core.config import RULE_GAP, RULE_REMOVE_PRIME, RULE_SHRINK, RULE_SHRINK_SF8, RULE_SQUARE_CLASS
from core.errors import DomainError, RuleHypothesisError
from core.log import get_logger
from features.algebra.numbers import crt, factorint, is_prime, p_part, radical
from features.engine.controller import reverify
from features.engine.model import Claim, CongruenceCertificate, DerivedByRule, GapProgression, Progression
from features.qseries.model import QExpansion

log = get_logger("Rules")


def _progression(cert: CongruenceCertificate) -> Progression:
    if not isinstance(cert.claim, Progression):
        raise RuleHypothesisError("rule needs a congruence on a full progression", claim=cert.claim.label())
    return cert.claim


def _derive(cert: CongruenceCertificate, rule: str, claim: Claim, data: Optional[QExpansion], bound: Optional[int]) -> CongruenceCertificate:
    derived = CongruenceCertificate(cert.form, cert.ell, claim, DerivedByRule(rule, cert))
    log.debug("%s: %s -> %s", rule, cert.claim.label(), claim.label())
    return reverify(derived, data, bound)


def _unramified(p: int, ell: int, level: int) -> None:
    if not is_prime(p):
        raise RuleHypothesisError("rule needs a prime", p=p)
    if (ell * level) % p == 0:
        raise RuleHypothesisError("p divides ℓN", p=p, ell=ell, level=level)


# ------------------------------------------------------------
# Rules on a single certificate
# ------------------------------------------------------------
def rule_gap(
    cert: CongruenceCertificate,
    p: int,
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> CongruenceCertificate:
    claim = _progression(cert)
    M, beta = claim.modulus, claim.residue
    if M % p:
        raise RuleHypothesisError("p does not divide the modulus", p=p, modulus=M)
    _unramified(p, cert.ell, level)
    if cert.ell == 2:
        raise RuleHypothesisError("gap rule needs an odd ℓ", ell=cert.ell)
    Mp, rest = p_part(M, p)
    beta_prime = beta * pow(Mp, -1, rest) % rest if rest > 1 else 0
    return _derive(cert, RULE_GAP, GapProgression(M // p, Mp * beta_prime, p), data, bound)


def rule_shrink(
    cert: CongruenceCertificate,
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> CongruenceCertificate:
    claim = _progression(cert)
    if cert.ell == 2:
        raise RuleHypothesisError("shrink rule needs an odd ℓ", ell=cert.ell)
    M = claim.modulus
    Mp = math.gcd(M, radical(M) * level * claim.residue)
    return _derive(cert, RULE_SHRINK, Progression(Mp, claim.residue), data, bound)


def rule_shrink_sf8(
    cert: CongruenceCertificate,
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> CongruenceCertificate:
    claim = _progression(cert)
    M = claim.modulus
    if math.gcd(M, level) != 1:
        raise RuleHypothesisError("modulus and level must be coprime", modulus=M, level=level)
    sf = math.gcd(8, M)
    for q in factorint(M):
        if q != 2:
            sf *= q
    Mp = math.gcd(M, sf * level * claim.residue)
    return _derive(cert, RULE_SHRINK_SF8, Progression(Mp, claim.residue), data, bound)


def rule_remove_prime(
    cert: CongruenceCertificate,
    p: int,
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> CongruenceCertificate:
    claim = _progression(cert)
    M, beta = claim.modulus, claim.residue
    if M % p:
        raise RuleHypothesisError("p does not divide the modulus", p=p, modulus=M)
    _unramified(p, cert.ell, level)
    Mp, rest = p_part(M, p)
    if beta % Mp and not (M % (p * p) and cert.ell != 2):
        raise RuleHypothesisError("needs M_p | β, or p² ∤ M with ℓ odd", p=p, modulus=M, residue=beta)
    return _derive(cert, RULE_REMOVE_PRIME, Progression(rest, beta), data, bound)


def square_class_closure(
    cert: CongruenceCertificate,
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> list[CongruenceCertificate]:
    """All progressions MZ + βu² (u a unit mod M); the level condition is met by CRT."""
    claim = _progression(cert)
    M, beta = claim.modulus, claim.residue
    if math.gcd(M, level) != 1:
        raise RuleHypothesisError("modulus and level must be coprime", modulus=M, level=level)
    residues = sorted({beta * u * u % M for u in range(M) if math.gcd(u, M) == 1} or {beta % M})
    return [_derive(cert, RULE_SQUARE_CLASS, Progression(M, b), data, bound) for b in residues]


def collect_gap_families(
    certs: Iterable[CongruenceCertificate],
    level: int = 1,
    data: Optional[QExpansion] = None,
    bound: Optional[int] = None,
) -> list[CongruenceCertificate]:
    """rule_gap at every admissible prime of every progression claim; one certificate per distinct claim."""
    seen: dict[tuple, CongruenceCertificate] = {}
    for cert in certs:
        if not isinstance(cert.claim, Progression) or cert.ell == 2:
            continue
        for p in factorint(cert.claim.modulus):
            if (cert.ell * level) % p == 0:
                continue
            derived = rule_gap(cert, p, level, data, bound)
            key = (derived.form, derived.ell, derived.claim)
            seen.setdefault(key, derived)
    return list(seen.values())


# ------------------------------------------------------------
# Prime-by-prime factorization of a claim
# ------------------------------------------------------------
GAP_ROUTE = "gap"
REMOVE_ROUTE = "remove_prime"
ELL_ROUTE = "u_ell"
LEVEL_ROUTE = "level"


@dataclass(frozen=True)
class ClaimComponent:
    prime: int
    modulus: int             # M_p
    residue: int             # β mod M_p
    complement: int          # M_p^#
    route: str

    def progression(self) -> Progression:
        return Progression(self.modulus, self.residue)


@dataclass(frozen=True)
class ClaimTree:
    claim: Claim
    components: tuple[ClaimComponent, ...]
    gap_prime: Optional[int] = None


def _route(p: int, Mp: int, M: int, beta: int, ell: int, level: int) -> str:
    if p == ell:
        return ELL_ROUTE
    if level % p == 0:
        return LEVEL_ROUTE
    if beta % Mp == 0 or (M % (p * p) and ell != 2):
        return REMOVE_ROUTE
    return GAP_ROUTE


def factor_claim(cert: CongruenceCertificate, level: int = 1) -> ClaimTree:
    """
    Split the claim into its prime-power components (M_p, β mod M_p).
    A gap claim {S n + o : p ∤ n} is factored through its excluded
    progression S p Z + o.
    """
    claim = cert.claim
    if isinstance(claim, GapProgression):
        M, beta, gap = claim.stride * claim.gap_prime, claim.offset, claim.gap_prime
    else:
        M, beta, gap = claim.modulus, claim.residue, None
    comps = []
    for p, e in factorint(M).items():
        Mp = p**e
        comps.append(ClaimComponent(p, Mp, beta % Mp, M // Mp, _route(p, Mp, M, beta, cert.ell, level)))
    return ClaimTree(claim, tuple(comps), gap)


def recombine(tree: ClaimTree) -> Claim:
    """Inverse of factor_claim."""
    moduli = [c.modulus for c in tree.components]
    M = math.prod(moduli)
    beta = crt([c.residue for c in tree.components], moduli) if moduli else 0
    if tree.gap_prime is None:
        return Progression(M, beta)
    if M % tree.gap_prime:
        raise DomainError("gap prime does not divide the recombined modulus", modulus=M, gap_prime=tree.gap_prime)
    return GapProgression(M // tree.gap_prime, beta, tree.gap_prime)
