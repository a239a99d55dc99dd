# tests/test_engine_rules.py
import pytest

from core.config import RULE_GAP, RULE_REMOVE_PRIME, RULE_SQUARE_CLASS
from core.errors import RuleHypothesisError
from features.engine import rules
from features.engine.model import (
    CongruenceCertificate, DerivedByRule, GapProgression, Progression, VerifiedToBound,
)
from features.forms import controller as fc

def _cert(M, beta, ell=5, form="f"):
    return CongruenceCertificate(form, ell, Progression(M, beta), VerifiedToBound(1000, 40))

# ------------------------------------------------------------
# Gap rule
# ------------------------------------------------------------
def test_gap_rule_on_a_prime_modulus():
    derived = rules.rule_gap(_cert(7, 1), 7)
    assert derived.claim == GapProgression(1, 0, 7)        # every n prime to 7
    assert isinstance(derived.evidence, DerivedByRule)
    assert derived.evidence.rule == RULE_GAP
    assert derived.evidence.parent == _cert(7, 1)
    assert derived.evidence.reverified is None

def test_gap_rule_with_a_cofactor():
    derived = rules.rule_gap(_cert(12, 8), 2)
    # M_2 = 4, β' = 8·4^{-1} mod 3 = 2, offset 4·2
    assert derived.claim == GapProgression(6, 8, 2)

def test_gap_rule_hypotheses():
    with pytest.raises(RuleHypothesisError):
        rules.rule_gap(_cert(12, 8), 5)                    # 5 ∤ 12
    with pytest.raises(RuleHypothesisError):
        rules.rule_gap(_cert(10, 3), 5)                    # p = ℓ
    with pytest.raises(RuleHypothesisError):
        rules.rule_gap(_cert(12, 8), 3, level=3)
    gap = CongruenceCertificate("f", 5, GapProgression(3, 0, 3), VerifiedToBound(10, 1))
    with pytest.raises(RuleHypothesisError):
        rules.rule_gap(gap, 3)

def test_gap_rule_rechecks_against_data():
    d7 = fc.delta(400, 7)
    parent = _cert(9, 3, ell=7, form="delta")
    derived = rules.rule_gap(parent, 3, data=d7)
    assert derived.claim == GapProgression(3, 0, 3)
    assert derived.evidence.reverified is True
    assert derived.evidence.bound == 399

# ------------------------------------------------------------
# Shrinking and prime removal
# ------------------------------------------------------------
def test_shrink_rule():
    assert rules.rule_shrink(_cert(25, 1)).claim == Progression(5, 1)
    assert rules.rule_shrink(_cert(8, 4)).claim == Progression(8, 4)
    assert rules.rule_shrink(_cert(9, 3)).claim == Progression(9, 3)
    with pytest.raises(RuleHypothesisError):
        rules.rule_shrink(_cert(25, 1, ell=2))

def test_shrink_sf8_rule():
    assert rules.rule_shrink_sf8(_cert(16, 2)).claim == Progression(16, 2)
    assert rules.rule_shrink_sf8(_cert(27, 1)).claim == Progression(3, 1)
    assert rules.rule_shrink_sf8(_cert(32, 1)).claim == Progression(8, 1)
    with pytest.raises(RuleHypothesisError):
        rules.rule_shrink_sf8(_cert(27, 1), level=3)

def test_remove_prime_rule():
    derived = rules.rule_remove_prime(_cert(12, 4), 2)
    assert derived.claim == Progression(3, 1)
    assert derived.evidence.rule == RULE_REMOVE_PRIME
    assert rules.rule_remove_prime(_cert(6, 1), 2).claim == Progression(3, 1)
    with pytest.raises(RuleHypothesisError):
        rules.rule_remove_prime(_cert(12, 2), 2)           # 4 ∤ 2 and 4 | 12

def test_remove_prime_recheck_can_fail():
    d7 = fc.delta(400, 7)
    # the parent 6Z + 3 is false for Δ mod 7; the derived 3Z fails at τ(9)
    derived = rules.rule_remove_prime(_cert(6, 3, ell=7), 2, data=d7)
    assert derived.claim == Progression(3, 0)
    assert derived.evidence.reverified is False

# ------------------------------------------------------------
# Square classes and gap families
# ------------------------------------------------------------
def test_square_class_closure():
    closure = rules.square_class_closure(_cert(7, 1))
    assert [c.claim.residue for c in closure] == [1, 2, 4]
    assert all(c.evidence.rule == RULE_SQUARE_CLASS for c in closure)
    assert [c.claim for c in rules.square_class_closure(_cert(8, 1))] == [Progression(8, 1)]
    with pytest.raises(RuleHypothesisError):
        rules.square_class_closure(_cert(7, 1), level=7)

def test_gap_families_are_deduplicated():
    certs = [_cert(9, 3, ell=7), _cert(9, 6, ell=7), _cert(7, 0, ell=7)]
    families = rules.collect_gap_families(certs)
    assert [c.claim for c in families] == [GapProgression(3, 0, 3)]

# ------------------------------------------------------------
# Prime-by-prime factorization
# ------------------------------------------------------------
def test_factor_and_recombine_a_progression():
    tree = rules.factor_claim(_cert(12, 8))
    assert [(c.prime, c.modulus, c.residue, c.complement) for c in tree.components] == [(2, 4, 0, 3), (3, 3, 2, 4)]
    assert [c.route for c in tree.components] == [rules.REMOVE_ROUTE, rules.REMOVE_ROUTE]
    assert rules.recombine(tree) == Progression(12, 8)

def test_factor_and_recombine_a_gap_claim():
    cert = CongruenceCertificate("f", 5, GapProgression(6, 8, 2), VerifiedToBound(10, 1))
    tree = rules.factor_claim(cert)
    assert tree.gap_prime == 2
    assert rules.recombine(tree) == GapProgression(6, 8, 2)

def test_routes():
    assert [c.route for c in rules.factor_claim(_cert(10, 3)).components] == [rules.REMOVE_ROUTE, rules.ELL_ROUTE]
    assert [c.route for c in rules.factor_claim(_cert(8, 2)).components] == [rules.GAP_ROUTE]
    assert [c.route for c in rules.factor_claim(_cert(12, 8), level=3).components] == [rules.REMOVE_ROUTE, rules.LEVEL_ROUTE]
