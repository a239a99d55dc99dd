# tests/test_heckeops_controller.py
import pytest

from core.errors import DomainError, DomainMismatchError, PrecisionError
from features.algebra.numbers import kronecker
from features.forms import controller as fc
from features.heckeops import controller as hc
from features.heckeops.model import HeckeContext
from features.qseries import controller as qs

def _dense(f, n):
    return [int(c) for c in f.dense(n)]

@pytest.mark.parametrize("ell, p, eigenvalue", [(7, 2, 4), (11, 3, 10), (13, 5, 4830 % 13)])
def test_delta_is_an_eigenform(ell, p, eigenvalue):
    d = fc.delta(20 * p, ell)
    image = hc.hecke_tp(d, p, HeckeContext(12))
    assert image.precision == 20
    assert _dense(image, 20) == [(eigenvalue * c) % ell for c in _dense(d, 20)]

def test_constant_term_picks_up_the_character_value():
    one = qs.one(10, 7)
    image = hc.hecke_tp(one, 2, HeckeContext(4))
    assert image[0] == (1 + 2**3) % 7

def test_hecke_operators_commute():
    f = fc.build_form("delta*delta", 60, 13)
    ctx = HeckeContext(24)
    a = hc.hecke_tp(hc.hecke_tp(f, 2, ctx), 3, ctx)
    b = hc.hecke_tp(hc.hecke_tp(f, 3, ctx), 2, ctx)
    assert a == b

def test_hecke_needs_reduced_input_and_enough_precision():
    with pytest.raises(DomainMismatchError):
        hc.hecke_tp(fc.delta(10), 2, HeckeContext(12))
    with pytest.raises(PrecisionError):
        hc.hecke_tp(fc.delta(4, 7), 5, HeckeContext(12))
    with pytest.raises(DomainError):
        HeckeContext(12, level=2).char_value(2, 7)

def test_composite_identity_holds_on_certified_gaps():
    # τ(3) ≡ 0 mod 7: gap on 3(Z∖3Z)
    check = hc.composite_identity_check(fc.delta(20 * 9 + 1, 7), 3, 1, 12, 20)
    assert check.passed and check.witness is None
    assert check.modulus == 9

    # Δ mod 5 has the gap on 7^3(Z∖7Z)
    check = hc.composite_identity_check(fc.delta(5 * 7**4 + 1, 5), 7, 3, 12, 5)
    assert check.passed

def test_composite_identity_reports_least_failure():
    # Δ mod 7 has no gap on 9(Z∖3Z); indices prime to 3 still cancel
    check = hc.composite_identity_check(fc.delta(10 * 27 + 1, 7), 3, 2, 12, 10)
    assert not check.passed
    assert check.witness == 3

    # 2(Z∖2Z) is not a gap of Δ mod 7
    check = hc.composite_identity_check(fc.delta(5 * 4 + 1, 7), 2, 1, 12, 5)
    assert check.witness == 1

def test_composite_identity_needs_enough_coefficients():
    with pytest.raises(PrecisionError):
        hc.composite_identity_check(fc.delta(50, 7), 3, 1, 12, 20)

def test_theta_kill_empties_a_square_class():
    ell = 5
    g = fc.delta(60, ell)
    killed = hc.theta_kill(g, 2)                # 2 is a non-residue mod 5
    assert all(killed[n] == 0 for n in range(60) if n % 5 in (2, 3))
    assert all(killed[n] == (2 * g[n]) % ell for n in range(60) if n % 5 in (1, 4))
    with pytest.raises(DomainError):
        hc.theta_kill(g, 10)

def test_theta_zero_kill_empties_multiples_of_ell():
    g = fc.delta(60, 5)
    killed = hc.theta_zero_kill(g)
    assert not killed.is_zero()
    assert qs.u_operator(killed, 5).is_zero()

THETA_CASES = [(5, 1, 2), (7, 2, 3), (11, 3, 2), (13, 4, 2), (17, 2, 3)]   # (ℓ, residue, non-residue)

@pytest.mark.parametrize("ell, residue, nonresidue", THETA_CASES)
def test_theta_kill_on_basis_forms(ell, residue, nonresidue):
    P = 2000
    for k in range(4, 26, 2):
        for g in fc.level_one_basis(k, ell, P).basis:
            for beta in (residue, nonresidue):
                killed = hc.theta_kill(g, beta)
                sign = kronecker(beta, ell)
                assert all(killed[n] == 0 for n in range(P) if kronecker(n, ell) == sign), (k, beta)
