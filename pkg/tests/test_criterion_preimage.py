# tests/test_criterion_preimage.py
import pytest

from core.errors import DomainError, NoPreimageError, ZeroFormError
from features.algebra.numbers import kronecker
from features.criterion import preimage
from features.forms import controller as fc
from features.heckeops import controller as hc
from features.qseries import controller as qs

def test_zero_steps_return_the_input():
    g = fc.delta(12, 5)
    h, weight = preimage.u_ell_preimage(g, 12, steps=0)
    assert h is g and weight == 12

def test_preimage_under_u5():
    g = fc.delta(12, 5)
    h, weight = preimage.u_ell_preimage(g, 12, steps=1, weight_cap=60)
    assert weight % 4 == 0 and 12 <= weight <= 60          # Δ^5 ≡ Δ(q^5) bounds the search
    W = weight // 12 + 1
    assert [int(c) for c in qs.u_operator(h, 5).dense(W)] == [int(c) for c in g.dense(W)]

def test_preimage_round_trips_on_the_weight_12_basis():
    for g in fc.level_one_basis(12, 5, 60).basis:
        h, weight = preimage.u_ell_preimage(g, 12, steps=1, weight_cap=60)   # g^5 ≡ g(q^5)
        W = weight // 12 + 1
        assert [int(c) for c in qs.u_operator(h, 5).dense(W)] == [int(c) for c in g.dense(W)]

def test_preimage_of_a_killed_progression():
    g = hc.theta_kill(fc.delta(30, 7), 3)          # weight 12 + 3·(ℓ+1) = 36
    h, weight = preimage.u_ell_preimage(g, 36, steps=1, weight_cap=300)
    image = qs.u_operator(h, 7)
    assert not image.is_zero()
    assert all(image[n] == 0 for n in range(image.precision) if n % 7 in (3, 5, 6))

def test_weight_cap_below_the_start_gives_up():
    with pytest.raises(NoPreimageError):
        preimage.u_ell_preimage(fc.delta(12, 5), 12, steps=1, weight_cap=8)

def test_filtrations():
    assert preimage.filtration(fc.delta(12, 5), 12) == 12
    assert preimage.filtration(fc.build_form("e4*delta", 12, 7), 16) == 16
    # E4 ≡ 1 mod 5
    assert preimage.filtration(fc.eisenstein(4, 4, 5), 4) == 0
    assert preimage.filtration(fc.build_form("e4*delta", 12, 5), 16) == 12

def test_filtration_of_zero_is_an_error():
    with pytest.raises(ZeroFormError):
        preimage.filtration(qs.series([0] * 4, modulus=5), 4)

def test_small_ell_is_rejected():
    with pytest.raises(DomainError):
        preimage.filtration(fc.delta(12, 3), 12)

def test_ell_17_preimage_of_a_killed_delta():
    ell, beta = 17, 3                                 # 3 is a non-residue mod 17
    g = hc.theta_kill(fc.delta(400, ell), beta)       # weight 12 + 8·18
    h, weight = preimage.u_ell_preimage(g, 156, steps=1)
    assert weight % 16 == 156 % 16
    image = qs.u_operator(h, ell)
    assert not image.is_zero()
    assert all(image[n] == 0 for n in range(image.precision) if kronecker(n, ell) == -1)
    k_h = preimage.filtration(h, weight)
    assert k_h <= weight and (weight - k_h) % 16 == 0
