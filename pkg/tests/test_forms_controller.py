# tests/test_forms_controller.py
import pytest

from core.errors import DomainError, UsageError, WitnessError
from features.algebra import linalg
from features.algebra.model import KroneckerChar
from features.forms import controller as fc

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944, -577738]

def test_delta_coefficients():
    d = fc.delta(14)
    assert d.valuation == 1
    assert [d[n] for n in range(1, 14)] == TAU

def test_reduced_delta_matches_exact_delta():
    d7 = fc.delta(14, 7)
    assert [d7[n] for n in range(1, 14)] == [t % 7 for t in TAU]

def test_eisenstein_series():
    e4 = fc.eisenstein(4, 4)
    e6 = fc.eisenstein(6, 4)
    assert [e4[n] for n in range(4)] == [1, 240, 2160, 6720]
    assert [e6[n] for n in range(4)] == [1, -504, -16632, -122976]
    assert [int(c) for c in fc.eisenstein(4, 4, 7).coeffs] == [1, 2, 4, 0]
    with pytest.raises(DomainError):
        fc.eisenstein(8, 4)

def test_partition_values_agree_across_methods():
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert list(fc.partition_recurrence(None, 10)) == expected
    assert [int(c) for c in fc.partition_series(11).coeffs] == expected
    assert list(fc.partition_mod(5, 10)) == [v % 5 for v in expected]
    assert fc.partition_mod(13, 100)[100] == 4     # p(100) = 190569292

def test_dimensions_of_level_one_spaces():
    assert [fc.dimension(k) for k in (0, 2, 4, 12, 14, 24, 26)] == [1, 0, 1, 2, 1, 3, 2]
    assert fc.dimension(7) == 0

def test_named_products():
    f = fc.build_form("e4*delta", 5)
    assert [f[n] for n in (1, 2, 3)] == [1, 216, -3348]
    assert f.descriptor.weight == 16
    with pytest.raises(UsageError):
        fc.build_form("sigma", 5)
    with pytest.raises(UsageError):
        fc.build_form("eta^x", 5)

def test_echelon_basis_contains_delta():
    P = fc.basis_precision(12)
    basis = fc.level_one_basis(12, 7, P)
    assert basis.dimension == 2
    assert [int(c) for c in basis.basis[1].coeffs] == [int(c) for c in fc.delta(P, 7).dense(P)]
    # round trip through echelon coordinates
    d7 = fc.delta(P, 7)
    assert basis.combination(basis.coordinates(d7)) == d7.with_(valuation=0, coeffs=d7.dense(P))

def test_small_primes_have_no_level_one_basis():
    with pytest.raises(DomainError):
        fc.level_one_basis(12, 3, 20)

def test_coefficient_witness_avoids_multiples_of_p():
    basis = fc.level_one_basis(12, 7, fc.basis_precision(12))
    witness = fc.coefficient_full_rank_witness(basis, 2)
    assert len(witness) == 2
    assert all(n % 2 for n in witness)
    assert linalg.rank(linalg.to_field(basis.matrix()[:, list(witness)], 7)) == 2

def test_constant_space_has_no_witness():
    basis = fc.level_one_basis(0, 7, 10)
    with pytest.raises(WitnessError):
        fc.coefficient_full_rank_witness(basis, 2)

def test_oldform_vanishes_off_multiples_of_p():
    old = fc.oldform(fc.delta(10), 2)
    assert old.descriptor.name == "delta|V2"
    assert old.descriptor.level == 2
    assert all(old[n] == 0 for n in range(1, 20, 2))
    assert old[4] == -24

def test_twist_kills_multiples_of_the_character_modulus():
    tw = fc.twist_form(fc.delta(12, 7), KroneckerChar(1, 5))
    assert tw[5] == 0 and tw[10] == 0
    assert tw[2] == (-24) % 7
    assert tw.descriptor.level == 5
