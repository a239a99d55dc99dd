# tests/test_qseries_controller.py
import pytest

from core.errors import DomainError, DomainMismatchError, PrecisionError
from features.algebra.model import KroneckerChar
from features.forms import controller as fc
from features.qseries import controller as qs

def _coeffs(f):
    return [int(c) for c in f.coeffs]

def test_product_is_known_to_the_common_precision():
    f = qs.series([1, 1], precision=5)      # 1 + q
    g = qs.series([1, -1], precision=5)     # 1 - q
    h = qs.mul(f, g)
    assert h.valuation == 0 and h.precision == 5
    assert _coeffs(h) == [1, 0, -1, 0, 0]

def test_geometric_series_inverse():
    inv = qs.invert(qs.series([1, -1], precision=6))
    assert inv.precision == 6
    assert _coeffs(inv) == [1, 1, 1, 1, 1, 1]

def test_inverse_of_series_with_positive_valuation():
    f = qs.series([1, 1], valuation=1, precision=6)   # q + q^2
    inv = qs.invert(f)
    assert inv.valuation == -1
    assert inv.precision == 4
    assert _coeffs(inv) == [1, -1, 1, -1, 1]

def test_zero_series_cannot_be_inverted():
    with pytest.raises(DomainError):
        qs.invert(qs.series([0, 0, 0]))

def test_reading_coefficients():
    f = qs.series([5, 6, 7], valuation=2, precision=5)
    assert f[0] == 0                        # below the valuation
    assert f[4] == 7
    with pytest.raises(PrecisionError):
        f[5]

def test_exact_and_reduced_series_do_not_mix():
    with pytest.raises(DomainMismatchError):
        qs.add(qs.series([1, 2]), qs.series([1, 2], modulus=7))

def test_addition_merges_exponent_grids():
    half = qs.series([0, 1], precision=2, denom=2)    # q^{1/2}
    total = qs.add(half, qs.series([1], precision=1))
    assert total.denom == 2
    assert _coeffs(total) == [1, 1]

def test_u_operator_reads_every_mth_coefficient():
    d = fc.delta(11)
    u = qs.u_operator(d, 2)
    assert u.valuation == 1 and u.precision == 5
    assert [u[n] for n in range(1, 5)] == [-24, -1472, -6048, 84480]

def test_sieve_and_v_operator():
    f = qs.series([1, 2, 3, 4, 5, 6])
    assert _coeffs(qs.sieve(f, 3, 1)) == [0, 2, 0, 0, 5, 0]
    v = qs.v_operator(qs.series([1, 2, 3]), 2)
    assert v.precision == 6
    assert _coeffs(v) == [1, 0, 2, 0, 3, 0]

def test_theta_multiplies_by_the_exponent():
    f = qs.series([1, 1, 1, 1], modulus=3)
    assert _coeffs(qs.theta(f)) == [0, 1, 2, 0]

def test_twist_kills_multiples_of_the_modulus():
    f = qs.series([1, 1, 1, 1, 1, 1, 1])
    assert _coeffs(qs.twist(f, KroneckerChar(1, 3))) == [0, 1, 1, 0, 1, 1, 0]

def test_reduce_mod_and_truncate():
    d7 = qs.reduce_mod(fc.delta(6), 7)
    assert d7.modulus == 7
    assert d7[2] == (-24) % 7
    assert qs.truncate(d7, 3).precision == 3
    with pytest.raises(PrecisionError):
        qs.truncate(d7, 10)

def test_zeroth_power_is_one():
    p = qs.power(qs.series([2, 3, 4]), 0)
    assert _coeffs(p) == [1, 0, 0]

def test_shift_to_grid_on_eta_powers():
    lattice, r = qs.shift_to_grid(fc.eta_power(-1, 10))
    assert r == -1
    assert _coeffs(lattice) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]

    lattice, r = qs.shift_to_grid(fc.eta_power(24, 10))
    assert r == 0
    assert lattice == fc.delta(11)

def test_raw_grid_keeps_numerators():
    raw = qs.raw_grid(fc.eta_power(-1, 10))
    assert raw.denom == 1 and raw.valuation == -1
    assert [raw[24 * m - 1] for m in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert raw[0] == 0 and raw[24] == 0
