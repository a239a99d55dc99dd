# tests/test_criterion_eigen.py
import pytest

from core.errors import DomainError, NotInSpanError
from features.algebra.model import ExtElement, Residue
from features.criterion import controller as cc
from features.criterion import eigen
from features.forms import controller as fc
from features.qseries import controller as qs

def _dense(f, n):
    return [int(c) for c in f.dense(n)]

def test_delta_is_a_single_component():
    f = fc.delta(12, 7)
    comps = eigen.eigen_decompose(f, 2, 12)
    assert len(comps) == 1
    assert comps[0].eigenvalue == 4
    assert comps[0].degree == 1
    assert eigen.check_eigen_equation(comps[0], 2, 12)
    assert _dense(comps[0].series(), 12) == _dense(f, 12)

def test_zero_form_has_no_components():
    assert eigen.eigen_decompose(qs.series([0] * 12, modulus=7), 2, 12) == []

def test_weight_16_splits_into_eisenstein_and_cusp_parts():
    P = 16
    f = qs.add(fc.build_form("e4*e4*e4*e4", P, 7), qs.scale(fc.build_form("e4*delta", P, 7), 2))
    comps = eigen.eigen_decompose(f, 2, 16)
    # 1 + 2^15 and c(E4Δ; 2) = 216
    assert sorted(int(c.eigenvalue) for c in comps) == [2, 6]
    assert all(eigen.check_eigen_equation(c, 2, 16) for c in comps)
    assert _dense(eigen.recombine_components(comps), P) == _dense(f, P)

def test_conjugate_eigenvalues_over_quadratic_extension():
    # T_2 on S_24 has eigenvalues 540 ± 12·sqrt(144169); 144169 is not a square mod 23
    P = 20
    f = fc.build_form("delta*delta", P, 23)
    comps = eigen.eigen_decompose(f, 2, 24)
    assert len(comps) == 2
    assert all(c.degree == 2 and isinstance(c.eigenvalue, ExtElement) for c in comps)
    assert all(eigen.check_eigen_equation(c, 2, 24) for c in comps)
    assert _dense(eigen.recombine_components(comps), P) == _dense(f, P)

def test_form_outside_the_weight_is_rejected():
    with pytest.raises(NotInSpanError):
        eigen.eigen_decompose(fc.delta(12, 7), 2, 16)

def test_p_equal_to_ell_is_rejected():
    with pytest.raises(DomainError):
        eigen.eigen_decompose(fc.delta(12, 7), 7, 12)

# each pair has two distinct T_2 and T_3 eigenvalues on M_k mod ℓ
EIGEN_SUITE = [(12, 13), (16, 5), (18, 7), (20, 11), (22, 13), (26, 7)]

@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("k, ell", EIGEN_SUITE)
def test_eigen_suite(k, ell, p):
    P = 40
    basis = fc.level_one_basis(k, ell, P)
    f = basis.basis[0]
    for b in basis.basis[1:]:
        f = qs.add(f, b)
    comps = eigen.eigen_decompose(f, p, k)
    assert len(comps) == 2
    assert len({int(c.eigenvalue) for c in comps}) == 2
    assert all(eigen.check_eigen_equation(c, p, k) for c in comps)
    assert _dense(eigen.recombine_components(comps), P) == _dense(f, P)

def test_components_inherit_a_certified_gap():
    # mod 5, E4 ≡ 1: f ≡ 1 + Δ, both parts have root ratio of order 4 at p = 2
    P = 200
    f = qs.add(fc.build_form("e4*e4*e4*e4", P, 5), fc.build_form("e4*delta", P, 5))
    comps = eigen.eigen_decompose(f, 2, 16)
    assert sorted(int(c.eigenvalue) for c in comps) == [1, 4]
    assert sorted(int(c.eigenvalue) for c in eigen.eigen_decompose(f, 3, 16)) == [2, 3]

    assert cc.certify_claim(f, 2, 3, 16) is not None
    assert cc.certify_claim(f, 2, 4, 16) is None
    c = Residue(pow(2, 15, 5), 5)
    for comp in comps:
        assert cc.analyze_lpoly(comp.eigenvalue, c, 2).admits(3)
        series = comp.series()
        assert all(series[8 * n] == 0 for n in range(1, P // 8, 2))
    assert all(f[8 * n] == 0 for n in range(1, P // 8, 2))
    assert f[8] == 0 and f[2] != 0
