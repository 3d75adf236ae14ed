from fractions import Fraction

import pytest
from sympy.polys.domains import QQ

from backend.core.coefficients import C_GEN, QC, QT, Q_GEN, T_GEN
from backend.partfun.checks import (
    omega_chern,
    omega_verlinde,
    verify_functional_equation,
    verify_palindromic,
    verify_regularity,
    verify_symmetry_theorem,
    w_coefficient,
)
from backend.partfun.extraction import extract_h
from backend.partfun.omega import OmegaSpec, generalized_binomial, omega_master
from backend.partfun.slope import SYMBOLIC, SlopeLine
from backend.utils.exceptions import DegenerateSlope, InsufficientCap, WeightTooLarge

SINGLE_BOX = QT.one / ((Q_GEN - QT.one) * (QT.one - T_GEN))


def test_omega_low_terms():
    omega = omega_master(OmegaSpec(1, 2, 1))
    assert omega.coefficient((0, 0)) == QT.one
    assert omega.coefficient((1, 0)) == SINGLE_BOX
    assert omega.coefficient((1, 1)) == -SINGLE_BOX

    bare = omega_master(OmegaSpec(0, 2, 0))
    assert bare.ring.names == ("w",)
    assert bare.coefficient((1,)) == SINGLE_BOX


def test_omega_spec_validation():
    with pytest.raises(ValueError):
        OmegaSpec(-1, 2, 2)
    with pytest.raises(WeightTooLarge):
        omega_master(OmegaSpec(0, 5, 0), max_weight=3)


def test_generalized_binomial():
    cases = [
        (5, 2, QQ(10)),
        (QQ(1, 2), 2, QQ(-1, 8)),
        (-3, 3, QQ(-10)),
        (4, -1, QQ(0)),
    ]
    for x, j, expected in cases:
        assert generalized_binomial(x, j) == expected


def test_chern_and_verlinde_kernels():
    line = SlopeLine(Fraction(2))
    # une seule case: 1/(t1 t2) = 1/(c s^2)
    for k, v in ((0, None), (1, [0])):
        chern = w_coefficient(omega_chern(k, 1, line, v), 1)
        assert chern.valuation == -2
        assert chern.coefficient(-2) == QQ(1, 2)
        assert w_coefficient(omega_chern(k, 1, line, v), 0).constant_term() == 1

        # s^2 / ((1 - e^{-s})(1 - e^{-2s})) = 1/2 + 3s/4 + ...
        verlinde = w_coefficient(omega_verlinde(k, 1, line, v), 1)
        assert [verlinde.coefficient(j) for j in (-2, -1)] == [QQ(1, 2), QQ(3, 4)]

    symbolic = w_coefficient(omega_chern(0, 1, SYMBOLIC), 1)
    assert symbolic.coefficient(-2) == QC.one / QC.convert(C_GEN)

    with pytest.raises(DegenerateSlope):
        omega_chern(0, 1, SlopeLine(Fraction(0)))
    with pytest.raises(DegenerateSlope):
        omega_verlinde(0, 1, SlopeLine(Fraction(0)))


def test_functional_equation_and_palindromicity():
    for k in (0, 1):
        assert verify_functional_equation(k, 2, 2).passed
        assert verify_palindromic(k, 2, 2).passed


def test_h_components_at_z_zero():
    h_mm = extract_h(-1, -1, 1, 3, 1).series
    h_m0 = extract_h(-1, 0, 1, 3, 1).series
    for m in range(1, 4):
        assert h_mm.coefficient((m, 0)) == QQ(-1, m ** 3)
        assert h_m0.coefficient((m, 0)) == QQ(1, 2 * m ** 2)
    # H_{-1,-1}(0, z) = 0
    assert all(exp[0] > 0 for exp in h_mm.terms)


def test_h_cap():
    with pytest.raises(InsufficientCap):
        extract_h(1, 2, 1, 2, 2)


def test_symmetry_theorem():
    cases = [(-1, -1, 1), (0, 0, 2)]
    for d1, d2, k in cases:
        report = verify_symmetry_theorem(d1, d2, k, 3, 3)
        assert report.passed, report.to_dict()


def test_regularity():
    assert verify_regularity(1, 3, slope_count=2).passed


@pytest.mark.slow
def test_functional_equation_two_alphabets():
    assert verify_functional_equation(2, 2, 2).passed
    assert verify_symmetry_theorem(-1, 1, 3, 3, 3).passed
