import pytest

from backend.combinatorics.partitions import Partition
from backend.core.coefficients import QT, Q_GEN, T_GEN
from backend.core.series import SeriesRing
from backend.macdonald.identities import (
    macdonald_suite,
    verify_cauchy,
    verify_garsia_tesler,
    verify_koornwinder,
    verify_pexp_multiplicative,
)
from backend.macdonald.modified import modified_macdonald
from backend.macdonald.plethysm import plethystic_evaluate, plethystic_exp
from backend.macdonald.symfunc import SymFunc, complete, elementary, to_monomial_basis
from backend.utils.exceptions import ConstantTermPresent, WeightTooLarge


def test_modified_macdonald_degree_two():
    one = QT.one
    cases = [
        ((2,), {(2,): one, (1, 1): one + Q_GEN}),
        ((1, 1), {(2,): one, (1, 1): one + T_GEN}),
        ((1,), {(1,): one}),
    ]
    for parts, expected in cases:
        coefficients = to_monomial_basis(modified_macdonald(Partition(parts), max_weight=2))
        assert {lam.parts: c for lam, c in coefficients.items()} == expected


def test_weight_cap():
    with pytest.raises(WeightTooLarge):
        modified_macdonald(Partition((3,)), max_weight=2)


def test_homogeneous_parts():
    mixed = complete(1, max_degree=2) + complete(2) + elementary(2)
    # h_2 + e_2 = p_1^2
    assert mixed.homogeneous(2) == SymFunc.power_sum(Partition((1, 1)))
    assert mixed.homogeneous(1) == SymFunc.power_sum(Partition((1,)))
    assert mixed.homogeneous(0).is_zero()


def test_plethystic_evaluation():
    ring = SeriesRing(("u",), (3,), QT)
    u = ring.gen("u")
    # h_n[1 - u] = 1 - u, e_2[1 - u] = u^2 - u
    assert plethystic_evaluate(complete(3), ring.one() - u) == ring.one() - u
    assert plethystic_evaluate(elementary(2), ring.one() - u) == u * u - u

    geometric = plethystic_exp(u)
    assert [geometric.coefficient((j,)) for j in range(4)] == [QT.one] * 4
    with pytest.raises(ConstantTermPresent):
        plethystic_exp(ring.one() + u)


def test_individual_identities():
    reports = [
        verify_cauchy(2, 3),
        verify_cauchy(3, 3),
        verify_garsia_tesler(Partition((2, 1)), 3, 3),
        verify_koornwinder(Partition((2,)), Partition((1, 1)), 3),
    ]
    for report in reports:
        assert report.passed, report.to_dict()


def test_pexp_multiplicative():
    for seed in (0, 3):
        reports = verify_pexp_multiplicative(seed=seed, count=100)
        assert len(reports) == 100
        failed = [report.to_dict() for report in reports if not report.passed]
        assert not failed, failed


@pytest.mark.slow
def test_macdonald_suite():
    reports = macdonald_suite(4)
    failed = [report.to_dict() for report in reports if not report.passed]
    assert not failed, failed
