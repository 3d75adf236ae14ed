import pytest
from sympy.polys.domains import QQ

from backend.closedform.brackets import bracket_constant_term, bracket_constant_term_binomial
from backend.closedform.bseries import (
    b3_exp_formula,
    b3_product,
    b4_binomial,
    b4_conjecture,
    b4_symbolic,
    binomial_triples,
    branch_product,
)
from backend.closedform.checks import (
    verify_b3_square,
    verify_b4_vanishing,
    verify_lagrange_branches,
    verify_lagrange_inverse,
    verify_two_branch_sums,
)
from backend.closedform.lagrange import BranchSystem, branch_power_sums, lagrange_exp_log
from backend.core.laurent import LaurentSeries
from backend.types.report_types import all_passed
from backend.utils.exceptions import BadConstantTerm, TruncationTooSmall


def coefficients(series, count):
    return [series.coefficient((j,)) for j in range(count)]


def test_bracket_constant_terms():
    cases = [
        # (k, n, attendu)
        (2, 0, 1),
        (2, 3, 1),
        (3, 1, 2),
        (3, 2, 6),
        (3, 3, 20),
        (4, 1, 3),
        (4, 2, 19),
        (-1, 2, 6),
    ]
    for k, n, expected in cases:
        assert bracket_constant_term(k, n) == expected, (k, n)
        assert bracket_constant_term_binomial(k, n) == expected, (k, n)


def test_lagrange_exp_log():
    # F = 1/y: g(u) = u
    single = lagrange_exp_log(LaurentSeries(-1, [1], 6), 6)
    assert single == single.ring.one()
    # F = 1/y²: produit des branches ±√u divisé par u, constant
    two_poles = lagrange_exp_log(LaurentSeries(-2, [1], 10), 5)
    assert coefficients(two_poles, 6) == [QQ(1)] + [QQ(0)] * 5


def test_lagrange_errors():
    cases = [
        (lambda: lagrange_exp_log(LaurentSeries(0, [1, 1], 6), 4), ValueError),
        (lambda: lagrange_exp_log(LaurentSeries(-1, [2, 1], 6), 4), BadConstantTerm),
        (lambda: lagrange_exp_log(LaurentSeries(-2, [1, 1], 3), 6), TruncationTooSmall),
        (lambda: BranchSystem(1, 4), ValueError),
    ]
    for operation, error in cases:
        with pytest.raises(error):
            operation()


def test_lagrange_identities():
    assert all_passed(verify_lagrange_inverse(count=5, order=6))
    assert all_passed(verify_lagrange_branches(count=3, order=4))
    assert verify_two_branch_sums(order=4, j_max=4).passed


def test_branch_power_sums():
    # r = 2: une seule branche, l'inverse de x/(1+x)²
    (first,) = branch_power_sums(2, 1, 4)
    assert coefficients(first, 5) == [QQ(c) for c in (0, 1, 2, 5, 14)]
    for power_sum in branch_power_sums(3, 4, 4):
        assert power_sum.constant_term() == 0


def test_b3():
    # r = 2: (1 + √(1-4y)) / (2(1-y))
    expected = [QQ(c) for c in (1, 0, -1, -3, -8)]
    assert coefficients(b3_exp_formula(2, 4), 5) == expected
    for method in ("lagrange", "newton"):
        assert coefficients(b3_product(2, 4, method), 5) == expected
    assert b3_product(3, 6) == b3_exp_formula(3, 6)
    assert b3_product(1, 5) == b3_product(1, 5).ring.one()
    assert branch_product(3, 5, "lagrange") == branch_product(3, 5, "newton")
    assert all_passed(verify_b3_square(r_max=3, order=5))
    with pytest.raises(ValueError):
        branch_product(3, 4, "cyclotomic")


def test_b4_degenerate_ranks():
    assert binomial_triples(1, 2).gamma == 0
    for r in (0, 1):
        assert b4_binomial(r, 6) == b4_binomial(r, 6).ring.one()
        assert b4_conjecture(r, 6) == b4_conjecture(r, 6).ring.one()
    assert all_passed(verify_b4_vanishing(n_max=6))
    with pytest.raises(ValueError):
        binomial_triples(0, 2)


def test_bconj_low_order():
    for r, order in ((2, 4), (3, 3)):
        binomial = b4_binomial(r, order)
        assert binomial.constant_term() == 1
        assert b4_conjecture(r, order) == binomial, r


def test_b4_symbolic():
    symbolic = b4_symbolic(3)
    for n in range(1, 4):
        assert symbolic.degree(n) <= 2 * n + 2
    for r in (2, 4):
        assert symbolic.log_series(r) == b4_binomial(r, 3).log()


@pytest.mark.slow
def test_bconj_order_six():
    for r in (2, 3, 4):
        assert b4_conjecture(r, 6) == b4_binomial(r, 6), r
