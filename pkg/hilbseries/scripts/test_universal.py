import pytest
from sympy.polys.domains import QQ

from backend.core.series import series_ring
from backend.partfun.slope import evaluate_polynomial
from backend.types.report_types import all_passed
from backend.universal.cdef import verify_cdef
from backend.universal.closed_forms import closed_form_g, known_b_series, verlinde_t
from backend.universal.identities import (
    rank_polynomial,
    verify_differential_identities,
    verify_h_to_f_pipelines,
    verify_main_theorem,
    verify_segre_verlinde,
    verify_uv_operators,
)
from backend.universal.product_formula import extract_universal, solve_product_formula
from backend.universal.symreg import SymRegSeries, check_symmetric, f_to_h, h_to_f, y_ring
from backend.universal.uvchart import UVChart, uv_dw, uv_substitute
from backend.utils.exceptions import NonzeroResidual, RankDeficientMatrix, TruncationTooSmall


def coefficients(series, count):
    return [series.coefficient((j,)) for j in range(count)]


def test_uv_chart():
    chart = UVChart(3, 2, 4)
    assert chart.u.coefficient((1, 1)) == 1
    assert chart.v.coefficient((0, 1)) == 1
    assert chart.v.coefficient((1, 0)) == 0
    # y = uv/((1-u)(1-v)) commence en w z²
    assert chart.y.coefficient((1, 2)) == 1
    assert chart.y.coefficient((0, 2)) == 0
    assert chart.rho.coefficient((1, 0)) == 1

    uv = chart.uv_ring()
    u, v = uv.gens()
    assert uv_substitute(v, 3, 2, 4) == chart.v
    assert uv_substitute(u * v, 3, 2, 4, chart) == chart.u * chart.v


def test_h_to_f_pipelines():
    # cellules (m, n, a, k) tirées avec random.Random(seed)
    for seed in (0, 1):
        report = verify_h_to_f_pipelines(seed=seed, count=200)
        assert report.passed, report
        assert report.parameters["count"] == 200
    assert verify_h_to_f_pipelines(count=20, ks=(3,), w_order=2, z_order=4).passed


def test_uv_operators():
    # D_w log(1 - v) = (k - 1) uv / Δ, Δ = 1 + O(u, v)
    for k in (3, 4):
        chart = UVChart(k, 3, 3)
        uv = chart.uv_ring()
        d_w = uv_dw((uv.one() - uv.gen("v")).log(), k)
        assert d_w.coefficient((1, 1)) == k - 1
        assert d_w.coefficient((0, 1)) == 0
        assert all_passed(verify_uv_operators(k, 3, 3, chart))


def test_h_to_f():
    ring = y_ring(2)
    log_one_minus_y = (ring.one() - ring.gen("y")).log()
    f = h_to_f(log_one_minus_y, 3, 2, 4, pipeline="both")
    assert f.coefficient((1, 2)) == -1
    assert f.coefficient((1, 3)) == 1
    assert f_to_h(f, 3) == log_one_minus_y
    assert check_symmetric(f)

    ring, w, z = series_ring("w,z", (2, 4))
    cases = [(z + w * z, True), (z, False), (w, False)]
    for series, expected in cases:
        assert check_symmetric(series) is expected
    with pytest.raises(TruncationTooSmall):
        h_to_f(y_ring(1).gen("y"), 3, 2, 4)
    with pytest.raises(ValueError):
        h_to_f(log_one_minus_y, 3, 2, 4, pipeline="numeric")


def test_symreg_limits():
    series = SymRegSeries.from_h(y_ring(3).gen("y"), 3, 3, 9).certify(0)
    # inverses de w = y(1 - 2y) et de w = -y(1 - y)^3
    assert coefficients(series.chern_limit(), 4) == [QQ(c) for c in (0, 1, 2, 8)]
    assert coefficients(series.verlinde_limit(), 4) == [QQ(c) for c in (0, -1, 3, -15)]


def test_closed_forms_at_w_zero():
    for index in range(4):
        g = closed_form_g(index, 3, 2, 4)
        assert all(exponent == (0, 0) or exponent[0] > 0 for exponent in g.terms), index
        assert g.constant_term() == 1
    cases = [
        (lambda: closed_form_g(4, 3, 2, 4), ValueError),
        (lambda: closed_form_g(0, 0, 2, 4), ValueError),
    ]
    for operation, error in cases:
        with pytest.raises(error):
            operation()


def test_known_series():
    assert coefficients(verlinde_t(2, 3), 4) == [QQ(c) for c in (0, -1, 3, -3)]
    assert coefficients(known_b_series(1, 2, 3), 4) == [QQ(1), QQ(-1), QQ(0), QQ(0)]
    assert known_b_series(0, 5, 3) == y_ring(3).one()


def test_solve_product_formula():
    ring, w = series_ring("w", (3,))
    logs = [w, w.scale(2), w ** 2, -w, w ** 3]
    rows = [[QQ(int(i == j)) for j in range(5)] for i in range(5)]
    rows.append([QQ(1), QQ(1), QQ(0), QQ(0), QQ(2)])
    extended = logs + [logs[0] + logs[1] + logs[4].scale(2)]
    assert solve_product_formula(rows, extended) == logs

    with pytest.raises(NonzeroResidual):
        solve_product_formula(rows, logs + [logs[0]])
    with pytest.raises(RankDeficientMatrix):
        solve_product_formula([[QQ(1), QQ(0), QQ(0), QQ(0), QQ(0)]] * 5, logs)
    with pytest.raises(ValueError):
        extract_universal("segre", 3, 2)


def test_rank_polynomial():
    polynomials = rank_polynomial(0, 1, 1)
    reference = closed_form_g(0, 8, 1, 1).log()
    for (m, n) in reference.ring.box_exponents():
        value = evaluate_polynomial(polynomials[(m, n)], QQ(8)) if (m, n) in polynomials else QQ(0)
        assert value == reference.coefficient((m, n)), (m, n)


@pytest.mark.slow
def test_main_theorem_from_family():
    assert all_passed(verify_main_theorem(3, 2, 4, source="family"))
    assert all_passed(verify_differential_identities(3, 2, 4))
    assert all_passed(verify_cdef(3, 2, 4))


@pytest.mark.slow
def test_main_theorem_by_localization():
    assert all_passed(verify_main_theorem(3, 2, 4, quick=True))
    assert all_passed(verify_segre_verlinde(3, 2))
