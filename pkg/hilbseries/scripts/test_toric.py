from dataclasses import replace
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ

from backend.partfun.slope import SYMBOLIC, SlopeLine
from backend.toric.bundles import canonical_bundle, parse_bundle, trivial_bundle
from backend.toric.hilbert import (
    chern_series,
    configuration_matrix,
    exponent_rows,
    verify_segre_chern,
    verify_specializations,
    verlinde_series,
)
from backend.toric.localization import chern_numbers, euler_characteristic, verify_localization, verify_vanishing
from backend.toric.surfaces import BUILTIN_SURFACES, builtin_surface
from backend.utils.exceptions import BadDivisorData, UnknownSurface


def test_builtin_surfaces():
    cases = [("p2", 3), ("P1xP1", 4), ("f2", 4), ("bl1p2", 4), ("Bl3P2", 6)]
    for name, euler in cases:
        assert builtin_surface(name).euler_characteristic == euler
    with pytest.raises(UnknownSurface):
        builtin_surface("p3")


def test_bundle_parsing():
    p2 = builtin_surface("p2")
    bundle = parse_bundle(p2, "O(1)+O(1)-O")
    assert bundle.rank == 1
    assert parse_bundle(p2, "2O(1)").rank == 2
    assert trivial_bundle(p2, 0).rank == 0
    assert (parse_bundle(p2, "O(2)") - trivial_bundle(p2, 1)).rank == 0
    for text in ["", "O(1,2)", "O(x)", "P(1)"]:
        with pytest.raises(BadDivisorData):
            parse_bundle(p2, text)


def test_chern_numbers_on_p2():
    p2 = builtin_surface("p2")
    line = chern_numbers(p2, parse_bundle(p2, "O(1)"))
    assert (line.c1_squared, line.c2, line.chi_det) == (1, 0, 3)
    assert (line.k_squared, line.chi_o, line.c1_k, line.euler) == (9, 1, -3, 3)

    virtual = chern_numbers(p2, parse_bundle(p2, "O(1)+O(1)-O"))
    assert virtual.c2 == Fraction(1)
    assert virtual.c1_squared == Fraction(4)

    canonical = chern_numbers(p2, canonical_bundle(p2))
    assert canonical.riemann_roch_defect() == 0


def test_euler_characteristic_of_determinant():
    # χ(det α) tiré de Σ e^{p1 s} / ((1 - e^{-t1 s})(1 - e^{-t2 s})), sans Riemann-Roch
    cases = [
        ("p2", "O", 1),
        ("p2", "O(1)", 3),
        ("p2", "O(2)", 6),
        ("p2", "O(-1)", 0),
        ("p2", "O(-3)", 1),
        ("p2", "O(1)+O(1)-O", 6),
        ("P1xP1", "O(1,1)", 4),
        ("P1xP1", "O(1,0)", 2),
        ("P1xP1", "O(-1,0)", 0),
    ]
    for name, text, expected in cases:
        surface = builtin_surface(name)
        bundle = parse_bundle(surface, text)
        for line in (SYMBOLIC, SlopeLine(Fraction(1, 3)), SlopeLine(Fraction(-5, 7))):
            assert euler_characteristic(surface, bundle, line) == expected, (name, text, line)


def test_riemann_roch_detects_a_wrong_euler_characteristic():
    p2 = builtin_surface("p2")
    numbers = chern_numbers(p2, parse_bundle(p2, "O(2)"))
    assert numbers.chi_det == 6
    assert numbers.riemann_roch_defect() == 0
    assert replace(numbers, chi_det=numbers.chi_det + 1).riemann_roch_defect() == 1


def test_localization_on_every_surface():
    for name in BUILTIN_SURFACES:
        surface = builtin_surface(name)
        reports = verify_localization(surface) + verify_vanishing(surface)
        failed = [report.to_dict() for report in reports if not report.passed]
        assert not failed, failed


def test_verlinde_of_zero_class():
    p2 = builtin_surface("p2")
    series = verlinde_series(p2, trivial_bundle(p2, 0), 6)
    assert [series.coefficient((n,)) for n in range(7)] == [QQ(1)] * 7


def test_chern_series_of_trivial_line():
    p2 = builtin_surface("p2")
    assert chern_series(p2, trivial_bundle(p2, 1), 3) == 1


def test_configuration_matrix_rank():
    configurations = configuration_matrix(3, quick=True)
    assert all(config.bundle.rank == 3 for config in configurations)
    rows = exponent_rows(configurations)
    assert len(rows) == 6 and all(len(row) == 5 for row in rows)


@pytest.mark.slow
def test_specializations_and_segre():
    p2 = builtin_surface("p2")
    bundle = parse_bundle(p2, "O(1)+O")
    reports = verify_specializations(p2, bundle, 2)
    reports.append(verify_segre_chern(p2, parse_bundle(p2, "O(1)"), 3))
    failed = [report.to_dict() for report in reports if not report.passed]
    assert not failed, failed
