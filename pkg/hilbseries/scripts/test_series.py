import random

import pytest
from sympy.polys.domains import QQ

from backend.core.coefficients import C_GEN, Q_GEN, QC, QT, T_GEN, coefficient_strings, lift
from backend.core.laurent import LaurentSeries
from backend.core.series import SeriesRing, bernoulli_numbers, polylog_series, series_ring
from backend.utils.exceptions import BadConstantTerm, NonUnitConstantTerm, NonzeroConstantTerm


def coefficients(series, count):
    return [series.coefficient((j,)) for j in range(count)]


def test_geometric_inverse():
    ring, x = series_ring("x", (6,))
    assert coefficients((1 - x).invert(), 7) == [QQ(1)] * 7

    ring, w, z = series_ring("w,z", (3, 3))
    inverse = (1 - w - z).invert()
    # (w + z)^n: coefficient binomial
    assert inverse.coefficient((1, 1)) == 2
    assert inverse.coefficient((2, 1)) == 3
    assert inverse.coefficient((3, 3)) == 20


def test_log_exp():
    ring, x = series_ring("x", (6,))
    log_series = (1 - x).invert().log()
    assert coefficients(log_series, 7) == [QQ(0)] + [QQ(1, n) for n in range(1, 7)]
    assert log_series.exp() == (1 - x).invert()

    ring, w, z = series_ring("w,z", (4, 4))
    f = 1 + w - z * w + 3 * z ** 2
    assert f.log().exp() == f


def test_fractional_power():
    ring, x = series_ring("x", (3,))
    root = (1 + x).power(QQ(1, 2))
    assert coefficients(root, 4) == [QQ(1), QQ(1, 2), QQ(-1, 8), QQ(1, 16)]
    assert root * root == 1 + x
    assert (1 + x).nth_root(3) ** 3 == 1 + x


def test_constant_term_errors():
    ring, x = series_ring("x", (4,))
    cases = [
        (lambda: x.invert(), NonUnitConstantTerm),
        (lambda: (2 + x).log(), BadConstantTerm),
        (lambda: (1 + x).exp(), BadConstantTerm),
        (lambda: (2 + x).power(QQ(1, 2)), BadConstantTerm),
        (lambda: x.compose(1 + x), NonzeroConstantTerm),
    ]
    for operation, error in cases:
        with pytest.raises(error):
            operation()


def test_compositional_inverse():
    ring, y = series_ring("y", (4,))
    cases = [
        # y(1 - 2y)
        (y - 2 * y ** 2, [0, 1, 2, 8, 40]),
        # -y(1 - y)^3
        (-y * (1 - y) ** 3, [0, -1, 3, -15]),
    ]
    for f, expected in cases:
        g = f.compositional_inverse()
        assert coefficients(g, len(expected)) == [QQ(c) for c in expected]
        assert f.compose(g) == y


def test_truncation_box():
    ring = SeriesRing(("w", "z"), (2, 1))
    w, z = ring.gens()
    product = (1 + w + z) ** 5
    assert product.max_exponents() == (2, 1)
    assert ring.monomial({"w": 3}).is_zero()
    assert product.slice("z", 1).ring.names == ("w",)
    assert product.restrict(SeriesRing(("w",), (2,))).coefficient((2,)) == 10
    wider = ring.with_orders(z=3)
    assert wider.orders == (2, 3)
    assert product.restrict(wider).coefficient((0, 3)) == 0
    assert product.restrict(wider).coefficient((1, 1)) == 20


def test_derivatives():
    ring, x = series_ring("x", (3,))
    cube = (1 + x) ** 3
    assert coefficients(cube.derivative("x"), 4) == [QQ(3), QQ(6), QQ(3), QQ(0)]
    assert coefficients(cube.euler("x"), 4) == [QQ(0), QQ(3), QQ(6), QQ(3)]

    ring, w, z = series_ring("w,z", (2, 2))
    assert (w * z ** 2).derivative("z") == 2 * w * z
    assert (w * z).derivative("w").derivative("w").is_zero()


def test_bernoulli_and_polylog():
    assert bernoulli_numbers(4) == [QQ(1), QQ(-1, 2), QQ(1, 6), QQ(0), QQ(-1, 30)]
    ring = SeriesRing(("w",), (3,))
    assert coefficients(polylog_series(2, ring, "w"), 4) == [QQ(0), QQ(1), QQ(1, 4), QQ(1, 9)]
    assert coefficients(polylog_series(-1, ring, "w"), 4) == [QQ(0), QQ(1), QQ(2), QQ(3)]


def test_laurent_inverse():
    # s^{-1}(1 + s): inverse s(1 - s + s^2 - ...)
    f = LaurentSeries(-1, [1, 1], 4)
    inverse = f.invert()
    assert inverse.valuation == 1
    assert [inverse.coefficient(j) for j in range(1, 5)] == [QQ(1), QQ(-1), QQ(1), QQ(-1)]
    with pytest.raises(ValueError):
        f.coefficient(5)


GENERATORS = {QT: (Q_GEN, T_GEN), QC: (C_GEN,)}


def random_scalar(rng, domain):
    value = QQ(rng.randint(-4, 4), rng.randint(1, 3))
    if domain == QQ:
        return value
    gens = GENERATORS[domain]
    numer = lift(value, domain) + sum(rng.randint(-2, 2) * g for g in gens)
    denom = domain.one + sum(rng.randint(0, 2) * g for g in gens)
    return numer / denom


def random_polynomial(rng, domain):
    # 1 + termes de degré >= 1: jamais nul
    return domain.one + sum(rng.randint(-3, 3) * g ** rng.randint(1, 2) for g in GENERATORS[domain])


def random_series(rng, ring, constant=None):
    terms = {e: random_scalar(rng, ring.domain) for e in ring.box_exponents() if rng.random() < 0.6}
    if constant is not None:
        terms[(0,) * ring.nvars] = lift(constant, ring.domain)
    return ring.from_dict(terms)


def test_ring_axioms_on_random_series():
    rng = random.Random(0)
    for domain in (QQ, QT, QC):
        ring = SeriesRing(("w", "z"), (2, 2), domain)
        for _ in range(10):
            a, b, c = (random_series(rng, ring) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert (a + b) - b == a
            assert a - a == ring.zero()
            assert a * ring.one() == a
            unit = random_series(rng, ring, constant=1)
            assert unit * unit.invert() == ring.one()


def test_fraction_representative_independence():
    rng = random.Random(1)
    for domain in (QT, QC):
        ring = SeriesRing(("x",), (2,), domain)
        for _ in range(20):
            p, q, r = (random_polynomial(rng, domain) for _ in range(3))
            reduced, scaled = p / q, (p * r) / (q * r)
            assert reduced == scaled
            assert coefficient_strings(reduced, domain) == coefficient_strings(scaled, domain)
            assert ring.scalar(reduced) == ring.scalar(scaled)


def test_compositional_inverse_on_random_series():
    rng = random.Random(2)
    ring, y = series_ring("y", (8,))
    symbolic = SeriesRing(("y",), (8,), QC)
    for index in range(50):
        linear = QQ(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        f = y.scale(linear) + ring.from_univariate("y", [0, 0] + [rng.randint(-3, 3) for _ in range(7)])
        g = f.compositional_inverse()
        assert f.compose(g) == y
        assert g.compose(f) == y
        if index < 5:
            # même inverse par l'itération de point fixe sur Q(c)
            assert g.restrict(symbolic) == f.restrict(symbolic).compositional_inverse()


def test_univariate_operations_match_recurrences():
    # QQ en une variable passe par sympy ring_series, Q(c) par les récurrences
    rng = random.Random(3)
    ring, x = series_ring("x", (7,))
    symbolic = SeriesRing(("x",), (7,), QC)
    for _ in range(10):
        f = random_series(rng, ring, constant=1)
        lifted = f.restrict(symbolic)
        cases = [
            (f.invert(), lifted.invert()),
            (f.log(), lifted.log()),
            ((f - 1).exp(), (lifted - 1).exp()),
            (f.power(QQ(2, 3)), lifted.power(QQ(2, 3))),
            (f.power(QQ(-1, 2)), lifted.power(QQ(-1, 2))),
        ]
        for by_ring_series, by_recurrence in cases:
            assert by_ring_series.restrict(symbolic) == by_recurrence
