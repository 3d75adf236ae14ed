"""
Symmetric and regular two-variable series

Created: 2024-11-04
"""
# backend/universal/symreg.py
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from sympy.polys.domains import QQ

from backend.core.series import SeriesRing, TruncatedSeries
from backend.partfun.extraction import symmetric_defect
from backend.partfun.omega import generalized_binomial
from backend.partfun.slope import evaluate_polynomial, interpolate_polynomial
from backend.universal.uvchart import UVChart
from backend.utils.exceptions import PipelineMismatch, TruncationTooSmall, ValidationFailure

logger = logging.getLogger(__name__)

PIPELINES = ("uv", "binomial", "both")


def y_ring(order: int) -> SeriesRing:
    return SeriesRing(("y",), (order,), QQ)


def h_order(w_order: int, z_order: int) -> int:
    """Ordre en y utile dans la boîte (w, z): y^a commence en w^a z^{2a}"""
    return min(w_order, z_order // 2)


def h_to_f_coefficient(a: int, m: int, n: int, k: int):
    """Contribution de y^a au coefficient w^m z^n de h(y(w, z))"""
    if a == 0:
        return QQ.one if (m, n) == (0, 0) else QQ.zero
    if m < a or n - m < a:
        return QQ.zero
    top_left = -a + (n - m) * (k - 1)
    top_right = -a + m * (k - 1)
    sign = -1 if n % 2 else 1
    denominator = top_left * top_right
    if denominator:
        factor = QQ((k - 2) * a * (n * (k - 1) - a * k), denominator)
        value = factor * generalized_binomial(top_left, m - a) * generalized_binomial(top_right, n - m - a)
    else:
        value = (generalized_binomial(top_left, m - a) * generalized_binomial(top_right, n - m - a)
                 - (k - 1) ** 2 * generalized_binomial(top_left - 1, m - a - 1)
                 * generalized_binomial(top_right - 1, n - m - a - 1))
    return value * sign


def _h_to_f_binomial(h: TruncatedSeries, k: int, w_order: int, z_order: int) -> TruncatedSeries:
    ring = SeriesRing(("w", "z"), (w_order, z_order), QQ)
    coeffs = {a: c for (a,), c in h.terms.items()}
    terms = {}
    for m in range(w_order + 1):
        for n in range(z_order + 1):
            total = QQ.zero
            for a, c in coeffs.items():
                total += c * h_to_f_coefficient(a, m, n, k)
            if total:
                terms[(m, n)] = total
    return TruncatedSeries(ring, terms)


def h_to_f(h: TruncatedSeries, k: int, w_order: int, z_order: int, pipeline: str = "both",
           chart: Optional[UVChart] = None) -> TruncatedSeries:
    """f(w, z) = h(uv/((1-u)(1-v))); avec pipeline="both" les deux calculs doivent coïncider"""
    if pipeline not in PIPELINES:
        raise ValueError(f"Méthode inconnue {pipeline!r} (attendu: {', '.join(PIPELINES)})")
    needed = h_order(w_order, z_order)
    if h.ring.orders[0] < needed:
        raise TruncationTooSmall(
            f"h est tronquée à l'ordre {h.ring.orders[0]}, il en faut {needed}",
            {"needed": needed, "available": h.ring.orders[0]})
    if pipeline == "binomial":
        return _h_to_f_binomial(h, k, w_order, z_order)
    chart = chart or UVChart(k, w_order, z_order)
    by_uv = chart.pull_y(h)
    if pipeline == "both":
        by_binomial = _h_to_f_binomial(h, k, w_order, z_order)
        difference = by_uv.first_difference(by_binomial)
        if difference is not None:
            exponent, a, b = difference
            raise PipelineMismatch(
                f"Les deux calculs de h -> f divergent en w^{exponent[0]} z^{exponent[1]}",
                {"k": k, "uv": str(a), "binomial": str(b)})
    return by_uv


def f_to_h(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Inverse triangulaire de h_to_f: h_a = f_{a,2a} - Σ_{a'<a} T(a', a, 2a) h_{a'}"""
    order = h_order(f.ring.order_of("w"), f.ring.order_of("z"))
    h = {0: f.constant_term()}
    for a in range(1, order + 1):
        value = f.coefficient((a, 2 * a))
        for previous in range(1, a):
            if h.get(previous):
                value -= h[previous] * h_to_f_coefficient(previous, a, 2 * a, k)
        h[a] = value
    return y_ring(order).from_univariate("y", [h[a] for a in range(order + 1)])


def check_symmetric(f: TruncatedSeries) -> bool:
    """f(w, z) = f(1/w, w z), coefficient par coefficient"""
    return symmetric_defect(f) is None


def falling_factorial(x: int, j: int) -> int:
    result = 1
    for i in range(j):
        result *= x - i
    return result


@dataclass
class RegularityFit:
    """Polynômes p_m avec f_{m,n} = (-1)^n p_m(n) binom(km, n), deg p_m <= 2m - d"""
    k: int
    d: int
    polynomials: Dict[int, List] = field(default_factory=dict)

    def degree_bound(self, m: int) -> int:
        return 2 * m - self.d

    def top_coefficient(self, m: int):
        """[x^{2m-d}] p_m"""
        coeffs = self.polynomials.get(m, [])
        bound = self.degree_bound(m)
        return coeffs[bound] if 0 <= bound < len(coeffs) else QQ.zero


def fit_regularity(f: TruncatedSeries, k: int, d: int = 0) -> RegularityFit:
    """Interpole p_m en n = 0..2m-d puis valide tous les autres coefficients disponibles"""
    if k < 3:
        raise ValueError(f"L'ajustement de régularité exige un entier k >= 3 (k={k})")
    if d < 0:
        raise ValueError(f"Degré de régularité négatif: {d}")
    w_order, z_order = f.ring.order_of("w"), f.ring.order_of("z")
    if z_order < 2 * w_order - d:
        raise TruncationTooSmall(
            f"Ordre en z {z_order} insuffisant pour interpoler jusqu'à w^{w_order}",
            {"w_order": w_order, "z_order": z_order, "d": d})
    fit = RegularityFit(k, d)
    for m in range(w_order + 1):
        bound = fit.degree_bound(m)
        samples = list(range(bound + 1))
        values = []
        for n in samples:
            value = f.coefficient((m, n)) / generalized_binomial(k * m, n)
            values.append(-value if n % 2 else value)
        coeffs = interpolate_polynomial(samples, values) if samples else []
        fit.polynomials[m] = coeffs
        for n in range(bound + 1, z_order + 1):
            expected = QQ.zero
            if coeffs and n <= k * m:
                expected = evaluate_polynomial(coeffs, QQ(n)) * generalized_binomial(k * m, n)
                if n % 2:
                    expected = -expected
            actual = f.coefficient((m, n))
            if actual != expected:
                raise ValidationFailure(
                    f"Série non {d}-régulière en w^{m} z^{n}", m, n,
                    {"k": k, "expected": str(expected), "actual": str(actual)})
    logger.debug(f"Régularité d={d} validée pour k={k} jusqu'à w^{w_order} z^{z_order}")
    return fit


def chern_limit(fit: RegularityFit, w_order: int) -> TruncatedSeries:
    """Σ_m (-1)^d [x^{2m-d}] p_m (km)_{(2m-d)} w^m"""
    sign = -1 if fit.d % 2 else 1
    coeffs = []
    for m in range(w_order + 1):
        bound = fit.degree_bound(m)
        if bound < 0:
            coeffs.append(QQ.zero)
            continue
        coeffs.append(fit.top_coefficient(m) * falling_factorial(fit.k * m, bound) * sign)
    return SeriesRing(("w",), (w_order,), QQ).from_univariate("w", coeffs)


def verlinde_limit(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Σ_m f_{m,km} w^m"""
    w_order, z_order = f.ring.order_of("w"), f.ring.order_of("z")
    if z_order < k * w_order:
        raise TruncationTooSmall(
            f"Ordre en z {z_order} inférieur à k * ordre en w = {k * w_order}",
            {"k": k, "w_order": w_order, "z_order": z_order})
    coeffs = [f.coefficient((m, k * m)) for m in range(w_order + 1)]
    return SeriesRing(("w",), (w_order,), QQ).from_univariate("w", coeffs)


def chern_variable(k: int, order: int) -> TruncatedSeries:
    """y (1 - (k-1) y)^{k-2}"""
    ring = y_ring(order)
    y = ring.gen("y")
    return y * (ring.one() - y.scale(k - 1)) ** (k - 2)


def verlinde_variable(k: int, order: int) -> TruncatedSeries:
    """(-1)^k y (1 - y)^{k(k-2)}"""
    ring = y_ring(order)
    y = ring.gen("y")
    return (y * (ring.one() - y) ** (k * (k - 2))).scale(-1 if k % 2 else 1)


def _rename(series: TruncatedSeries, ring: SeriesRing) -> TruncatedSeries:
    return TruncatedSeries(ring, dict(series.terms))


def limit_pullback(limit: TruncatedSeries, variable: TruncatedSeries) -> TruncatedSeries:
    """limit(variable(y)) pour une limite en w"""
    return _rename(limit, SeriesRing(("y",), limit.ring.orders, QQ)).compose(variable)


@dataclass
class SymRegSeries:
    k: int
    f: TruncatedSeries
    certified_symmetric: bool = False
    certified_regular: bool = False
    fit: Optional[RegularityFit] = None

    @classmethod
    def from_h(cls, h: TruncatedSeries, k: int, w_order: int, z_order: int,
               pipeline: str = "both") -> "SymRegSeries":
        return cls(k, h_to_f(h, k, w_order, z_order, pipeline))

    def certify(self, d: int = 0) -> "SymRegSeries":
        """Symétrie puis d-régularité; lève ValidationFailure au premier écart"""
        defect = symmetric_defect(self.f)
        if defect is not None:
            (m, n), expected, actual = defect
            raise ValidationFailure(
                f"Série non symétrique en w^{m} z^{n}", m, n,
                {"expected": str(expected), "actual": str(actual)})
        self.certified_symmetric = True
        self.fit = fit_regularity(self.f, self.k, d)
        self.certified_regular = True
        return self

    def h(self) -> TruncatedSeries:
        return f_to_h(self.f, self.k)

    def chern_limit(self) -> TruncatedSeries:
        if self.fit is None:
            self.certify()
        return chern_limit(self.fit, self.f.ring.order_of("w"))

    def verlinde_limit(self) -> TruncatedSeries:
        return verlinde_limit(self.f, self.k)
