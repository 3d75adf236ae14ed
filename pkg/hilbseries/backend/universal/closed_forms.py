"""
Closed forms of the universal series

Created: 2024-11-04
"""
# backend/universal/closed_forms.py
import logging
from typing import Optional

from sympy.polys.domains import QQ

from backend.closedform.brackets import bracket_constant_term
from backend.core.series import TruncatedSeries
from backend.universal.symreg import y_ring
from backend.universal.uvchart import UVChart

logger = logging.getLogger(__name__)


# Séries h(y) en une variable

def c_h_series(k: int, order: int) -> TruncatedSeries:
    """-k(k-1) y / (1 - (k-1)^2 y)"""
    coeffs = [QQ.zero] + [QQ(-k * (k - 1) * (k - 1) ** (2 * (n - 1))) for n in range(1, order + 1)]
    return y_ring(order).from_univariate("y", coeffs)


def c_prime_h_series(order: int) -> TruncatedSeries:
    """log(1 - y)"""
    return y_ring(order).from_univariate("y", [QQ.zero] + [QQ(-1, n) for n in range(1, order + 1)])


def d_h_series(k: int, order: int) -> TruncatedSeries:
    """h_a = -(k / 2a) [x^0] ((x^{k-1} - x^{1-k}) / (x - 1/x))^{2a}"""
    coeffs = [QQ.zero] + [QQ(-k * bracket_constant_term(k, a), 2 * a) for a in range(1, order + 1)]
    return y_ring(order).from_univariate("y", coeffs)


def g3_h_series(k: int, order: int) -> TruncatedSeries:
    """log G3 en y: -(k-1)/2 log(1-y) - Σ c_n y^n / 2n"""
    coeffs = [QQ.zero]
    for n in range(1, order + 1):
        coeffs.append(QQ(k - 1 - bracket_constant_term(k, n), 2 * n))
    return y_ring(order).from_univariate("y", coeffs)


# Séries G_i(w, z)

def _g0(chart: UVChart) -> TruncatedSeries:
    one, u, v, k = chart.one, chart.u, chart.v, chart.k
    return (one - u - v) ** k * ((one - v) ** (k - 1) * ((one - u) ** (k - 1) - v)).invert()


def _g1(chart: UVChart) -> TruncatedSeries:
    one, u, v, k = chart.one, chart.u, chart.v, chart.k
    numerator = (one - v) ** (k - 2) * ((one - u) ** (k - 1) - v)
    return numerator * ((one - u) * (one - u - v) ** (k - 1)).invert()


def _g2(chart: UVChart) -> TruncatedSeries:
    one, u, v, k = chart.one, chart.u, chart.v, chart.k
    numerator = (one - chart.rho) ** 2 * (one - v) ** ((k - 2) ** 2) * ((one - u) ** (k - 1) - v) ** (2 * (k - 1))
    denominator = (one - u - v) ** ((k - 1) ** 2) * (one - u) ** (k * k - 2 * k) * chart.delta
    return numerator * denominator.invert()


def _g3(chart: UVChart) -> TruncatedSeries:
    order = max(chart.w_order, chart.z_order // 2, 1)
    return chart.pull_y(g3_h_series(chart.k, order)).exp()


_BUILDERS = {0: _g0, 1: _g1, 2: _g2, 3: _g3}


def closed_form_g(index: int, k: int, w_order: int, z_order: int,
                  chart: Optional[UVChart] = None) -> TruncatedSeries:
    """G_index(w, z) pour index dans {0, 1, 2, 3}"""
    if index not in _BUILDERS:
        raise ValueError(f"Pas de forme close pour G_{index}")
    if k < 1:
        raise ValueError(f"Formes closes établies pour k >= 1 seulement (k={k})")
    chart = chart or UVChart(k, w_order, z_order)
    series = _BUILDERS[index](chart)
    logger.debug(f"G_{index} évaluée pour k={k} à l'ordre ({w_order}, {z_order})")
    return series


def exp_k_closed(chart: UVChart) -> TruncatedSeries:
    """exp K_k = (1-v)^k (1-u)^{k²-k+1} / ((1-ρ) ((1-u)^{k-1} - v)^k)"""
    one, u, v, k = chart.one, chart.u, chart.v, chart.k
    numerator = (one - v) ** k * (one - u) ** (k * k - k + 1)
    return numerator * ((one - chart.rho) * ((one - u) ** (k - 1) - v) ** k).invert()


def f_minus_two_e_closed(chart: UVChart) -> TruncatedSeries:
    """24(F - 2E) = (1-k²) log((1-u-v)/((1-u)(1-v))) - log(Δ/((1-u)(1-v)))"""
    one, u, v, k = chart.one, chart.u, chart.v, chart.k
    base = ((one - u) * (one - v)).invert()
    first = ((one - u - v) * base).log().scale(1 - k * k)
    return first - (chart.delta * base).log()


# Séries A et B connues, en y

def chern_x(r: int, order: int) -> TruncatedSeries:
    """x = -y (1 - r y)^{r-1}"""
    ring = y_ring(order)
    y = ring.gen("y")
    return -(y * (ring.one() - y.scale(r)) ** (r - 1))


def verlinde_t(r: int, order: int) -> TruncatedSeries:
    """t = -y (1 - y)^{r²-1}"""
    ring = y_ring(order)
    y = ring.gen("y")
    return -(y * (ring.one() - y) ** (r * r - 1))


def known_a_series(index: int, r: int, order: int) -> TruncatedSeries:
    """A_0, A_1, A_2 comme séries en y"""
    ring = y_ring(order)
    one, y = ring.one(), ring.gen("y")
    if index == 0:
        return (one - y) ** (r + 1) * (one - y.scale(r)).invert()
    if index == 1:
        return (one - y.scale(r)) * ((one - y) ** r).invert()
    if index == 2:
        return (one - y.scale(r)) ** (2 * r) * ((one - y) ** (r * r) * (one - y.scale(r * r))).invert()
    raise ValueError(f"A_{index} n'a pas de forme close connue")


def known_b_series(index: int, r: int, order: int) -> TruncatedSeries:
    """B_0 = 1, B_1, B_2 comme séries en y"""
    ring = y_ring(order)
    one, y = ring.one(), ring.gen("y")
    if index == 0:
        return one
    if index == 1:
        return one - y
    if index == 2:
        return (one - y) ** (r * r) * (one - y.scale(r * r)).invert()
    raise ValueError(f"B_{index} n'a pas de forme close connue")
