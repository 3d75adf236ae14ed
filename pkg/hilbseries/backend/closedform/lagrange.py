"""
Lagrange inversion and power sums of inverse branches

Created: 2024-11-04
"""
# backend/closedform/lagrange.py
import logging
from dataclasses import dataclass, field
from typing import Dict, List

from sympy.polys.domains import QQ

from backend.core.laurent import LaurentSeries
from backend.core.series import SeriesRing, TruncatedSeries
from backend.utils.exceptions import BadConstantTerm, TruncationTooSmall

logger = logging.getLogger(__name__)


def _check_leading(F: LaurentSeries) -> int:
    m = -F.valuation
    if m < 1:
        raise ValueError(f"F doit avoir un pôle d'ordre m >= 1 (valuation {F.valuation})")
    if F.leading_coefficient() != QQ.one:
        raise BadConstantTerm("F doit commencer par y^{-m}", {"leading": str(F.leading_coefficient())})
    return m


def lagrange_exp_log(F: LaurentSeries, order: int) -> TruncatedSeries:
    """exp(Σ_{n>=1} u^n/n [y^0] F^n) pour F = y^{-m} + ...

    Vaut (Π_i g_i(u))/u, produit des m branches inverses de 1/F normalisé pour commencer par u.
    """
    m = _check_leading(F)
    needed = (order - 1) * m
    if F.precision < needed:
        raise TruncationTooSmall(
            f"F connue jusqu'à y^{F.precision}, il faut y^{needed}",
            {"needed": needed, "available": F.precision})
    ring = SeriesRing(("u",), (order,), QQ)
    coeffs = [QQ.zero]
    power = F
    for n in range(1, order + 1):
        coeffs.append(power.constant_term() / n)
        if n < order:
            power = power * F
    return ring.from_univariate("u", coeffs).exp()


def _shift_down(series: TruncatedSeries, order: int, name: str = "u") -> TruncatedSeries:
    """series / x pour une série de valuation >= 1, dans un anneau d'ordre order"""
    ring = SeriesRing((name,), (order,), QQ)
    return ring.from_univariate(name, [series.coefficient((j + 1,)) for j in range(order + 1)])


def single_branch_quotient(F: LaurentSeries, order: int) -> TruncatedSeries:
    """g(u)/u, g l'inverse de composition de 1/F, pour F = 1/y + ..."""
    if _check_leading(F) != 1:
        raise ValueError("Une seule branche exige F = 1/y + ...")
    if F.precision + 2 < order + 1:
        raise TruncationTooSmall(
            f"F connue jusqu'à y^{F.precision}, il faut y^{order - 1}",
            {"needed": order - 1, "available": F.precision})
    inverse = F.invert()
    ring = SeriesRing(("y",), (order + 1,), QQ)
    small = ring.from_univariate("y", [inverse.coefficient(j) for j in range(order + 2)])
    g = small.compositional_inverse()
    return _shift_down(g, order)


def two_branch_quotient(F: LaurentSeries, order: int) -> TruncatedSeries:
    """-g(s) g(-s)/s² en u = s², g l'inverse de 1/F^{1/2}, pour F = y^{-2} + ..."""
    if _check_leading(F) != 2:
        raise ValueError("Deux branches exigent F = y^{-2} + ...")
    s_order = 2 * order + 2
    if F.precision < 2 * order:
        raise TruncationTooSmall(
            f"F connue jusqu'à y^{F.precision}, il faut y^{2 * order}",
            {"needed": 2 * order, "available": F.precision})
    ring = SeriesRing(("y",), (s_order,), QQ)
    unit = ring.from_univariate("y", [F.coefficient(j - 2) for j in range(s_order + 1)])
    reciprocal = ring.gen("y") * unit.power(QQ(1, 2)).invert()
    g = TruncatedSeries(SeriesRing(("s",), (s_order,), QQ), dict(reciprocal.compositional_inverse().terms))
    minus_s = g.ring.gen("s").scale(-1)
    product = -(g * g.compose(minus_s))
    ring_u = SeriesRing(("u",), (order,), QQ)
    terms = {}
    for (power,), coeff in product.terms.items():
        if power % 2:
            raise ValueError("Produit des deux branches non pair en s")
        if power >= 2 and power // 2 - 1 <= order:
            terms[(power // 2 - 1,)] = coeff
    return TruncatedSeries(ring_u, terms)


def branch_function(r: int, order: int) -> TruncatedSeries:
    """f(x)^{1/(r-1)} = x (1 + x + ... + x^{r-1})^{-2/(r-1)} en la variable s"""
    ring = SeriesRing(("s",), (order,), QQ)
    block = ring.from_univariate("s", [1] * r)
    return ring.gen("s") * block.power(QQ(-2, r - 1))


@dataclass
class BranchSystem:
    """Les r - 1 branches α_i(y) de l'inverse de f(x) = ((x^{1/2} - x^{-1/2})/(x^{r/2} - x^{-r/2}))²,
    connues par leurs sommes de puissances P_j(y) = Σ_i α_i(y)^j."""
    r: int
    y_order: int
    g: TruncatedSeries = field(init=False)
    _powers: Dict[int, TruncatedSeries] = field(default_factory=dict, init=False, repr=False)
    _sums: Dict[int, TruncatedSeries] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"Système de branches défini pour r >= 2 (r={self.r})")
        self.g = branch_function(self.r, (self.r - 1) * self.y_order).compositional_inverse()
        self._powers[1] = self.g

    @property
    def multiplicity(self) -> int:
        return self.r - 1

    def g_power(self, j: int) -> TruncatedSeries:
        if j not in self._powers:
            self._powers[j] = self.g_power(j - 1) * self.g
        return self._powers[j]

    def power_sum(self, j: int) -> TruncatedSeries:
        """P_j(y) = (r-1) Σ_m c_{(r-1)m} y^m, c les coefficients de g(s)^j"""
        if j not in self._sums:
            step = self.multiplicity
            ring = SeriesRing(("y",), (self.y_order,), QQ)
            if j > step * self.y_order:
                self._sums[j] = ring.zero()
            else:
                gj = self.g_power(j)
                coeffs = [gj.coefficient((step * m,)) * step for m in range(self.y_order + 1)]
                self._sums[j] = ring.from_univariate("y", coeffs)
        return self._sums[j]


def branch_power_sums(r: int, j_max: int, y_order: int) -> List[TruncatedSeries]:
    """[P_1, ..., P_{j_max}] en y"""
    system = BranchSystem(r, y_order)
    sums = [system.power_sum(j) for j in range(1, j_max + 1)]
    logger.debug(f"Sommes de puissances des branches calculées pour r={r} jusqu'à j={j_max}")
    return sums
