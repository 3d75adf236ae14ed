"""
Slope lines t1 = s, t2 = c*s

Created: 2024-11-04
"""
# backend/partfun/slope.py
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from backend.core.coefficients import C_GEN, QC, ground_value, inverse_integer, lift
from backend.utils.config import ConfigManager
from backend.utils.exceptions import DegenerateSlope, SlopeDependence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlopeLine:
    """Droite (a1, a2) = (s, c s); slope=None pour la pente symbolique c de Q(c)"""
    slope: Optional[Fraction] = None

    @property
    def symbolic(self) -> bool:
        return self.slope is None

    @property
    def domain(self):
        return QC if self.symbolic else QQ

    @property
    def c(self):
        if self.symbolic:
            return QC.convert(C_GEN)
        return lift(self.slope, QQ)

    def weight(self, a1: int, a2: int):
        """Forme linéaire a1*x + a2*y évaluée sur la droite, divisée par s"""
        return lift(a1, self.domain) + lift(a2, self.domain) * self.c

    def label(self) -> str:
        return "c" if self.symbolic else str(self.slope)

    def require_nonzero(self, value, context: str):
        if not value:
            raise DegenerateSlope(
                f"Forme linéaire nulle sur la droite de pente {self.label()} ({context})",
                {"slope": self.label(), "context": context})
        return value


SYMBOLIC = SlopeLine(None)


def exp_coefficients(gamma, order: int, domain) -> List:
    """Coefficients de e^{γ s} jusqu'à s^order"""
    coeffs = []
    term = domain.one
    for j in range(order + 1):
        coeffs.append(term)
        term = term * gamma * inverse_integer(j + 1, domain)
    return coeffs


def dq_coefficients(a, b, order: int, domain) -> List:
    """(e^{a s} - e^{b s}) / s = Σ_j (a^{j+1} - b^{j+1}) / (j+1)! s^j"""
    coeffs = []
    pa, pb = a, b
    fact = domain.one
    for j in range(order + 1):
        fact = fact * inverse_integer(j + 1, domain)
        coeffs.append((pa - pb) * fact)
        pa = pa * a
        pb = pb * b
    return coeffs


def numeric_slopes(count: int, configured: Optional[Sequence[Fraction]] = None) -> List[SlopeLine]:
    """Pentes numériques: celles de la configuration, complétées par p/(p+6) pour p premier"""
    if configured is None:
        configured = ConfigManager.settings().slopes
    slopes = list(configured)
    for p in (23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        if len(slopes) >= count:
            break
        candidate = Fraction(p, p + 6)
        if candidate not in slopes:
            slopes.append(candidate)
    if len(slopes) < count:
        raise ValueError(f"Pas assez de pentes numériques ({count} demandées)")
    return [SlopeLine(Fraction(s)) for s in slopes[:count]]


def c_polynomial(value, degree: int) -> List:
    """Coefficients rationnels de c*value, polynôme en c de degré <= degree"""
    shifted = value * QC.convert(C_GEN)
    numer, denom = shifted.numer, shifted.denom
    if not denom.is_ground:
        raise SlopeDependence(
            "Coefficient non polynomial en la pente", {"value": value})
    scale = QQ.convert(denom.LC, denom.ring.domain)
    coeffs = [QQ.zero] * (degree + 1)
    for (power,), coeff in numer.terms():
        if power > degree:
            raise SlopeDependence(
                f"Degré en c supérieur à {degree}", {"value": value})
        coeffs[power] = QQ.convert(coeff, numer.ring.domain) / scale
    return coeffs


def interpolate_polynomial(points: Sequence, values: Sequence) -> List:
    """Coefficients du polynôme de degré < len(points) passant par les points (Vandermonde sur QQ)"""
    size = len(points)
    rows = [[lift(x, QQ) ** j for j in range(size)] for x in points]
    matrix = DomainMatrix(rows, (size, size), QQ)
    rhs = DomainMatrix([[lift(v, QQ)] for v in values], (size, 1), QQ)
    solution = matrix.lu_solve(rhs)
    return [row[0] for row in solution.to_list()]


def evaluate_polynomial(coeffs: Sequence, x) -> object:
    result = QQ.zero
    for coeff in reversed(coeffs):
        result = result * x + coeff
    return result


def separate_by_slope(samples: Dict[SlopeLine, object], degree: int, validation: bool = True) -> List:
    """Reconstruit c*value = Σ_j a_j c^j à partir des valeurs numériques en deg+1 pentes, plus validation"""
    slopes = list(samples)
    needed = degree + 1
    if len(slopes) < needed:
        raise ValueError(f"{needed} pentes nécessaires, {len(slopes)} fournies")
    fit = slopes[:needed]
    xs = [lift(s.slope, QQ) for s in fit]
    ys = [xs[i] * samples[s] for i, s in enumerate(fit)]
    coeffs = interpolate_polynomial(xs, ys)
    if validation:
        for extra in slopes[needed:]:
            x = lift(extra.slope, QQ)
            if evaluate_polynomial(coeffs, x) != x * samples[extra]:
                raise SlopeDependence(
                    f"Validation échouée à la pente {extra.label()}",
                    {"slope": extra.label()})
    return coeffs


def ground_or_raise(value, line: SlopeLine, context: str = ""):
    result = ground_value(value, line.domain)
    if result is None:
        raise SlopeDependence(f"Résultat dépendant de la pente {context}".strip(), {"value": value})
    return result
