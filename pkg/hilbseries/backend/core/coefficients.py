"""
Exact coefficient domains

Created: 2024-11-04
"""
# backend/core/coefficients.py
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import field

from backend.utils.exceptions import NonConstantResult

# Q(q,t): coefficients of the master partition function
QT_FIELD, Q_GEN, T_GEN = field("q,t", QQ)
QT = QT_FIELD.to_domain()

# Q(c): symbolic slope t1 = s, t2 = c*s
C_FIELD, C_GEN = field("c", QQ)
QC = C_FIELD.to_domain()

Scalar = Union[int, Fraction, Any]


def lift(value: Scalar, domain):
    """Convertit un entier, une Fraction ou un élément de QQ dans le domaine cible"""
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return domain.convert(value)
    if isinstance(value, Fraction):
        value = QQ(value.numerator, value.denominator)
        return value if domain == QQ else domain.convert(value, QQ)
    if domain.of_type(value):
        return value
    if QQ.of_type(value):
        return domain.convert(value, QQ)
    return domain.convert(value)


def convert_coefficient(value, source, target):
    if source == target:
        return value
    return target.convert(value, source)


@lru_cache(maxsize=None)
def _inverse_integer_qq(n: int):
    return QQ(1, n)


def inverse_integer(n: int, domain):
    """1/n dans le domaine (n non nul)"""
    inv = _inverse_integer_qq(n)
    return inv if domain == QQ else domain.convert(inv, QQ)


def ground_value(value, domain) -> Optional[Any]:
    """Valeur rationnelle d'un coefficient constant, None si le coefficient dépend des paramètres"""
    if domain == QQ:
        return value
    numer, denom = value.numer, value.denom
    if not numer:
        return QQ.zero
    if not (numer.is_ground and denom.is_ground):
        return None
    return QQ.convert(numer.LC, numer.ring.domain) / QQ.convert(denom.LC, denom.ring.domain)


def require_ground(value, domain, context: str = ""):
    result = ground_value(value, domain)
    if result is None:
        raise NonConstantResult(
            f"Le coefficient {value} n'est pas constant {context}".strip(),
            {"coefficient": value}
        )
    return result


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def is_integral(value) -> bool:
    return int(value.denominator) == 1


def coefficient_strings(value, domain) -> Tuple[str, str]:
    """Numérateur et dénominateur sous forme de chaînes (format canonique)"""
    if domain == QQ:
        return str(int(value.numerator)), str(int(value.denominator))
    return str(value.numer.as_expr()), str(value.denom.as_expr())


def adams_qt(value, n: int):
    """Opération d'Adams (q, t) -> (q^n, t^n) sur un élément de Q(q,t)"""
    if n == 1 or not value:
        return value
    ring = QT_FIELD.ring

    def scale(poly):
        return ring.from_dict({tuple(e * n for e in monom): coeff for monom, coeff in poly.items()})

    return QT_FIELD.new(scale(value.numer), scale(value.denom))


def qt_monomial(a: int, b: int):
    """q^a t^b, exposants éventuellement négatifs"""
    result = QT.one
    if a:
        result *= Q_GEN ** a
    if b:
        result *= T_GEN ** b
    return result
