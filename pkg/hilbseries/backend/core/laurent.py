"""
Truncated Laurent series in one variable

Created: 2024-11-04
"""
# backend/core/laurent.py
from typing import List, Optional, Sequence

from sympy.polys.domains import QQ

from backend.core.coefficients import inverse_integer, lift


class LaurentSeries:
    """Série de Laurent tronquée: coefficients de s^valuation ... s^precision (précision absolue)"""

    __slots__ = ("var", "domain", "valuation", "coeffs", "precision")

    def __init__(self, valuation: int, coeffs: Sequence, precision: int, domain=QQ, var: str = "s"):
        self.var = var
        self.domain = domain
        values = [lift(c, domain) for c in coeffs[: max(precision - valuation + 1, 0)]]
        # leading zeros are absorbed into the valuation
        start = 0
        while start < len(values) and not values[start]:
            start += 1
        self.valuation = valuation + start
        self.coeffs: List = values[start:]
        while self.coeffs and not self.coeffs[-1]:
            self.coeffs.pop()
        self.precision = precision
        if not self.coeffs:
            self.valuation = precision + 1

    # Constructors

    @classmethod
    def zero(cls, precision: int, domain=QQ, var: str = "s") -> "LaurentSeries":
        return cls(precision + 1, [], precision, domain, var)

    @classmethod
    def constant(cls, value, precision: int, domain=QQ, var: str = "s") -> "LaurentSeries":
        return cls(0, [value], precision, domain, var)

    @classmethod
    def monomial(cls, power: int, precision: int, coeff=1, domain=QQ, var: str = "s") -> "LaurentSeries":
        return cls(power, [coeff], precision, domain, var)

    @classmethod
    def exp_series(cls, a, precision: int, domain=QQ, var: str = "s") -> "LaurentSeries":
        """e^{a s}"""
        a = lift(a, domain)
        coeffs = []
        term = domain.one
        for j in range(precision + 1):
            coeffs.append(term)
            term = term * a * inverse_integer(j + 1, domain)
        return cls(0, coeffs, precision, domain, var)

    @classmethod
    def difference_quotient(cls, a, b, precision: int, domain=QQ, var: str = "s") -> "LaurentSeries":
        """(e^{a s} - e^{b s}) / s, développée jusqu'à s^precision"""
        a = lift(a, domain)
        b = lift(b, domain)
        coeffs = []
        pa = a
        pb = b
        fact = domain.one
        for j in range(precision + 1):
            fact = fact * inverse_integer(j + 1, domain)
            coeffs.append((pa - pb) * fact)
            pa = pa * a
            pb = pb * b
        return cls(0, coeffs, precision, domain, var)

    @classmethod
    def binomial(cls, exponent: int, precision: int, domain=QQ, var: str = "s") -> "LaurentSeries":
        """(1 + s)^exponent pour un exposant entier"""
        coeffs = []
        c = domain.one
        for j in range(precision + 1):
            coeffs.append(c)
            c = c * (exponent - j) * inverse_integer(j + 1, domain)
        return cls(0, coeffs, precision, domain, var)

    # Inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int):
        if power > self.precision:
            raise ValueError(f"Coefficient de {self.var}^{power} au-delà de la précision {self.precision}")
        index = power - self.valuation
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return self.domain.zero

    def constant_term(self):
        return self.coefficient(0) if self.precision >= 0 else self.domain.zero

    def principal_part(self) -> "LaurentSeries":
        if self.valuation >= 0:
            return LaurentSeries.zero(-1, self.domain, self.var)
        return LaurentSeries(self.valuation, self.coeffs[: -self.valuation], -1, self.domain, self.var)

    def has_pole(self) -> bool:
        return self.valuation < 0 and not self.principal_part().is_zero()

    def leading_coefficient(self):
        return self.coeffs[0] if self.coeffs else self.domain.zero

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"O({self.var}^{self.precision + 1})"
        parts = [
            f"({c})*{self.var}^{self.valuation + i}" for i, c in enumerate(self.coeffs) if c
        ]
        return " + ".join(parts) + f" + O({self.var}^{self.precision + 1})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        precision = min(self.precision, other.precision)
        low = min(self.valuation, other.valuation)
        return all(self.coefficient(p) == other.coefficient(p) for p in range(low, precision + 1))

    __hash__ = None

    # Arithmetic

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.domain != self.domain:
                raise TypeError("Domaines de coefficients incompatibles")
            return other
        return LaurentSeries.constant(other, self.precision, self.domain, self.var)

    def __add__(self, other) -> "LaurentSeries":
        other = self._coerce(other)
        precision = min(self.precision, other.precision)
        low = min(self.valuation, other.valuation)
        coeffs = [self.coefficient(p) + other.coefficient(p) for p in range(low, precision + 1)]
        return LaurentSeries(low, coeffs, precision, self.domain, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.precision, self.domain, self.var)

    def __sub__(self, other) -> "LaurentSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentSeries":
        return self._coerce(other) - self

    def scale(self, value) -> "LaurentSeries":
        c = lift(value, self.domain)
        return LaurentSeries(self.valuation, [c * x for x in self.coeffs], self.precision, self.domain, self.var)

    def shift(self, power: int) -> "LaurentSeries":
        """Multiplication par s^power"""
        return LaurentSeries(
            self.valuation + power, self.coeffs, self.precision + power, self.domain, self.var)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            precision = min(self.precision + other.valuation, other.precision + self.valuation)
            return LaurentSeries.zero(precision, self.domain, self.var)
        valuation = self.valuation + other.valuation
        precision = min(self.precision + other.valuation, other.precision + self.valuation)
        size = precision - valuation + 1
        coeffs = [self.domain.zero] * max(size, 0)
        for i, a in enumerate(self.coeffs):
            if i >= size:
                break
            for j, b in enumerate(other.coeffs):
                if i + j >= size:
                    break
                coeffs[i + j] += a * b
        return LaurentSeries(valuation, coeffs, precision, self.domain, self.var)

    __rmul__ = __mul__

    def invert(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("Inversion d'une série de Laurent nulle à cette précision")
        lead = self.coeffs[0]
        inv_lead = self.domain.one / lead
        size = self.precision - self.valuation + 1
        result: List = []
        for n in range(size):
            if n == 0:
                result.append(inv_lead)
                continue
            acc = self.domain.zero
            for j in range(1, min(n, len(self.coeffs) - 1) + 1):
                acc += self.coeffs[j] * result[n - j]
            result.append(-acc * inv_lead)
        return LaurentSeries(
            -self.valuation, result, self.precision - 2 * self.valuation, self.domain, self.var)

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.invert()
        c = lift(other, self.domain)
        if not c:
            raise ZeroDivisionError("Division par zéro")
        return self.scale(self.domain.one / c)

    def __pow__(self, exponent: int) -> "LaurentSeries":
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = LaurentSeries.constant(1, self.precision - self.valuation, self.domain, self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def truncate(self, precision: int) -> "LaurentSeries":
        return LaurentSeries(
            self.valuation, self.coeffs, min(precision, self.precision), self.domain, self.var)


def laurent_product(factors: Sequence[LaurentSeries], precision: Optional[int] = None) -> LaurentSeries:
    """Produit d'une liste non vide de séries de Laurent"""
    result = factors[0]
    for factor in factors[1:]:
        result = result * factor
    return result.truncate(precision) if precision is not None else result
