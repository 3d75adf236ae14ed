"""
Truncated multivariate power series

Created: 2024-11-04
"""
# backend/core/series.py
import itertools
import logging
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp, rs_log, rs_pow, rs_series_inversion, rs_series_reversion
from sympy.polys.rings import ring as polynomial_ring

from backend.core.coefficients import convert_coefficient, inverse_integer, lift
from backend.utils.exceptions import (
    BadConstantTerm,
    NonUnitConstantTerm,
    NonUnitLinearTerm,
    NonzeroConstantTerm,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

# QQ[x, y] pour les séries en une variable sur QQ; y porte l'inverse compositionnel
_RS_RING, _RS_X, _RS_Y = polynomial_ring("x,y", QQ)


class SeriesRing:
    """Anneau de séries tronquées: variables nommées, ordre de troncature par variable"""

    __slots__ = ("names", "orders", "domain", "_index", "_box")

    def __init__(self, names: Sequence[str], orders: Sequence[int], domain=QQ):
        names = tuple(names)
        orders = tuple(int(order) for order in orders)
        if len(names) != len(orders):
            raise ValueError("Autant d'ordres que de variables sont requis")
        if len(set(names)) != len(names):
            raise ValueError(f"Noms de variables dupliqués: {names}")
        if any(order < 0 for order in orders):
            raise ValueError(f"Ordres de troncature négatifs: {orders}")
        self.names = names
        self.orders = orders
        self.domain = domain
        self._index = {name: i for i, name in enumerate(names)}
        self._box: Optional[List[Exponent]] = None

    # Structure

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"Variable inconnue {name!r} dans {self.names}")

    def order_of(self, name: str) -> int:
        return self.orders[self.index(name)]

    def in_box(self, exp: Exponent) -> bool:
        return all(e <= o for e, o in zip(exp, self.orders))

    def box_exponents(self) -> List[Exponent]:
        """Tous les exposants de la boîte, triés par degré total puis lexicographiquement"""
        if self._box is None:
            box = list(itertools.product(*(range(o + 1) for o in self.orders)))
            box.sort(key=lambda e: (sum(e), e))
            self._box = box
        return self._box

    def with_orders(self, **orders: int) -> "SeriesRing":
        new_orders = list(self.orders)
        for name, order in orders.items():
            new_orders[self.index(name)] = order
        return SeriesRing(self.names, new_orders, self.domain)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesRing)
            and self.names == other.names
            and self.orders == other.orders
            and self.domain == other.domain
        )

    def __hash__(self) -> int:
        return hash((self.names, self.orders, str(self.domain)))

    def __repr__(self) -> str:
        spec = ", ".join(f"{n}<={o}" for n, o in zip(self.names, self.orders))
        return f"SeriesRing({spec}; {self.domain})"

    # Elements

    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, {}, _trusted=True)

    def one(self) -> "TruncatedSeries":
        return self.scalar(1)

    def scalar(self, value) -> "TruncatedSeries":
        c = lift(value, self.domain)
        if not c:
            return self.zero()
        return TruncatedSeries(self, {(0,) * self.nvars: c}, _trusted=True)

    def gen(self, name: str) -> "TruncatedSeries":
        return self.monomial({name: 1})

    def gens(self) -> Tuple["TruncatedSeries", ...]:
        return tuple(self.gen(name) for name in self.names)

    def monomial(self, powers: Union[Mapping[str, int], Exponent], coeff=1) -> "TruncatedSeries":
        exp = self._as_exponent(powers)
        if not self.in_box(exp):
            return self.zero()
        return TruncatedSeries(self, {exp: lift(coeff, self.domain)})

    def from_dict(self, terms: Mapping[Exponent, object]) -> "TruncatedSeries":
        return TruncatedSeries(self, {tuple(e): lift(c, self.domain) for e, c in terms.items()})

    def from_univariate(self, name: str, coeffs: Sequence) -> "TruncatedSeries":
        """Série en une seule variable à partir de la liste de ses coefficients"""
        i = self.index(name)
        terms = {}
        for power, coeff in enumerate(coeffs):
            exp = [0] * self.nvars
            exp[i] = power
            terms[tuple(exp)] = coeff
        return self.from_dict(terms)

    def _as_exponent(self, powers) -> Exponent:
        if isinstance(powers, Mapping):
            exp = [0] * self.nvars
            for name, power in powers.items():
                exp[self.index(name)] = power
            return tuple(exp)
        exp = tuple(powers)
        if len(exp) != self.nvars:
            raise ValueError(f"Exposant {exp} incompatible avec {self.names}")
        return exp


def _divisors(exp: Exponent, limits: Exponent) -> Iterator[Exponent]:
    return itertools.product(*(range(min(e, m) + 1) for e, m in zip(exp, limits)))


class TruncatedSeries:
    """Série entière tronquée (boîte d'ordres par variable), coefficients exacts"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SeriesRing, terms: Optional[Dict[Exponent, object]] = None, _trusted: bool = False):
        self.ring = ring
        if terms is None:
            terms = {}
        if not _trusted:
            orders = ring.orders
            terms = {
                e: c for e, c in terms.items()
                if c and all(x <= o for x, o in zip(e, orders))
            }
        self.terms = terms

    # Inspection

    @property
    def domain(self):
        return self.ring.domain

    def items(self) -> List[Tuple[Exponent, object]]:
        return sorted(self.terms.items())

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, powers: Union[Mapping[str, int], Exponent]):
        exp = self.ring._as_exponent(powers)
        return self.terms.get(exp, self.domain.zero)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.domain.zero)

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.ring.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.ring.nvars))

    def valuation(self, name: Optional[str] = None) -> Optional[int]:
        """Degré minimal (total, ou en une variable); None pour la série nulle"""
        if not self.terms:
            return None
        if name is None:
            return min(sum(e) for e in self.terms)
        i = self.ring.index(name)
        return min(e[i] for e in self.terms)

    def first_difference(self, other: "TruncatedSeries") -> Optional[Tuple[Exponent, object, object]]:
        other = self._coerce(other)
        zero = self.domain.zero
        for exp in sorted(set(self.terms) | set(other.terms)):
            a = self.terms.get(exp, zero)
            b = other.terms.get(exp, zero)
            if a - b:
                return exp, a, b
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            if self.ring != other.ring:
                return False
        else:
            try:
                other = self.ring.scalar(other)
            except Exception:
                return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.items():
            mono = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(self.ring.names, exp) if power
            )
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts)

    # Arithmetic

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.ring != self.ring:
                raise TypeError(f"Anneaux incompatibles: {self.ring} et {other.ring}")
            return other
        return self.ring.scalar(other)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            value = terms.get(e)
            if value is None:
                terms[e] = c
            else:
                value = value + c
                if value:
                    terms[e] = value
                else:
                    del terms[e]
        return TruncatedSeries(self.ring, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._coerce(other) - self

    def scale(self, value) -> "TruncatedSeries":
        c = lift(value, self.domain)
        if not c:
            return self.ring.zero()
        return TruncatedSeries(self.ring, {e: c * v for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            small, large = self.terms, other.terms
        else:
            small, large = other.terms, self.terms
        if not small:
            return self.ring.zero()
        orders = self.ring.orders
        n = self.ring.nvars
        result: Dict[Exponent, object] = {}
        for e1, c1 in small.items():
            room = tuple(o - x for o, x in zip(orders, e1))
            for e2, c2 in large.items():
                ok = True
                for i in range(n):
                    if e2[i] > room[i]:
                        ok = False
                        break
                if not ok:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                value = result.get(e)
                result[e] = c1 * c2 if value is None else value + c1 * c2
        return TruncatedSeries(self.ring, {e: c for e, c in result.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        c = lift(other, self.domain)
        if not c:
            raise ZeroDivisionError("Division d'une série par zéro")
        return self.scale(self.domain.one / c)

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return self._coerce(other) * self.invert()

    def __pow__(self, exponent) -> "TruncatedSeries":
        if isinstance(exponent, int):
            if exponent < 0:
                return self.invert() ** (-exponent)
            result = self.ring.one()
            base = self
            while exponent:
                if exponent & 1:
                    result = result * base
                exponent >>= 1
                if exponent:
                    base = base * base
            return result
        return self.power(exponent)

    # One-variable series over QQ go through sympy.polys.ring_series

    def _univariate_qq(self) -> bool:
        return self.ring.nvars == 1 and self.domain == QQ

    def _precision(self) -> int:
        return self.ring.orders[0] + 1

    def _to_polynomial(self):
        return _RS_RING.from_dict({(e[0], 0): c for e, c in self.terms.items()})

    def _from_polynomial(self, poly, position: int = 0) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, {(monom[position],): c for monom, c in poly.items()})

    # Transcendental operations (recurrences on the total-degree Euler operator)

    def invert(self) -> "TruncatedSeries":
        """Inverse multiplicatif; le terme constant doit être inversible"""
        dom = self.domain
        c0 = self.constant_term()
        if not c0:
            raise NonUnitConstantTerm(
                "Le terme constant n'est pas inversible", {"ring": self.ring})
        if self._univariate_qq():
            return self._from_polynomial(rs_series_inversion(self._to_polynomial(), _RS_X, self._precision()))
        inv0 = dom.one / c0
        f = self.terms
        limits = self.max_exponents()
        zero_exp = (0,) * self.ring.nvars
        h: Dict[Exponent, object] = {zero_exp: inv0}
        for e in self.ring.box_exponents()[1:]:
            acc = None
            for e1 in _divisors(e, limits):
                if e1 == zero_exp:
                    continue
                c = f.get(e1)
                if not c:
                    continue
                d = h.get(tuple(a - b for a, b in zip(e, e1)))
                if not d:
                    continue
                acc = c * d if acc is None else acc + c * d
            if acc:
                value = -acc * inv0
                if value:
                    h[e] = value
        return TruncatedSeries(self.ring, h, _trusted=True)

    def log(self) -> "TruncatedSeries":
        """Logarithme d'une série de terme constant 1"""
        dom = self.domain
        if self.constant_term() != dom.one:
            raise BadConstantTerm(
                "Le logarithme exige un terme constant égal à 1",
                {"constant": self.constant_term()})
        if self._univariate_qq():
            return self._from_polynomial(rs_log(self._to_polynomial(), _RS_X, self._precision()))
        f = self.terms
        limits = self.max_exponents()
        zero_exp = (0,) * self.ring.nvars
        weighted: Dict[Exponent, object] = {}
        result: Dict[Exponent, object] = {}
        for e in self.ring.box_exponents()[1:]:
            deg = sum(e)
            fe = f.get(e)
            acc = fe * deg if fe else None
            for e1 in _divisors(e, limits):
                if e1 == zero_exp or e1 == e:
                    continue
                c = f.get(e1)
                if not c:
                    continue
                w = weighted.get(tuple(a - b for a, b in zip(e, e1)))
                if not w:
                    continue
                acc = -(c * w) if acc is None else acc - c * w
            if acc:
                weighted[e] = acc
                result[e] = acc * inverse_integer(deg, dom)
        return TruncatedSeries(self.ring, result, _trusted=True)

    def exp(self) -> "TruncatedSeries":
        """Exponentielle d'une série de terme constant nul"""
        dom = self.domain
        if self.constant_term():
            raise BadConstantTerm(
                "L'exponentielle exige un terme constant nul",
                {"constant": self.constant_term()})
        if self._univariate_qq():
            return self._from_polynomial(rs_exp(self._to_polynomial(), _RS_X, self._precision()))
        g = self.terms
        weighted_g = {e: c * sum(e) for e, c in g.items()}
        limits = self.max_exponents()
        zero_exp = (0,) * self.ring.nvars
        result: Dict[Exponent, object] = {zero_exp: dom.one}
        for e in self.ring.box_exponents()[1:]:
            acc = None
            for e1 in _divisors(e, limits):
                if e1 == zero_exp:
                    continue
                c = weighted_g.get(e1)
                if not c:
                    continue
                d = result.get(tuple(a - b for a, b in zip(e, e1)))
                if not d:
                    continue
                acc = c * d if acc is None else acc + c * d
            if acc:
                value = acc * inverse_integer(sum(e), dom)
                if value:
                    result[e] = value
        return TruncatedSeries(self.ring, result, _trusted=True)

    def power(self, exponent) -> "TruncatedSeries":
        """Puissance rationnelle (série binomiale généralisée); terme constant 1 si l'exposant n'est pas entier"""
        if isinstance(exponent, int):
            return self ** exponent
        a = lift(exponent, QQ)
        if int(a.denominator) == 1:
            return self ** int(a.numerator)
        c0 = self.constant_term()
        if c0 != self.domain.one:
            raise BadConstantTerm(
                "Une puissance fractionnaire exige un terme constant égal à 1",
                {"exponent": a, "constant": c0})
        if self._univariate_qq():
            exponent = Rational(int(a.numerator), int(a.denominator))
            return self._from_polynomial(rs_pow(self._to_polynomial(), exponent, _RS_X, self._precision()))
        return self.log().scale(lift(a, self.domain)).exp()

    def nth_root(self, n: int) -> "TruncatedSeries":
        return self.power(QQ(1, n))

    # Calculus

    def derivative(self, name: str) -> "TruncatedSeries":
        i = self.ring.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                shifted = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[shifted] = c * e[i]
        return TruncatedSeries(self.ring, terms, _trusted=True)

    def euler(self, name: str) -> "TruncatedSeries":
        """Opérateur d'Euler x d/dx"""
        i = self.ring.index(name)
        return TruncatedSeries(
            self.ring, {e: c * e[i] for e, c in self.terms.items() if e[i]}, _trusted=True)

    def map_coefficients(self, fn: Callable, ring: Optional[SeriesRing] = None) -> "TruncatedSeries":
        ring = ring or self.ring
        return TruncatedSeries(ring, {e: fn(c) for e, c in self.terms.items()})

    # Changes of variables

    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        """f(g) pour f en une variable, g de terme constant nul (schéma de Horner)"""
        if self.ring.nvars != 1:
            raise ValueError("La composition exige une série en une variable")
        if g.constant_term():
            raise NonzeroConstantTerm(
                "La série substituée doit avoir un terme constant nul",
                {"constant": g.constant_term()})
        target = g.ring
        coeffs = [
            convert_coefficient(self.terms.get((j,), self.domain.zero), self.domain, target.domain)
            for j in range(self.ring.orders[0] + 1)
        ]
        result = target.zero()
        for coeff in reversed(coeffs):
            result = result * g + target.scalar(coeff) if coeff else result * g
        return result

    def substitute(
        self,
        mapping: Mapping[str, "TruncatedSeries"],
        target: Optional[SeriesRing] = None,
        polynomial: bool = False,
    ) -> "TruncatedSeries":
        """Substitution multivariée: chaque variable de la série est remplacée par une série de l'anneau cible.

        Les variables absentes de `mapping` doivent exister dans l'anneau cible.
        Avec polynomial=True, les séries substituées peuvent avoir un terme constant
        (la série est alors traitée comme un polynôme).
        """
        if target is None:
            if not mapping:
                raise ValueError("Anneau cible requis")
            target = next(iter(mapping.values())).ring
        images = []
        for name in self.ring.names:
            if name in mapping:
                image = mapping[name]
                if image.ring != target:
                    raise TypeError(f"Image de {name} hors de l'anneau cible")
                if image.constant_term() and not polynomial:
                    raise NonzeroConstantTerm(
                        f"L'image de {name} a un terme constant non nul", {"variable": name})
            else:
                image = target.gen(name)
            images.append(image)

        power_cache: List[Dict[int, TruncatedSeries]] = [{0: target.one(), 1: image} for image in images]

        def power_of(i: int, k: int) -> TruncatedSeries:
            cache = power_cache[i]
            if k not in cache:
                cache[k] = power_of(i, k - 1) * images[i]
            return cache[k]

        result = target.zero()
        for exp, coeff in self.items():
            term = target.scalar(convert_coefficient(coeff, self.domain, target.domain))
            for i, k in enumerate(exp):
                if k:
                    term = term * power_of(i, k)
                    if term.is_zero():
                        break
            result = result + term
        return result

    def restrict(self, target: SeriesRing) -> "TruncatedSeries":
        """Passage à un autre anneau par les noms de variables.

        Les variables absentes de la cible sont évaluées en 0, les variables nouvelles
        apparaissent avec l'exposant 0, la troncature de la cible s'applique.
        """
        positions = [self.ring._index.get(name) for name in target.names]
        kept = set(p for p in positions if p is not None)
        dropped = [i for i in range(self.ring.nvars) if i not in kept]
        terms = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                continue
            new_exp = tuple(e[p] if p is not None else 0 for p in positions)
            terms[new_exp] = convert_coefficient(c, self.domain, target.domain)
        return TruncatedSeries(target, terms)

    def slice(self, name: str, power: int) -> "TruncatedSeries":
        """Coefficient de name^power, série dans l'anneau privé de cette variable"""
        i = self.ring.index(name)
        names = self.ring.names[:i] + self.ring.names[i + 1:]
        orders = self.ring.orders[:i] + self.ring.orders[i + 1:]
        target = SeriesRing(names, orders, self.domain)
        terms = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == power}
        return TruncatedSeries(target, terms, _trusted=True)

    def compositional_inverse(self) -> "TruncatedSeries":
        """Inverse pour la composition d'une série f = c x + ... (itération de point fixe)"""
        if self.ring.nvars != 1:
            raise ValueError("L'inversion compositionnelle exige une série en une variable")
        if self.constant_term():
            raise NonzeroConstantTerm("La série à inverser doit avoir un terme constant nul")
        linear = self.terms.get((1,))
        if not linear:
            raise NonUnitLinearTerm("Le terme linéaire n'est pas inversible")
        if self._univariate_qq():
            inverse = rs_series_reversion(self._to_polynomial(), _RS_X, self._precision(), _RS_Y)
            return self._from_polynomial(inverse, position=1)
        inv_linear = self.domain.one / linear
        x = self.ring.gen(self.ring.names[0])
        higher = self - x.scale(linear)
        g = x.scale(inv_linear)
        for _ in range(self.ring.orders[0]):
            g = (x - higher.compose(g)).scale(inv_linear)
        return g


def series_ring(spec: str, orders: Iterable[int], domain=QQ) -> Tuple[SeriesRing, ...]:
    """Raccourci: series_ring("w,z", (3, 4)) -> (anneau, w, z)"""
    names = [name.strip() for name in spec.split(",") if name.strip()]
    ring = SeriesRing(names, list(orders), domain)
    return (ring,) + ring.gens()


def bernoulli_numbers(n: int) -> List:
    """B_0..B_n par la série génératrice t/(e^t - 1), avec B_1 = -1/2"""
    ring = SeriesRing(("t",), (n,), QQ)
    # (e^t - 1)/t = sum t^j/(j+1)!
    coeffs = []
    factorial = 1
    for j in range(n + 1):
        factorial *= j + 1
        coeffs.append(QQ(1, factorial))
    inverse = ring.from_univariate("t", coeffs).invert()
    numbers = []
    factorial = 1
    for j in range(n + 1):
        if j:
            factorial *= j
        numbers.append(inverse.coefficient((j,)) * factorial)
    return numbers


def polylog_series(s: int, ring: SeriesRing, name: str) -> TruncatedSeries:
    """Li_s(x) = sum x^n / n^s tronqué à l'ordre de la variable"""
    order = ring.order_of(name)
    coeffs = [0] + [QQ(1) / QQ(n) ** s if s >= 0 else QQ(n) ** (-s) for n in range(1, order + 1)]
    return ring.from_univariate(name, coeffs)
