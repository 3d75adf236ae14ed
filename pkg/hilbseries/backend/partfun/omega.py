"""
Master partition function and its Chern, Segre and Verlinde kernels

Created: 2024-11-04
"""
# backend/partfun/omega.py
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from backend.combinatorics.partitions import Partition, box_stats, partitions_up_to, stat_n
from backend.core.coefficients import QT, inverse_integer, lift, qt_monomial
from backend.core.series import SeriesRing, TruncatedSeries
from backend.partfun.slope import SlopeLine, dq_coefficients, exp_coefficients
from backend.utils.config import ConfigManager
from backend.utils.exceptions import DegenerateSlope, WeightTooLarge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OmegaSpec:
    k: int
    w_order: int
    z_order: int
    m: int = 0

    def __post_init__(self):
        if min(self.k, self.m, self.w_order, self.z_order) < 0:
            raise ValueError(f"Paramètres négatifs dans {self}")

    @property
    def z_names(self) -> Tuple[str, ...]:
        return tuple(f"z{i}" for i in range(1, self.k + 1))

    @property
    def y_names(self) -> Tuple[str, ...]:
        return tuple(f"y{j}" for j in range(1, self.m + 1))

    def ring(self, domain=QT) -> SeriesRing:
        names = ("w",) + self.z_names + self.y_names
        orders = (self.w_order,) + (self.z_order,) * (self.k + self.m)
        return SeriesRing(names, orders, domain)


def check_weight(w_order: int, max_weight: Optional[int] = None) -> None:
    if max_weight is None:
        max_weight = ConfigManager.settings().max_weight
    if w_order > max_weight:
        raise WeightTooLarge(
            f"Ordre en w {w_order} supérieur au poids maximal {max_weight}",
            {"w_order": w_order, "max_weight": max_weight})


def generalized_binomial(x, j: int, domain=QQ):
    """binom(x, j) = x(x-1)...(x-j+1)/j!, nul pour j < 0"""
    if j < 0:
        return domain.zero
    x = lift(x, domain)
    result = domain.one
    for i in range(j):
        result = result * (x - i) * inverse_integer(i + 1, domain)
    return result


# Fonction de partition maîtresse sur Q(q,t)

def omega_term(partition: Partition, spec: OmegaSpec, ring: SeriesRing) -> TruncatedSeries:
    """w^{|λ|} Π_i Π_□ (1 - q^c t^r z_i) / (Π_j Π_□ (1 - q^c t^r y_j) N_λ)"""
    term = ring.monomial({"w": partition.weight}, QT.one / stat_n(partition))
    if term.is_zero():
        return term
    for column, row in partition.boxes():
        monomial = qt_monomial(column, row)
        for name in spec.z_names:
            term = term * (ring.one() - ring.gen(name).scale(monomial))
        for name in spec.y_names:
            term = term * (ring.one() - ring.gen(name).scale(monomial)).invert()
    return term


def omega_master(spec: OmegaSpec, max_weight: Optional[int] = None) -> TruncatedSeries:
    """Ω(w; z; y; q, t) tronquée, coefficients dans Q(q,t)"""
    check_weight(spec.w_order, max_weight)
    ring = spec.ring()
    result = ring.zero()
    for partition in partitions_up_to(spec.w_order):
        result = result + omega_term(partition, spec, ring)
    logger.info(f"Ω calculée pour k={spec.k}, m={spec.m}, ordres ({spec.w_order}, {spec.z_order})")
    return result


# Noyaux sur une droite de pente: W = w / s^2, chaque terme devient une série entière en s

@dataclass(frozen=True)
class ZFactor:
    """(1 - z e^{γ s} e^{-x})^power, x = shift (nom de variable) ou aucun"""
    gamma: object
    power: int
    shift: Optional[str] = None


def one_minus_z_power(ring: SeriesRing, factor: ZFactor) -> TruncatedSeries:
    domain = ring.domain
    s_index = ring.index("s")
    z_index = ring.index("z")
    s_order = ring.orders[s_index]
    z_order = ring.orders[z_index]
    x_index = ring.index(factor.shift) if factor.shift else None
    x_order = ring.orders[x_index] if factor.shift else 0
    base = [0] * ring.nvars
    terms = {}
    for j in range(z_order + 1):
        b = generalized_binomial(factor.power, j, domain)
        if not b:
            continue
        if j % 2:
            b = -b
        s_coeffs = exp_coefficients(factor.gamma * j, s_order, domain)
        x_coeffs = exp_coefficients(lift(-j, domain), x_order, domain) if factor.shift else [domain.one]
        for i, cs in enumerate(s_coeffs):
            if not cs:
                continue
            for m, cx in enumerate(x_coeffs):
                if not cx:
                    continue
                exp = list(base)
                exp[z_index] = j
                exp[s_index] = i
                if x_index is not None:
                    exp[x_index] = m
                terms[tuple(exp)] = b * cs * cx
    return TruncatedSeries(ring, terms)


def _s_series(ring: SeriesRing, coeffs: Sequence) -> TruncatedSeries:
    return ring.from_univariate("s", coeffs)


class SlopeKernel:
    """Terme d'une somme sur les partitions, normalisé par s^{2|λ|}"""

    def __init__(self, line: SlopeLine, term_ring: SeriesRing):
        self.line = line
        self.term_ring = term_ring
        self.s_ring = SeriesRing(("s",), (term_ring.order_of("s"),), line.domain)

    def term(self, partition: Partition) -> TruncatedSeries:
        raise NotImplementedError

    def _denominator(self, factors: Iterable[Tuple[object, object]], context: str) -> TruncatedSeries:
        """Π DQ(a, b) inversé, calculé dans l'anneau en s seul"""
        order = self.s_ring.orders[0]
        product = self.s_ring.one()
        for a, b in factors:
            self.line.require_nonzero(a - b, context)
            product = product * _s_series(self.s_ring, dq_coefficients(a, b, order, self.line.domain))
        return product.invert().restrict(self.term_ring)

    def partition_sum(self, w_order: int, max_weight: Optional[int] = None) -> TruncatedSeries:
        """Σ_λ W^{|λ|} terme(λ)"""
        check_weight(w_order, max_weight)
        ring = self.term_ring
        full = SeriesRing(("W",) + ring.names, (w_order,) + ring.orders, ring.domain)
        terms: Dict[Tuple[int, ...], object] = {}
        for partition in partitions_up_to(w_order):
            for exp, coeff in self.term(partition).terms.items():
                key = (partition.weight,) + exp
                terms[key] = terms[key] + coeff if key in terms else coeff
        return TruncatedSeries(full, terms)


class KTheoryKernel(SlopeKernel):
    """Ω(w; z e^{ν s} ...; q = e^{T1 s}, t = e^{T2 s}) terme à terme.

    weights: multiplicités signées des poids ν du fibré (partie négative en dénominateur);
    shifts: facteurs supplémentaires z e^{-x} (variables x de l'anneau).
    """

    def __init__(self, line: SlopeLine, term_ring: SeriesRing, t1, t2,
                 weights: Mapping[object, int], shifts: Sequence[str] = ()):
        super().__init__(line, term_ring)
        self.t1 = lift(t1, line.domain)
        self.t2 = lift(t2, line.domain)
        self.weights = {lift(nu, line.domain): mult for nu, mult in weights.items() if mult}
        self.shifts = tuple(shifts)

    def term(self, partition: Partition) -> TruncatedSeries:
        ring = self.term_ring
        result = ring.one()
        denominators = []
        for st in box_stats(partition):
            shift = self.t1 * st.column + self.t2 * st.row
            if "z" in ring.names:
                for nu, mult in self.weights.items():
                    result = result * one_minus_z_power(ring, ZFactor(nu + shift, mult))
                for name in self.shifts:
                    result = result * one_minus_z_power(ring, ZFactor(shift, 1, name))
            denominators.append((self.t1 * (st.arm + 1), self.t2 * st.leg))
            denominators.append((self.t1 * st.arm, self.t2 * (st.leg + 1)))
        if denominators:
            result = result * self._denominator(denominators, f"N_{partition}")
        return result


class ChernKernel(SlopeKernel):
    """Ω^C: Π_□ Π_ν (1 + (ν - c τ1 - r τ2) s)^mult / (A1 A2)"""

    def __init__(self, line: SlopeLine, term_ring: SeriesRing, t1, t2, weights: Mapping[object, int]):
        super().__init__(line, term_ring)
        self.t1 = lift(t1, line.domain)
        self.t2 = lift(t2, line.domain)
        self.weights = {lift(nu, line.domain): mult for nu, mult in weights.items() if mult}

    def _linear_power(self, gamma, power: int) -> TruncatedSeries:
        factor = self.s_ring.from_univariate("s", [1, gamma])
        if power < 0:
            factor = factor.invert()
            power = -power
        return factor ** power

    def box_numerator(self, gamma, mult: int) -> TruncatedSeries:
        return self._linear_power(gamma, mult)

    def term(self, partition: Partition) -> TruncatedSeries:
        domain = self.line.domain
        numerator = self.s_ring.one()
        scale = domain.one
        for st in box_stats(partition):
            shift = self.t1 * st.column + self.t2 * st.row
            for nu, mult in self.weights.items():
                numerator = numerator * self.box_numerator(nu - shift, mult)
            a1 = self.t1 * (st.arm + 1) - self.t2 * st.leg
            a2 = self.t2 * (st.leg + 1) - self.t1 * st.arm
            self.line.require_nonzero(a1, f"poids tangent de {partition}")
            self.line.require_nonzero(a2, f"poids tangent de {partition}")
            scale = scale * a1 * a2
        return numerator.scale(domain.one / scale).restrict(self.term_ring)


class SegreKernel(ChernKernel):
    """Ω^S: Π_□ Π_ν (1 - (ν - c τ1 - r τ2) s)^{-mult} / (A1 A2)"""

    def box_numerator(self, gamma, mult: int) -> TruncatedSeries:
        return self._linear_power(-gamma, -mult)


class VerlindeKernel(SlopeKernel):
    """Ω^V: e^{(Σν - K(c τ1 + r τ2)) s} / (DQ(X1, 0) DQ(X2, 0)) par case"""

    def __init__(self, line: SlopeLine, term_ring: SeriesRing, t1, t2, weights: Mapping[object, int]):
        super().__init__(line, term_ring)
        self.t1 = lift(t1, line.domain)
        self.t2 = lift(t2, line.domain)
        self.weights = {lift(nu, line.domain): mult for nu, mult in weights.items() if mult}
        self.rank = sum(self.weights.values())
        total = line.domain.zero
        for nu, mult in self.weights.items():
            total += nu * mult
        self.weight_sum = total

    def term(self, partition: Partition) -> TruncatedSeries:
        domain = self.line.domain
        order = self.s_ring.orders[0]
        gamma = domain.zero
        denominators = []
        for st in box_stats(partition):
            gamma += self.weight_sum - (self.t1 * st.column + self.t2 * st.row) * self.rank
            x1 = -self.t1 * (st.arm + 1) + self.t2 * st.leg
            x2 = -self.t2 * (st.leg + 1) + self.t1 * st.arm
            denominators.append((x1, domain.zero))
            denominators.append((x2, domain.zero))
        numerator = _s_series(self.s_ring, exp_coefficients(gamma, order, domain)).restrict(self.term_ring)
        if denominators:
            numerator = numerator * self._denominator(denominators, f"N_{partition}")
        return numerator


def slope_ring(line: SlopeLine, s_order: int, z_order: Optional[int] = None,
               extra: Sequence[Tuple[str, int]] = ()) -> SeriesRing:
    """Anneau des termes: s, puis z (si demandé), puis les variables de décalage"""
    names = ["s"]
    orders = [s_order]
    if z_order is not None:
        names.append("z")
        orders.append(z_order)
    for name, order in extra:
        names.append(name)
        orders.append(order)
    return SeriesRing(names, orders, line.domain)


# Valeurs exactes terme à terme (poids numériques)

def chern_term_value(partition: Partition, t1, t2, v: Sequence = (), y: Sequence = ()):
    """Terme λ de Ω^C(w; v; y; t1, t2) sans le facteur w^{|λ|}"""
    t1, t2 = lift(t1, QQ), lift(t2, QQ)
    value = QQ.one
    for st in box_stats(partition):
        shift = t1 * st.column + t2 * st.row
        for vj in v:
            value *= QQ.one + lift(vj, QQ) - shift
        for yj in y:
            value /= QQ.one + lift(yj, QQ) - shift
        a1 = t1 * (st.arm + 1) - t2 * st.leg
        a2 = t2 * (st.leg + 1) - t1 * st.arm
        if not a1 or not a2:
            raise DegenerateSlope("Poids tangent nul", {"partition": partition})
        value /= a1 * a2
    return value


def segre_term_value(partition: Partition, t1, t2, v: Sequence = ()):
    """Terme λ de Ω^S(w; v; t1, t2): Π_□ Π_j (1 - v_j + c t1 + r t2)^{-1} / (A1 A2)"""
    t1, t2 = lift(t1, QQ), lift(t2, QQ)
    value = QQ.one
    for st in box_stats(partition):
        shift = t1 * st.column + t2 * st.row
        for vj in v:
            value /= QQ.one - lift(vj, QQ) + shift
        a1 = t1 * (st.arm + 1) - t2 * st.leg
        a2 = t2 * (st.leg + 1) - t1 * st.arm
        value /= a1 * a2
    return value
