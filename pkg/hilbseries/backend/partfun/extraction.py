"""
Logarithm of the master partition function and its H components

Created: 2024-11-04
"""
# backend/partfun/extraction.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from backend.core.series import SeriesRing, TruncatedSeries, bernoulli_numbers, polylog_series
from backend.partfun.omega import KTheoryKernel, slope_ring
from backend.partfun.slope import (
    SYMBOLIC,
    SlopeLine,
    c_polynomial,
    numeric_slopes,
    separate_by_slope,
)
from backend.utils.config import ConfigManager
from backend.utils.exceptions import InsufficientCap

logger = logging.getLogger(__name__)

Component = Tuple[int, int]

# variables de décalage: z1 = z e^{-x1}, z2 = z e^{-x2}
FAMILY_SHIFTS = (("x1", 2), ("x2", 1))


@dataclass
class HComponent:
    d1: int
    d2: int
    k: int
    series: TruncatedSeries

    @property
    def degree(self) -> int:
        return self.d1 + self.d2


class HExtractor:
    """log Ω(w; z,...,z; e^{t1}, e^{t2}) sur les droites t1 = s, t2 = c s.

    Avec W = w/s^2, le coefficient de w^N s^d est celui de W^N s^{2N+d}; il vaut
    Σ_{d1+d2=d} c^{d2} H_{d1,d2}, les composantes se lisent comme coefficients en c.
    """

    def __init__(self, k: int, w_order: int, z_order: int, d_max: int,
                 shifts: Sequence[Tuple[str, int]] = (), method: Optional[str] = None,
                 slopes: Optional[Sequence] = None, max_weight: Optional[int] = None):
        settings = ConfigManager.settings()
        if d_max < -2:
            raise ValueError(f"Degré d_max invalide: {d_max}")
        self.k = k
        self.w_order = w_order
        self.z_order = z_order
        self.d_max = d_max
        self.shifts = tuple(shifts)
        self.method = method or settings.slope_method
        self.slopes = slopes
        self.max_weight = max_weight
        self._logs: Dict[SlopeLine, TruncatedSeries] = {}

    @property
    def s_order(self) -> int:
        return max(2 * self.w_order + self.d_max, 0)

    def lines(self, d: int) -> List[SlopeLine]:
        if self.method == "symbolic":
            return [SYMBOLIC]
        return numeric_slopes(d + 4, self.slopes)

    def log_omega(self, line: SlopeLine) -> TruncatedSeries:
        if line not in self._logs:
            ring = slope_ring(line, self.s_order, self.z_order, self.shifts)
            weights = {0: self.k - len(self.shifts)}
            kernel = KTheoryKernel(line, ring, 1, line.c, weights, [name for name, _ in self.shifts])
            omega = kernel.partition_sum(self.w_order, self.max_weight)
            self._logs[line] = omega.log()
            logger.debug(f"log Ω calculé sur la droite de pente {line.label()}")
        return self._logs[line]

    def target_ring(self, domain=QQ) -> SeriesRing:
        names = ("w", "z") + tuple(name for name, _ in self.shifts)
        orders = (self.w_order, self.z_order) + tuple(order for _, order in self.shifts)
        return SeriesRing(names, orders, domain)

    def layer(self, line: SlopeLine, d: int) -> TruncatedSeries:
        """Coefficient de s^d dans log Ω (w restauré), coefficients dans Q(c) ou Q"""
        if d > self.d_max:
            raise InsufficientCap(
                f"Degré {d} au-delà de l'ordre calculé {self.d_max}", {"d": d, "d_max": self.d_max})
        terms = {}
        for exp, coeff in self.log_omega(line).terms.items():
            n, j = exp[0], exp[1]
            if j == 2 * n + d:
                terms[(n,) + exp[2:]] = coeff
        return TruncatedSeries(self.target_ring(line.domain), terms)

    def components(self, d: int) -> Dict[Component, TruncatedSeries]:
        """Les composantes H_{d1,d2} avec d1 + d2 = d, coefficients rationnels"""
        degree = d + 2
        split: Dict[int, Dict] = {j: {} for j in range(degree + 1)}
        lines = self.lines(d)
        if self.method == "symbolic":
            for exp, value in self.layer(SYMBOLIC, d).terms.items():
                for j, coeff in enumerate(c_polynomial(value, degree)):
                    if coeff:
                        split[j][exp] = coeff
        else:
            layers = {line: self.layer(line, d) for line in lines}
            keys = sorted(set().union(*(layer.terms for layer in layers.values())))
            for exp in keys:
                samples = {line: layers[line].terms.get(exp, QQ.zero) for line in lines}
                for j, coeff in enumerate(separate_by_slope(samples, degree)):
                    if coeff:
                        split[j][exp] = coeff
        target = self.target_ring(QQ)
        return {(d + 1 - j, j - 1): TruncatedSeries(target, split[j]) for j in split}

    def regularity_violation(self, line: SlopeLine = SYMBOLIC) -> Optional[Tuple[int, int]]:
        """Premier (N, j) avec j < 2N - 2 et coefficient non nul, None si aucun"""
        bad = sorted(
            (exp[0], exp[1]) for exp in self.log_omega(line).terms if exp[1] < 2 * exp[0] - 2)
        return bad[0] if bad else None


def extract_h(d1: int, d2: int, k: int, w_order: int, z_order: int,
              method: Optional[str] = None, slopes: Optional[Sequence] = None,
              max_weight: Optional[int] = None) -> HComponent:
    """H_{d1,d2,k}(w, z): tous les z_i égaux à z"""
    if d1 < -1 or d2 < -1:
        raise ValueError(f"Indices (d1, d2) = ({d1}, {d2}) hors du domaine d >= -1")
    cap = ConfigManager.settings().h_cap
    if d1 + d2 > cap:
        raise InsufficientCap(
            f"d1 + d2 = {d1 + d2} dépasse la borne configurée {cap}", {"d1": d1, "d2": d2, "cap": cap})
    extractor = HExtractor(k, w_order, z_order, d1 + d2, method=method, slopes=slopes,
                           max_weight=max_weight)
    series = extractor.components(d1 + d2)[(d1, d2)]
    logger.info(f"H_({d1},{d2}) extraite pour k={k} à l'ordre ({w_order}, {z_order})")
    return HComponent(d1, d2, k, series)


def polylog_correction(d1: int, d2: int, k: int, ring: SeriesRing) -> TruncatedSeries:
    """B_{d1+1} B_{d2+1} / ((d1+1)! (d2+1)!) (Li_{1-d}(w) + k Li_{1-d}(z))"""
    bernoulli = bernoulli_numbers(max(d1, d2) + 1)
    factor = bernoulli[d1 + 1] * bernoulli[d2 + 1]
    for j in range(2, d1 + 2):
        factor /= j
    for j in range(2, d2 + 2):
        factor /= j
    order = 1 - d1 - d2
    total = polylog_series(order, ring, "w") + polylog_series(order, ring, "z").scale(k)
    return total.scale(factor)


def symmetric_defect(f: TruncatedSeries) -> Optional[Tuple[Tuple[int, int], object, object]]:
    """Premier écart à f(w, z) = f(1/w, w z): f_{m,n} = f_{n-m,n}, et f_{m,n} = 0 pour m > n"""
    w_order = f.ring.order_of("w")
    zero = f.domain.zero
    for (m, n) in sorted(f.ring.box_exponents(), key=lambda e: (e[1], e[0])):
        value = f.terms.get((m, n), zero)
        if m > n:
            if value:
                return (m, n), zero, value
            continue
        partner = n - m
        if partner > w_order:
            continue
        other = f.terms.get((partner, n), zero)
        if value != other:
            return (m, n), other, value
    return None


def _x_slice(series: TruncatedSeries, x1: int, x2: int, ring: SeriesRing) -> TruncatedSeries:
    terms = {exp[:2]: c for exp, c in series.terms.items() if exp[2] == x1 and exp[3] == x2}
    return TruncatedSeries(ring, terms)


@dataclass
class HSeriesFamily:
    """Les quatre séries H_{-1,-1,k}, H_{-1,0,k}, H_{-1,1,k}, H_{0,0,k} et les données de Taylor"""
    k: int
    h_mm: TruncatedSeries
    h_m0: TruncatedSeries
    h_m1: TruncatedSeries
    h_00: TruncatedSeries
    c11: TruncatedSeries
    c2: TruncatedSeries
    d1: TruncatedSeries
    e: TruncatedSeries
    f: TruncatedSeries

    @classmethod
    def build(cls, k: int, w_order: int, z_order: int, method: Optional[str] = None,
              slopes: Optional[Sequence] = None, max_weight: Optional[int] = None) -> "HSeriesFamily":
        """Un seul calcul de log Ω avec z1 = z e^{-x1}, z2 = z e^{-x2} et k - 2 copies de z"""
        extractor = HExtractor(k, w_order, z_order, 0, FAMILY_SHIFTS, method, slopes, max_weight)
        ring = SeriesRing(("w", "z"), (w_order, z_order), QQ)
        mm = extractor.components(-2)[(-1, -1)]
        m0 = extractor.components(-1)[(-1, 0)]
        layer0 = extractor.components(0)
        m1, f00 = layer0[(-1, 1)], layer0[(0, 0)]
        c11 = _x_slice(mm, 2, 0, ring)
        mixed = _x_slice(mm, 1, 1, ring)
        logger.info(f"Famille H construite pour k={k} à l'ordre ({w_order}, {z_order})")
        return cls(
            k=k,
            h_mm=_x_slice(mm, 0, 0, ring),
            h_m0=_x_slice(m0, 0, 0, ring),
            h_m1=_x_slice(m1, 0, 0, ring),
            h_00=_x_slice(f00, 0, 0, ring),
            c11=c11,
            c2=mixed - c11.scale(2),
            d1=_x_slice(m0, 1, 0, ring),
            e=_x_slice(m1, 0, 0, ring),
            f=_x_slice(f00, 0, 0, ring),
        )

    @property
    def c_prime(self) -> TruncatedSeries:
        """C2 + 2 C11"""
        return self.c2 + self.c11.scale(2)

    def log_g(self) -> List[TruncatedSeries]:
        """log G0 ... log G4 à partir des données de Taylor"""
        c11, c2, d1, e, f = self.c11, self.c2, self.d1, self.e, self.f
        return [
            c2,
            c11.scale(2),
            (f - e.scale(2)).scale(24) - c11.scale(4),
            c11 - d1,
            e.scale(3) - f + (c11 - d1).scale(QQ(1, 2)),
        ]
