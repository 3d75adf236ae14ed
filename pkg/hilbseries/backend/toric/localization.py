"""
Localization sums on toric surfaces

Created: 2024-11-04
"""
# backend/toric/localization.py
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from backend.core.coefficients import require_ground, to_fraction
from backend.core.laurent import LaurentSeries
from backend.partfun.slope import SYMBOLIC, SlopeLine
from backend.toric.bundles import EquivariantBundle, canonical_bundle, trivial_bundle
from backend.toric.surfaces import ToricSurfaceModel
from backend.types.report_types import CheckReport
from backend.utils.exceptions import HilbSeriesError, PoleSurvived

logger = logging.getLogger(__name__)

# K^2 et χ(O_S) des surfaces intégrées
CLASSICAL_INVARIANTS: Dict[str, Tuple[int, int]] = {
    "P2": (9, 1),
    "P1xP1": (8, 1),
    "F1": (8, 1),
    "F2": (8, 1),
    "F3": (8, 1),
    "Bl1P2": (8, 1),
    "Bl2P2": (7, 1),
    "Bl3P2": (6, 1),
}


@dataclass(frozen=True)
class ChernNumbers:
    rank: int
    c2: Fraction
    c1_squared: Fraction
    chi_det: Fraction
    chi_o: Fraction
    c1_k: Fraction
    k_squared: Fraction
    euler: int

    def exponents(self) -> Tuple[Fraction, ...]:
        """(c2(α), χ(det α), χ(O_S)/2, c1(α)K - K²/2, K²)"""
        return (
            self.c2,
            self.chi_det,
            self.chi_o / 2,
            self.c1_k - self.k_squared / 2,
            self.k_squared,
        )

    def riemann_roch_defect(self) -> Fraction:
        return self.chi_det - ((self.c1_squared - self.c1_k) / 2 + self.chi_o)

    def noether_defect(self) -> Fraction:
        return Fraction(self.euler) - (12 * self.chi_o - self.k_squared)

    def to_dict(self) -> Dict[str, str]:
        return {
            "rank": str(self.rank),
            "c2": str(self.c2),
            "c1^2": str(self.c1_squared),
            "chi(det)": str(self.chi_det),
            "chi(O)": str(self.chi_o),
            "c1.K": str(self.c1_k),
            "K^2": str(self.k_squared),
            "chi(S)": str(self.euler),
        }


class LocalizationSum:
    """Σ_i f(point i) / (t1 t2) sur une droite de pente, avec des poids évalués comme formes linéaires"""

    def __init__(self, surface: ToricSurfaceModel, line: SlopeLine = SYMBOLIC):
        self.surface = surface
        self.line = line

    def raw(self, integrand: Callable[[int, object, object], object]):
        domain = self.line.domain
        total = domain.zero
        for point in self.surface.fixed_points:
            t1 = self.line.require_nonzero(point.t1.on_line(self.line), f"t1 au point {point.index}")
            t2 = self.line.require_nonzero(point.t2.on_line(self.line), f"t2 au point {point.index}")
            total += integrand(point.index, t1, t2) / (t1 * t2)
        return total

    def constant(self, integrand: Callable[[int, object, object], object], context: str) -> Fraction:
        value = self.raw(integrand)
        return to_fraction(require_ground(value, self.line.domain, f"({context} sur {self.surface.name})"))


def _power_sums(bundle: EquivariantBundle, index: int, line: SlopeLine) -> Tuple[object, object]:
    domain = line.domain
    p1 = domain.zero
    p2 = domain.zero
    for v, mult in bundle.weights_at(index).items():
        value = v.on_line(line)
        p1 += value * mult
        p2 += value * value * mult
    return p1, p2


def euler_characteristic(surface: ToricSurfaceModel, bundle: EquivariantBundle,
                         line: SlopeLine = SYMBOLIC, precision: int = 2) -> Fraction:
    """χ(det α) comme terme constant en s de Σ_i e^{p1 s} / ((1 - e^{-t1 s})(1 - e^{-t2 s}))"""
    domain = line.domain
    total = LaurentSeries.zero(precision, domain)
    for point in surface.fixed_points:
        t1 = line.require_nonzero(point.t1.on_line(line), f"t1 au point {point.index}")
        t2 = line.require_nonzero(point.t2.on_line(line), f"t2 au point {point.index}")
        term = LaurentSeries.exp_series(_power_sums(bundle, point.index, line)[0], precision, domain)
        for t in (t1, t2):
            # 1 - e^{-t s} = s (e^{0 s} - e^{-t s}) / s
            term = term * LaurentSeries.difference_quotient(0, -t, precision + 2, domain).shift(1).invert()
        total = total + term
    if total.has_pole():
        raise PoleSurvived(
            f"La somme de localisation de χ({bundle.label}) garde un pôle en s sur {surface.name}",
            {"surface": surface.name, "bundle": bundle.label, "slope": line.label()})
    value = require_ground(total.constant_term(), domain, f"(χ(det α) sur {surface.name})")
    return to_fraction(value)


def chern_numbers(surface: ToricSurfaceModel, bundle: EquivariantBundle,
                  line: SlopeLine = SYMBOLIC) -> ChernNumbers:
    """Les nombres de Chern de (S, α) par localisation; chaque somme doit être constante"""
    sums = LocalizationSum(surface, line)
    powers = {i: _power_sums(bundle, i, line) for i in range(surface.euler_characteristic)}

    def c2(i, t1, t2):
        p1, p2 = powers[i]
        return (p1 * p1 - p2) / 2

    def c1_squared(i, t1, t2):
        return powers[i][0] ** 2

    def c1_k(i, t1, t2):
        return -powers[i][0] * (t1 + t2)

    def k_squared(i, t1, t2):
        return (t1 + t2) ** 2

    def todd(i, t1, t2):
        return ((t1 + t2) ** 2 + t1 * t2) / 12

    numbers = ChernNumbers(
        rank=bundle.rank,
        c2=sums.constant(c2, "c2"),
        c1_squared=sums.constant(c1_squared, "c1^2"),
        chi_det=euler_characteristic(surface, bundle, line),
        chi_o=sums.constant(todd, "χ(O_S)"),
        c1_k=sums.constant(c1_k, "c1.K"),
        k_squared=sums.constant(k_squared, "K^2"),
        euler=surface.euler_characteristic,
    )
    logger.debug(f"Nombres de Chern de {bundle.label} sur {surface.name}: {numbers.to_dict()}")
    return numbers


def _vanishing_integrands(surface: ToricSurfaceModel, bundle: Optional[EquivariantBundle], line: SlopeLine):
    integrands = [
        ("Σ 1/(t1 t2)", lambda i, t1, t2: line.domain.one),
        ("Σ (t1+t2)/(t1 t2)", lambda i, t1, t2: t1 + t2),
    ]
    if bundle is not None:
        integrands.append(("Σ p1(v)/(t1 t2)", lambda i, t1, t2: _power_sums(bundle, i, line)[0]))
    return integrands


def verify_vanishing(surface: ToricSurfaceModel, bundle: Optional[EquivariantBundle] = None,
                     line: SlopeLine = SYMBOLIC) -> List[CheckReport]:
    """Les sommes de degré négatif s'annulent identiquement en c"""
    sums = LocalizationSum(surface, line)
    reports = []
    for label, integrand in _vanishing_integrands(surface, bundle, line):
        parameters = {"surface": surface.name, "sum": label}
        try:
            value = sums.raw(integrand)
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("localization-vanishing", parameters, error))
            continue
        if value:
            reports.append(CheckReport.failure("localization-vanishing", parameters, label, 0, value))
        else:
            reports.append(CheckReport.success("localization-vanishing", parameters))
    return reports


def verify_localization(surface: ToricSurfaceModel,
                        bundles: Optional[List[EquivariantBundle]] = None) -> List[CheckReport]:
    """χ(S) = M = 12χ(O_S) - K², valeurs classiques de K², χ(O_S) et Riemann-Roch pour chaque fibré"""
    if bundles is None:
        bundles = [trivial_bundle(surface, 1), canonical_bundle(surface)]
    reports = verify_vanishing(surface, canonical_bundle(surface))
    for bundle in bundles:
        parameters = {"surface": surface.name, "bundle": bundle.label}
        try:
            numbers = chern_numbers(surface, bundle)
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("localization-constant", parameters, error))
            continue
        details = numbers.to_dict()
        checks = [
            ("riemann-roch", "χ(det α) - (c1² - c1.K)/2 - χ(O_S)", numbers.riemann_roch_defect()),
            ("noether", "χ(S) - 12χ(O_S) + K²", numbers.noether_defect()),
        ]
        for identity, location, defect in checks:
            if defect:
                reports.append(CheckReport.failure(identity, parameters, location, 0, defect, **details))
            else:
                reports.append(CheckReport.success(identity, parameters, **details))
        if surface.name in CLASSICAL_INVARIANTS:
            k_squared, chi_o = CLASSICAL_INVARIANTS[surface.name]
            actual = (numbers.k_squared, numbers.chi_o)
            if actual != (k_squared, chi_o):
                reports.append(CheckReport.failure(
                    "classical-invariants", parameters, "(K², χ(O_S))", (k_squared, chi_o), actual))
            else:
                reports.append(CheckReport.success("classical-invariants", parameters))
    logger.info(f"Localisation vérifiée sur {surface.name} ({len(reports)} contrôles)")
    return reports
