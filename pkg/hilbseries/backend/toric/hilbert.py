"""
Generating series of Hilbert schemes of points on toric surfaces

Created: 2024-11-04
"""
# backend/toric/hilbert.py
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from backend.core.coefficients import is_integral, lift
from backend.core.series import SeriesRing, TruncatedSeries
from backend.partfun.omega import (
    ChernKernel,
    KTheoryKernel,
    SegreKernel,
    VerlindeKernel,
    generalized_binomial,
    slope_ring,
)
from backend.partfun.slope import SYMBOLIC, SlopeLine, ground_or_raise
from backend.toric.bundles import EquivariantBundle, equivariant_line_bundle, trivial_bundle
from backend.toric.localization import chern_numbers
from backend.toric.surfaces import LinearForm, ToricSurfaceModel, builtin_surface
from backend.types.report_types import CheckReport, compare_series
from backend.utils.config import ConfigManager
from backend.utils.exceptions import (
    HilbSeriesError,
    NonIntegerVerlinde,
    PoleSurvived,
    TruncationTooSmall,
)
from backend.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorTask:
    """Facteur d'un point fixe: données entières seulement, transmissibles à un processus"""
    flavour: str
    slope: Optional[Fraction]
    t1: LinearForm
    t2: LinearForm
    weights: Tuple[Tuple[LinearForm, int], ...]
    w_order: int
    z_order: Optional[int]
    max_weight: Optional[int]


def _line_weights(line: SlopeLine, weights: Sequence[Tuple[LinearForm, int]]) -> Counter:
    counter: Counter = Counter()
    for form, mult in weights:
        counter[form.on_line(line)] += mult
    return Counter({value: mult for value, mult in counter.items() if mult})


def fixed_point_factor(task: FactorTask) -> TruncatedSeries:
    """Σ_λ W^{|λ|} terme(λ) au point fixe, W = w / s^2"""
    line = SlopeLine(task.slope)
    s_order = 2 * task.w_order
    t1, t2 = task.t1.on_line(line), task.t2.on_line(line)
    weights = _line_weights(line, task.weights)
    if task.flavour == "k-theory":
        ring = slope_ring(line, s_order, task.z_order)
        kernel = KTheoryKernel(line, ring, -t1, -t2, weights)
    elif task.flavour == "chern":
        kernel = ChernKernel(line, slope_ring(line, s_order), t1, t2, weights)
    elif task.flavour == "segre":
        kernel = SegreKernel(line, slope_ring(line, s_order), t1, t2, weights)
    elif task.flavour == "verlinde":
        kernel = VerlindeKernel(line, slope_ring(line, s_order), t1, t2, weights)
    else:
        raise ValueError(f"Variante inconnue: {task.flavour}")
    return kernel.partition_sum(task.w_order, task.max_weight)


def resolve_line(line: Optional[SlopeLine] = None) -> SlopeLine:
    """Droite de calcul: symbolique, ou la première pente configurée en méthode numérique"""
    if line is not None:
        return line
    settings = ConfigManager.settings()
    if settings.slope_method == "numeric":
        return SlopeLine(Fraction(settings.slopes[0]))
    return SYMBOLIC


def _tasks(surface: ToricSurfaceModel, bundle: EquivariantBundle, flavour: str, line: SlopeLine,
           w_order: int, z_order: Optional[int], max_weight: Optional[int]) -> List[FactorTask]:
    tasks = []
    for point in surface.fixed_points:
        weights = tuple(sorted(bundle.weights_at(point.index).items(), key=lambda item: (item[0].a1, item[0].a2)))
        tasks.append(FactorTask(flavour, line.slope, point.t1, point.t2, weights, w_order, z_order, max_weight))
    return tasks


def localized_product(surface: ToricSurfaceModel, bundle: EquivariantBundle, flavour: str,
                      w_order: int, z_order: Optional[int] = None, line: Optional[SlopeLine] = None,
                      jobs: Optional[int] = None, max_weight: Optional[int] = None) -> TruncatedSeries:
    """Produit des facteurs des points fixes puis couche s^0, sans pôle ni dépendance en la pente"""
    if bundle.surface.name != surface.name:
        raise ValueError(f"Fibré défini sur {bundle.surface.name}, surface {surface.name}")
    line = resolve_line(line)
    tasks = _tasks(surface, bundle, flavour, line, w_order, z_order, max_weight)
    factors = ordered_map(fixed_point_factor, tasks, jobs)
    product = factors[0]
    for index, factor in enumerate(factors[1:], start=1):
        product = product * factor
        logger.debug(f"Point fixe {index} de {surface.name} intégré ({flavour})")

    names = ("w", "z") if z_order is not None else ("w",)
    orders = (w_order, z_order) if z_order is not None else (w_order,)
    target = SeriesRing(names, orders, QQ)
    terms = {}
    for exp, coeff in sorted(product.terms.items()):
        n, j, rest = exp[0], exp[1], exp[2:]
        if j < 2 * n:
            if coeff:
                raise PoleSurvived(
                    f"Pôle résiduel s^{j - 2 * n} au coefficient w^{n} ({flavour}, {surface.name})",
                    {"w": n, "s": j - 2 * n, "rest": rest, "bundle": bundle.label})
        elif j == 2 * n:
            value = ground_or_raise(coeff, line, f"au coefficient w^{n} {rest}")
            if value:
                terms[(n,) + rest] = value
    logger.info(f"Série {flavour} de {bundle.label} sur {surface.name} calculée jusqu'à w^{w_order}")
    return TruncatedSeries(target, terms)


def hilb_k(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int, z_order: int,
           line: Optional[SlopeLine] = None, jobs: Optional[int] = None,
           max_weight: Optional[int] = None) -> TruncatedSeries:
    """I_{S,α}(w, z) = Π_i Ω(w; z e^{v(i)}; e^{-t1(i)}, e^{-t2(i)}) au point a1 = a2 = 0"""
    return localized_product(surface, bundle, "k-theory", w_order, z_order, line, jobs, max_weight)


def chern_series(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int,
                 line: Optional[SlopeLine] = None, jobs: Optional[int] = None,
                 max_weight: Optional[int] = None) -> TruncatedSeries:
    """I^C_{S,α}(w) = Σ_n w^n ∫ c_{2n}(α^{[n]})"""
    return localized_product(surface, bundle, "chern", w_order, None, line, jobs, max_weight)


def segre_series(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int,
                 line: Optional[SlopeLine] = None, jobs: Optional[int] = None,
                 max_weight: Optional[int] = None) -> TruncatedSeries:
    """I^S_{S,α}(w) = Σ_n w^n ∫ s_{2n}(α^{[n]})"""
    return localized_product(surface, bundle, "segre", w_order, None, line, jobs, max_weight)


def verlinde_series(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int,
                    line: Optional[SlopeLine] = None, jobs: Optional[int] = None,
                    max_weight: Optional[int] = None) -> TruncatedSeries:
    """I^V_{S,α}(w) = Σ_n w^n χ(Hilb_n S, det(α^{[n]}) ⊗ E^{rk α}); coefficients entiers"""
    series = localized_product(surface, bundle, "verlinde", w_order, None, line, jobs, max_weight)
    for exp, coeff in sorted(series.terms.items()):
        if not is_integral(coeff):
            raise NonIntegerVerlinde(
                f"Coefficient non entier {coeff} en w^{exp[0]} ({bundle.label} sur {surface.name})",
                {"w": exp[0], "coefficient": coeff})
    return series


def _check_z_order(series: TruncatedSeries, k: int) -> None:
    w_order, z_order = series.ring.order_of("w"), series.ring.order_of("z")
    if z_order < k * w_order:
        raise TruncationTooSmall(
            f"Ordre en z {z_order} inférieur à k * ordre en w = {k * w_order}",
            {"k": k, "w_order": w_order, "z_order": z_order})


def specialize_chern(series: TruncatedSeries, k: int) -> TruncatedSeries:
    """I^C(x) = I(-ε^{2-k}(1+ε)^k x, 1/(1+ε)) en ε^0.

    Le coefficient de w^n z^j contribue (-1)^n binom(kn - j, (k-2)n) à x^n.
    """
    _check_z_order(series, k)
    w_order = series.ring.order_of("w")
    target = SeriesRing(("w",), (w_order,), QQ)
    terms: Dict[Tuple[int], object] = {}
    for (n, j), coeff in series.terms.items():
        degree = (k - 2) * n
        if degree < 0:
            continue
        value = coeff * generalized_binomial(k * n - j, degree)
        if n % 2:
            value = -value
        terms[(n,)] = terms.get((n,), QQ.zero) + value
    return TruncatedSeries(target, terms)


def specialize_verlinde(series: TruncatedSeries, k: int) -> TruncatedSeries:
    """I^V_{S,α-O}(t) = I_{S,α}(-t z^{-k}, -z) en z^0: t^n reçoit (-1)^{n + kn} [w^n z^{kn}]"""
    if k < 0:
        raise TruncationTooSmall(f"Rang négatif {k} pour la spécialisation de Verlinde", {"k": k})
    _check_z_order(series, k)
    w_order = series.ring.order_of("w")
    target = SeriesRing(("w",), (w_order,), QQ)
    terms = {}
    for n in range(w_order + 1):
        coeff = series.terms.get((n, k * n))
        if coeff:
            terms[(n,)] = coeff if (n + k * n) % 2 == 0 else -coeff
    return TruncatedSeries(target, terms)


def verify_specializations(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int,
                           line: Optional[SlopeLine] = None, jobs: Optional[int] = None) -> List[CheckReport]:
    """I^C et I^V obtenues de I_{S,α} comparées aux sommes directes"""
    k = bundle.rank
    parameters = {"surface": surface.name, "bundle": bundle.label, "k": k, "wOrder": w_order}
    reports = []
    try:
        full = hilb_k(surface, bundle, w_order, max(k, 0) * w_order, line, jobs)
    except HilbSeriesError as error:
        return [CheckReport.from_error("specialize-chern", parameters, error),
                CheckReport.from_error("specialize-verlinde", parameters, error)]
    for identity, specialize, direct in (
        ("specialize-chern", lambda: specialize_chern(full, k),
         lambda: chern_series(surface, bundle, w_order, line, jobs)),
        ("specialize-verlinde", lambda: specialize_verlinde(full, k),
         lambda: verlinde_series(surface, bundle - trivial_bundle(surface, 1), w_order, line, jobs)),
    ):
        try:
            reports.append(compare_series(identity, parameters, direct(), specialize()))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error(identity, parameters, error))
    return reports


def verify_segre_chern(surface: ToricSurfaceModel, bundle: EquivariantBundle, w_order: int,
                       line: Optional[SlopeLine] = None) -> CheckReport:
    """I^S_α = I^C_{-α}"""
    parameters = {"surface": surface.name, "bundle": bundle.label, "wOrder": w_order}
    try:
        segre = segre_series(surface, bundle, w_order, line)
        chern = chern_series(surface, -bundle, w_order, line)
    except HilbSeriesError as error:
        return CheckReport.from_error("segre-chern", parameters, error)
    return compare_series("segre-chern", parameters, chern, segre)


# Ensemble de configurations (S, α) de rang k

_MATRIX_ROWS = (
    ("P2", (0,), (0,)),
    ("P2", (1,), (0,)),
    ("P2", (2,), (0,)),
    ("P2", (1,), (1,)),
    ("P1xP1", (0, 0), (0, 0)),
    ("P1xP1", (1, 0), (0, 1)),
    ("F1", (0, 0), (0, 0)),
    ("Bl2P2", (0, 0, 0), (0, 0, 0)),
)


@dataclass(frozen=True)
class FitConfiguration:
    surface: ToricSurfaceModel
    bundle: EquivariantBundle

    @property
    def label(self) -> str:
        return f"{self.surface.name}:{self.bundle.label}"


def split_bundle(surface: ToricSurfaceModel, first: Sequence[int], second: Sequence[int],
                 k: int) -> EquivariantBundle:
    """O(D1) + O(D2) + (k-2) O, rang k pour tout k"""
    l1 = equivariant_line_bundle(surface, surface.divisor(first), f"O{tuple(first)}")
    l2 = equivariant_line_bundle(surface, surface.divisor(second), f"O{tuple(second)}")
    return l1 + l2 + trivial_bundle(surface, k - 2)


def configuration_matrix(k: int, quick: bool = False) -> List[FitConfiguration]:
    """Configurations dont la matrice des exposants de Chern est de rang 5 (surdéterminée)"""
    rows = _MATRIX_ROWS[:6] if quick else _MATRIX_ROWS
    surfaces: Dict[str, ToricSurfaceModel] = {}
    configurations = []
    for name, first, second in rows:
        surface = surfaces.setdefault(name, builtin_surface(name))
        configurations.append(FitConfiguration(surface, split_bundle(surface, first, second, k)))
    return configurations


def exponent_rows(configurations: Sequence[FitConfiguration]) -> List[List]:
    """Lignes (c2, χ(det α), χ(O_S)/2, c1 K - K²/2, K²) sur QQ"""
    rows = []
    for config in configurations:
        numbers = chern_numbers(config.surface, config.bundle)
        rows.append([lift(value, QQ) for value in numbers.exponents()])
    return rows
