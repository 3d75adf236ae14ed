"""
Universal series from the product formula over a set of toric configurations

Created: 2024-11-04
"""
# backend/universal/product_formula.py
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from backend.core.series import TruncatedSeries
from backend.partfun.extraction import HSeriesFamily
from backend.partfun.slope import SlopeLine
from backend.toric.bundles import trivial_bundle
from backend.toric.hilbert import (
    FitConfiguration,
    chern_series,
    configuration_matrix,
    exponent_rows,
    hilb_k,
    verlinde_series,
)
from backend.types.report_types import format_exponent
from backend.utils.exceptions import NonzeroResidual, RankDeficientMatrix

logger = logging.getLogger(__name__)

UNIVERSAL_FLAVOURS = ("full", "chern", "verlinde")


@dataclass
class UniversalSeriesBundle:
    """log G_0..log G_4 (full), log A_0..log A_4 (chern) ou log B_0..log B_4 (verlinde)"""
    flavour: str
    k: int
    log_g: List[TruncatedSeries]
    labels: List[str] = field(default_factory=list)

    @property
    def rank_parameter(self) -> int:
        """r = k - 1 pour les séries A et B"""
        return self.k - 1

    def combined(self, *indices: int) -> TruncatedSeries:
        total = self.log_g[indices[0]]
        for index in indices[1:]:
            total = total + self.log_g[index]
        return total


def _independent_rows(rows: Sequence[Sequence]) -> List[int]:
    count = len(rows)
    transposed = DomainMatrix([[rows[i][j] for i in range(count)] for j in range(5)], (5, count), QQ)
    _, pivots = transposed.rref()
    if len(pivots) < 5:
        raise RankDeficientMatrix(
            f"Matrice des exposants de rang {len(pivots)} < 5",
            {"rank": len(pivots), "rows": count})
    return list(pivots)


def solve_product_formula(rows: Sequence[Sequence], logs: Sequence[TruncatedSeries],
                          labels: Optional[Sequence[str]] = None) -> List[TruncatedSeries]:
    """Résout log I = M (log G_0, ..., log G_4) coefficient par coefficient, résidu nul exigé"""
    labels = list(labels or [str(i) for i in range(len(rows))])
    pivots = _independent_rows(rows)
    square = DomainMatrix([list(rows[p]) for p in pivots], (5, 5), QQ)
    inverse = square.inv().to_list()
    ring = logs[0].ring
    solution = []
    for i in range(5):
        total = ring.zero()
        for j, p in enumerate(pivots):
            if inverse[i][j]:
                total = total + logs[p].scale(inverse[i][j])
        solution.append(total)
    for r, row in enumerate(rows):
        predicted = ring.zero()
        for i in range(5):
            if row[i]:
                predicted = predicted + solution[i].scale(row[i])
        difference = predicted.first_difference(logs[r])
        if difference is not None:
            exponent, expected, actual = difference
            raise NonzeroResidual(
                f"Résidu non nul pour {labels[r]} en {format_exponent(ring.names, exponent)}",
                {"configuration": labels[r], "predicted": str(expected), "actual": str(actual)})
    logger.debug(f"Formule produit résolue sur {len(rows)} configurations (pivots {pivots})")
    return solution


def _log_invariant(config: FitConfiguration, flavour: str, w_order: int, z_order: Optional[int],
                   line: Optional[SlopeLine], jobs: Optional[int],
                   max_weight: Optional[int]) -> TruncatedSeries:
    surface, bundle = config.surface, config.bundle
    if flavour == "full":
        return hilb_k(surface, bundle, w_order, z_order, line, jobs, max_weight).log()
    if flavour == "chern":
        return chern_series(surface, bundle, w_order, line, jobs, max_weight).log()
    shifted = bundle - trivial_bundle(surface, 1)
    return verlinde_series(surface, shifted, w_order, line, jobs, max_weight).log()


def extract_universal(flavour: str, k: int, w_order: int, z_order: Optional[int] = None,
                      quick: bool = False, line: Optional[SlopeLine] = None, jobs: Optional[int] = None,
                      max_weight: Optional[int] = None) -> UniversalSeriesBundle:
    """Séries universelles d'une variante à partir des configurations de configuration_matrix(k).

    Les séries de Verlinde sont celles de α - O (rang k - 1), avec les exposants de α.
    """
    if flavour not in UNIVERSAL_FLAVOURS:
        raise ValueError(f"Variante inconnue {flavour!r} (attendu: {', '.join(UNIVERSAL_FLAVOURS)})")
    if flavour == "full" and z_order is None:
        raise ValueError("L'ordre en z est requis pour la série complète")
    configurations = configuration_matrix(k, quick)
    rows = exponent_rows(configurations)
    labels = [config.label for config in configurations]
    logs = []
    for config in configurations:
        logs.append(_log_invariant(config, flavour, w_order, z_order, line, jobs, max_weight))
        logger.debug(f"log I calculé pour {config.label} ({flavour}, k={k})")
    solution = solve_product_formula(rows, logs, labels)
    logger.info(f"Séries universelles {flavour} extraites pour k={k} ({len(rows)} configurations)")
    return UniversalSeriesBundle(flavour, k, solution, labels)


def gcef_from_family(k: int, w_order: int, z_order: int, family: Optional[HSeriesFamily] = None,
                     max_weight: Optional[int] = None) -> UniversalSeriesBundle:
    """log G_i à partir des données de Taylor de la famille H, sans surface"""
    family = family or HSeriesFamily.build(k, w_order, z_order, max_weight=max_weight)
    return UniversalSeriesBundle("full", k, family.log_g(), ["taylor"])
