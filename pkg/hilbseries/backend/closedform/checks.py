"""
Identity checks for the closed forms of B3 and B4

Created: 2024-11-04
"""
# backend/closedform/checks.py
import logging
import random
from typing import List, Optional, Sequence

from sympy.polys.domains import QQ

from backend.closedform.bseries import (
    b3_exp_formula,
    b3_product,
    b4_binomial,
    b4_conjecture,
    b4_log_coefficient,
    b4_symbolic,
    branch_product,
)
from backend.closedform.lagrange import BranchSystem, lagrange_exp_log, single_branch_quotient, two_branch_quotient
from backend.core.laurent import LaurentSeries
from backend.types.report_types import CheckReport, compare_series
from backend.universal.closed_forms import closed_form_g, verlinde_t
from backend.universal.product_formula import UniversalSeriesBundle, extract_universal
from backend.universal.symreg import SymRegSeries, limit_pullback, verlinde_variable, y_ring
from backend.utils.exceptions import HilbSeriesError

logger = logging.getLogger(__name__)


def random_laurent(rng: random.Random, pole: int, precision: int, var: str = "y") -> LaurentSeries:
    """y^{-pole} + termes aléatoires à petits coefficients entiers"""
    coeffs = [1] + [rng.randint(-3, 3) for _ in range(precision + pole)]
    return LaurentSeries(-pole, coeffs, precision, QQ, var)


def verify_lagrange_inverse(seed: int = 0, count: int = 20, order: int = 8) -> List[CheckReport]:
    """g(u)/u = exp(Σ u^n/n [y^0] F^n) pour F = 1/y + ... aléatoire, g l'inverse de 1/F"""
    rng = random.Random(seed)
    reports = []
    for index in range(count):
        F = random_laurent(rng, 1, order + 1)
        parameters = {"seed": seed, "case": index, "order": order}
        try:
            reports.append(compare_series("lagrange-inverse", parameters,
                                          single_branch_quotient(F, order), lagrange_exp_log(F, order)))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("lagrange-inverse", parameters, error))
    return reports


def verify_lagrange_branches(seed: int = 0, count: int = 5, order: int = 6) -> List[CheckReport]:
    """Même identité pour F = y^{-2} + ... avec les deux branches ±√u explicites"""
    rng = random.Random(seed)
    reports = []
    for index in range(count):
        F = random_laurent(rng, 2, 2 * order + 2)
        parameters = {"seed": seed, "case": index, "order": order}
        try:
            reports.append(compare_series("lagrange-branches", parameters,
                                          two_branch_quotient(F, order), lagrange_exp_log(F, order)))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("lagrange-branches", parameters, error))
    return reports


def verify_two_branch_sums(order: int = 6, j_max: int = 6) -> CheckReport:
    """r = 3: P_j(y) = g(s)^j + g(-s)^j avec y = s²"""
    parameters = {"r": 3, "order": order, "jMax": j_max}
    system = BranchSystem(3, order)
    g = system.g
    ring = g.ring
    g_minus = g.compose(ring.gen("s").scale(-1))
    target = y_ring(order)
    for j in range(1, j_max + 1):
        explicit = g ** j + g_minus ** j
        coeffs = []
        for power in range(2 * order + 1):
            value = explicit.coefficient((power,))
            if power % 2:
                if value:
                    return CheckReport.failure("two-branch-sums", parameters, f"s^{power}", 0, str(value), j=j)
            else:
                coeffs.append(value)
        report = compare_series("two-branch-sums", dict(parameters, j=j),
                                target.from_univariate("y", coeffs), system.power_sum(j))
        if not report.passed:
            return report
    return CheckReport.success("two-branch-sums", parameters)


def verify_b3_square(r_max: int = 5, order: int = 8) -> List[CheckReport]:
    """B3² (1-y)^r Π_i α_i(y) = y, le produit des branches venant des sommes de puissances"""
    reports = []
    for r in range(2, r_max + 1):
        parameters = {"r": r, "order": order}
        try:
            ring = y_ring(order)
            one, y = ring.one(), ring.gen("y")
            b3 = b3_product(r, order)
            left = b3 * b3 * (one - y) ** r * branch_product(r, order, "newton")
            reports.append(compare_series("b3-square", parameters, one, left))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("b3-square", parameters, error))
    return reports


def verify_b3_agreement(r: int, order: int, verlinde: Optional[UniversalSeriesBundle] = None,
                        localization: bool = False, quick: bool = False,
                        jobs: Optional[int] = None) -> List[CheckReport]:
    """B3 par le produit des branches, par la formule exponentielle et, en option, par localisation"""
    parameters = {"r": r, "order": order}
    reports = []
    try:
        product = b3_product(r, order)
        reports.append(compare_series("b3-product-exp", parameters, b3_exp_formula(r, order), product))
        if localization or verlinde is not None:
            verlinde = verlinde or extract_universal("verlinde", r + 1, order, quick=quick, jobs=jobs)
            log_b3 = limit_pullback(verlinde.log_g[3], verlinde_t(r, order))
            reports.append(compare_series("b3-localization", parameters, product.log(), log_b3))
    except HilbSeriesError as error:
        reports.append(CheckReport.from_error("b3-agreement", parameters, error))
    return reports


def verify_g3_verlinde_limit(k: int, w_order: int) -> CheckReport:
    """La limite de Verlinde de log G3 (forme close en (w, z)) redonne log B3 de rang k - 1"""
    parameters = {"k": k, "wOrder": w_order}
    try:
        z_order = k * w_order
        log_g3 = closed_form_g(3, k, w_order, z_order).log()
        limit = SymRegSeries(k, log_g3).verlinde_limit()
        pulled = limit_pullback(limit, verlinde_variable(k, w_order))
    except HilbSeriesError as error:
        return CheckReport.from_error("g3-verlinde-limit", parameters, error)
    return compare_series("g3-verlinde-limit", parameters, b3_exp_formula(k - 1, w_order).log(), pulled)


def verify_b4_vanishing(n_max: int = 10) -> List[CheckReport]:
    """4rα_n - r² - 3r^{2n} - 2nβ_n - 2nr²γ_n = 0 pour r = 0 et r = 1"""
    reports = []
    for r in (0, 1):
        parameters = {"r": r, "nMax": n_max}
        report = CheckReport.success("b4-vanishing", parameters)
        for n in range(1, n_max + 1):
            value = b4_log_coefficient(n, r)
            if value:
                report = CheckReport.failure("b4-vanishing", parameters, f"y^{n}", 0, str(value))
                break
        reports.append(report)
    return reports


def verify_bconj(ranks: Sequence[int] = (2, 3, 4), order: int = 6,
                 verlinde: Optional[Sequence[UniversalSeriesBundle]] = None,
                 localization: bool = False, quick: bool = False,
                 jobs: Optional[int] = None) -> List[CheckReport]:
    """B4 par les sommes binomiales contre B4 par le produit des branches (et la localisation en option)"""
    reports = []
    bundles = {bundle.rank_parameter: bundle for bundle in (verlinde or [])}
    for r in ranks:
        parameters = {"r": r, "order": order}
        try:
            binomial = b4_binomial(r, order)
            reports.append(compare_series("bconj", parameters, binomial, b4_conjecture(r, order)))
            if localization or r in bundles:
                bundle = bundles.get(r) or extract_universal("verlinde", r + 1, order, quick=quick, jobs=jobs)
                log_b4 = limit_pullback(bundle.log_g[4], verlinde_t(r, order))
                reports.append(compare_series("b4-localization", parameters, binomial.log(), log_b4))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("bconj", parameters, error))
        logger.info(f"Conjecture B4 testée pour r={r} à l'ordre {order}")
    return reports


def verify_b4_symbolic(order: int = 4, ranks: Sequence[int] = (2, 5, 7)) -> List[CheckReport]:
    """Les polynômes en r interpolés redonnent log B4 en des rangs hors des nœuds de validation"""
    try:
        symbolic = b4_symbolic(order)
    except HilbSeriesError as error:
        return [CheckReport.from_error("b4-symbolic", {"order": order}, error)]
    reports = []
    for r in ranks:
        parameters = {"r": r, "order": order}
        reports.append(compare_series("b4-symbolic", parameters, b4_binomial(r, order).log(), symbolic.log_series(r)))
    return reports


def closedform_suite(order: int = 6, quick: bool = True) -> List[CheckReport]:
    """Lagrange, sommes de puissances, B3 et conjecture B4 sans localisation"""
    reports: List[CheckReport] = []
    reports.extend(verify_lagrange_inverse(order=min(order, 8)))
    reports.extend(verify_lagrange_branches(order=min(order, 6)))
    reports.append(verify_two_branch_sums(order))
    reports.extend(verify_b3_square(3 if quick else 5, order))
    for r in (2, 3):
        reports.extend(verify_b3_agreement(r, order))
    reports.extend(verify_b4_vanishing(6 if quick else 10))
    reports.extend(verify_bconj((2, 3) if quick else (2, 3, 4), order))
    return reports
