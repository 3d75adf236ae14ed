"""
Identity checks for the master partition function

Created: 2024-11-04
"""
# backend/partfun/checks.py
import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from sympy.polys.domains import QQ

from backend.combinatorics.partitions import Partition, box_stats, partitions_up_to, stat_n, stat_t
from backend.core.coefficients import QT, lift
from backend.core.laurent import LaurentSeries, laurent_product
from backend.core.series import SeriesRing, TruncatedSeries
from backend.macdonald.modified import modified_macdonald
from backend.macdonald.plethysm import plethystic_evaluate, plethystic_exp, plethystic_log_kernel, variables_alphabet
from backend.partfun.extraction import (
    HExtractor,
    extract_h,
    polylog_correction,
    symmetric_defect,
)
from backend.partfun.omega import (
    ChernKernel,
    OmegaSpec,
    VerlindeKernel,
    chern_term_value,
    omega_master,
    segre_term_value,
    slope_ring,
)
from backend.partfun.slope import SYMBOLIC, SlopeLine, dq_coefficients, exp_coefficients, numeric_slopes
from backend.types.report_types import CheckReport, compare_series, format_exponent
from backend.utils.config import ConfigManager
from backend.utils.exceptions import HilbSeriesError

logger = logging.getLogger(__name__)

DEFAULT_LIMIT_SLOPE = Fraction(7, 13)


def default_weights(k: int) -> List[Fraction]:
    return [Fraction(1, j + 2) for j in range(k)]


# Equation fonctionnelle et palindromie

def verify_functional_equation(k: int, w_order: int, z_order: int,
                               max_weight: Optional[int] = None) -> CheckReport:
    """Ω = pExp[-(w+Σz)/((1-q)(1-t))] Σ_μ (-1)^{|μ|} H~_μ[w+1] H~_μ[Σz] T_μ / N_μ

    H~_μ[Σz] est homogène de degré |μ| en z: la somme sur μ s'arrête à |μ| <= k z_order.
    """
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    spec = OmegaSpec(k, w_order, z_order)
    ring = spec.ring()
    cap = k * z_order
    macdonald_cap = ConfigManager.settings().macdonald_max_weight if max_weight is None else max_weight
    try:
        lhs = omega_master(spec)
        w_plus_one = ring.one() + ring.gen("w")
        z_sum = variables_alphabet(ring, spec.z_names)
        total = ring.zero()
        for mu in partitions_up_to(cap):
            h_mu = modified_macdonald(mu, macdonald_cap)
            term = plethystic_evaluate(h_mu, w_plus_one) * plethystic_evaluate(h_mu, z_sum)
            coeff = stat_t(mu) / stat_n(mu)
            total = total + term.scale(-coeff if mu.weight % 2 else coeff)
        rhs = plethystic_exp(plethystic_log_kernel(ring, ("w",) + spec.z_names, -1)) * total
    except HilbSeriesError as error:
        return CheckReport.from_error("functional-equation", parameters, error)
    report = compare_series("functional-equation", parameters, lhs, rhs, muCap=cap)
    if report.passed:
        logger.info(f"Équation fonctionnelle vérifiée pour k={k}, ordres ({w_order}, {z_order})")
    return report


def verify_palindromic(k: int, w_order: int, z_order: int) -> CheckReport:
    """Ω~ = pExp[(w+Σz)/((1-q)(1-t))] Ω: polynômes en w de degré <= |n|, invariants par w -> 1/w, z -> wz"""
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    spec = OmegaSpec(k, w_order, z_order)
    ring = spec.ring()
    try:
        tilde = plethystic_exp(plethystic_log_kernel(ring, ("w",) + spec.z_names)) * omega_master(spec)
    except HilbSeriesError as error:
        return CheckReport.from_error("palindromic", parameters, error)
    zero = QT.zero
    for exp in sorted(tilde.terms):
        j, z_exp = exp[0], exp[1:]
        degree = sum(z_exp)
        value = tilde.terms[exp]
        if j > degree:
            return CheckReport.failure(
                "palindromic", parameters, format_exponent(ring.names, exp), zero, value,
                reason="degré en w supérieur au degré en z")
        partner = degree - j
        if partner <= w_order:
            other = tilde.terms.get((partner,) + z_exp, zero)
            if other != value:
                return CheckReport.failure(
                    "palindromic", parameters, format_exponent(ring.names, exp), other, value)
    logger.info(f"Palindromie de Ω~ vérifiée pour k={k}")
    return CheckReport.success("palindromic", parameters)


# Théorème de symétrie et régularité

def verify_symmetry_theorem(d1: int, d2: int, k: int, w_order: int, z_order: int,
                            method: Optional[str] = None) -> CheckReport:
    """H~_{d1,d2} = H_{d1,d2} + B B / ((d1+1)!(d2+1)!) (Li(w) + k Li(z)) est palindromique en w"""
    parameters = {"d1": d1, "d2": d2, "k": k, "wOrder": w_order, "zOrder": z_order}
    try:
        component = extract_h(d1, d2, k, w_order, z_order, method=method)
    except HilbSeriesError as error:
        return CheckReport.from_error("symmetry-theorem", parameters, error)
    series = component.series
    tilde = series + polylog_correction(d1, d2, k, series.ring)
    defect = symmetric_defect(tilde)
    if defect is not None:
        (m, n), expected, actual = defect
        return CheckReport.failure("symmetry-theorem", parameters, f"w^{m}*z^{n}", expected, actual)
    logger.info(f"Théorème de symétrie vérifié pour (d1, d2)=({d1}, {d2}), k={k}")
    return CheckReport.success("symmetry-theorem", parameters)


def verify_regularity(k: int, w_order: int, z_order: Optional[int] = None,
                      slope_count: int = 5) -> CheckReport:
    """(1 - e^{t1})(1 - e^{t2}) log Ω sans pôle: [W^N s^j] log Ω = 0 pour j < 2N - 2"""
    z_order = w_order if z_order is None else z_order
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    extractor = HExtractor(k, w_order, z_order, -2)
    for line in [SYMBOLIC] + numeric_slopes(slope_count):
        try:
            violation = extractor.regularity_violation(line)
        except HilbSeriesError as error:
            return CheckReport.from_error("regularity", parameters, error)
        if violation is not None:
            n, j = violation
            return CheckReport.failure(
                "regularity", parameters, f"w^{n}*s^{j - 2 * n}", 0, "non nul", slope=line.label())
    return CheckReport.success("regularity", parameters, slopes=slope_count + 1)


def verify_slope_independence(d1: int, d2: int, k: int, w_order: int, z_order: int,
                              slopes: Optional[Sequence[Fraction]] = None) -> CheckReport:
    """extract_h symbolique contre deux jeux de pentes numériques"""
    parameters = {"d1": d1, "d2": d2, "k": k, "wOrder": w_order, "zOrder": z_order}
    configured = list(slopes) if slopes is not None else list(ConfigManager.settings().slopes)
    try:
        reference = extract_h(d1, d2, k, w_order, z_order, method="symbolic").series
        for variant in (configured, configured[::-1]):
            numeric = extract_h(d1, d2, k, w_order, z_order, method="numeric", slopes=variant).series
            report = compare_series("slope-independence", parameters, reference, numeric)
            if not report.passed:
                return report
    except HilbSeriesError as error:
        return CheckReport.from_error("slope-independence", parameters, error)
    return CheckReport.success("slope-independence", parameters)


# Noyaux de Chern et de Verlinde sur une droite

def _kernel_ring(line: SlopeLine, w_order: int, s_order: Optional[int]) -> SeriesRing:
    return slope_ring(line, 2 * w_order if s_order is None else s_order)


def omega_chern(k: int, w_order: int, line: SlopeLine = SYMBOLIC, v: Optional[Sequence] = None,
                s_order: Optional[int] = None) -> TruncatedSeries:
    """Ω^C(w; v; s, c s) en W = w/s^2: le coefficient de w^n est s^{-2n} fois la série en s"""
    weights = Counter(v if v is not None else [0] * k)
    kernel = ChernKernel(line, _kernel_ring(line, w_order, s_order), 1, line.c, weights)
    return kernel.partition_sum(w_order)


def omega_verlinde(k: int, w_order: int, line: SlopeLine = SYMBOLIC, v: Optional[Sequence] = None,
                   s_order: Optional[int] = None) -> TruncatedSeries:
    """Ω^V(w; v; s, c s) en W = w/s^2"""
    weights = Counter(v if v is not None else [0] * k)
    kernel = VerlindeKernel(line, _kernel_ring(line, w_order, s_order), 1, line.c, weights)
    return kernel.partition_sum(w_order)


def w_coefficient(series: TruncatedSeries, n: int) -> LaurentSeries:
    """Coefficient de w^n d'une somme normalisée, comme série de Laurent en s"""
    row = series.slice("W", n)
    order = row.ring.order_of("s")
    coeffs = [row.coefficient({"s": j}) for j in range(order + 1)]
    return LaurentSeries(-2 * n, coeffs, order - 2 * n, series.domain)


def verify_chern_limit_term(partition: Partition, k: int, v: Optional[Sequence] = None,
                            slope: Fraction = DEFAULT_LIMIT_SLOPE) -> CheckReport:
    """ε^{(2-k)n} Π (1 + ε - e^{ε(c t1 + r t2 - v)}) / N_λ(e^{ε t1}, e^{ε t2}) -> terme de Ω^C"""
    v = list(v) if v is not None else default_weights(k)
    parameters = {"partition": partition.to_json(), "k": k}
    t1, t2 = QQ.one, lift(slope, QQ)
    precision = 4
    factors = []
    for st in box_stats(partition):
        shift = t1 * st.column + t2 * st.row
        for vj in v:
            gamma = shift - lift(vj, QQ)
            factors.append(
                LaurentSeries.constant(1, precision) + LaurentSeries.monomial(1, precision)
                - LaurentSeries.exp_series(gamma, precision))
        for a, b in ((t1 * (st.arm + 1), t2 * st.leg), (t2 * (st.leg + 1), t1 * st.arm)):
            factors.append(LaurentSeries.difference_quotient(a, b, precision).shift(1).invert())
    n = partition.weight
    limit = LaurentSeries.monomial((2 - k) * n, (2 - k) * n + precision)
    if factors:
        limit = limit * laurent_product(factors)
    expected = chern_term_value(partition, t1, t2, v)
    if limit.has_pole():
        return CheckReport.failure(
            "chern-limit-term", parameters, f"eps^{limit.valuation}", 0, limit.leading_coefficient())
    actual = limit.constant_term()
    if actual != expected:
        return CheckReport.failure("chern-limit-term", parameters, "eps^0", expected, actual)
    return CheckReport.success("chern-limit-term", parameters)


def verify_verlinde_limit_term(partition: Partition, k: int, v: Optional[Sequence] = None,
                               slope: Fraction = DEFAULT_LIMIT_SLOPE, s_order: int = 4) -> CheckReport:
    """Ω((-1)^k w ε^{k+1}; ε^{-1}e^{v}, ..., ε^{-1}; e^{-t1}, e^{-t2}) en ε = 0 -> terme de Ω^V"""
    v = list(v) if v is not None else default_weights(k)
    parameters = {"partition": partition.to_json(), "k": k}
    line = SlopeLine(slope)
    t1, t2 = QQ.one, line.c
    n = partition.weight
    ring = SeriesRing(("eps", "s"), ((k + 1) * n, s_order), QQ)
    s_ring = SeriesRing(("s",), (s_order,), QQ)
    numerator = ring.one()
    denominator = s_ring.one()
    for st in box_stats(partition):
        shift = t1 * st.column + t2 * st.row
        for vj in list(v) + [0]:
            x_i = ring.from_univariate("s", exp_coefficients(lift(vj, QQ) - shift, s_order, QQ))
            numerator = numerator * (ring.gen("eps") - x_i)
        for a, b in ((-t1 * (st.arm + 1), -t2 * st.leg), (-t1 * st.arm, -t2 * (st.leg + 1))):
            denominator = denominator * s_ring.from_univariate("s", dq_coefficients(a, b, s_order, QQ))
    if (k * n) % 2:
        numerator = -numerator
    actual = numerator.slice("eps", 0) * denominator.invert()
    expected = VerlindeKernel(line, s_ring, t1, t2, Counter(v)).term(partition)
    return compare_series("verlinde-limit-term", parameters, expected, actual)


def _verlinde_split_sum(line: SlopeLine, ring: SeriesRing, v: Sequence, w_order: int) -> TruncatedSeries:
    """Σ_λ W^{|λ|} Π_i Π_□ e^{(v_i - c t1 - r t2)s} / (DQ(X1, 0) DQ(X2, 0)), un facteur par variable"""
    order = ring.order_of("s")
    denominators_ring = SeriesRing(("s",), (order,), line.domain)
    full = SeriesRing(("W",) + ring.names, (w_order,) + ring.orders, line.domain)
    terms: Dict = {}
    for partition in partitions_up_to(w_order):
        term = ring.one()
        denominator = denominators_ring.one()
        for st in box_stats(partition):
            shift = line.weight(st.column, st.row)
            for vi in v:
                gamma = lift(vi, line.domain) - shift
                term = term * ring.from_univariate("s", exp_coefficients(gamma, order, line.domain))
            x1 = -line.weight(st.arm + 1, 0) + line.weight(0, st.leg)
            x2 = -line.weight(0, st.leg + 1) + line.weight(st.arm, 0)
            for x in (x1, x2):
                line.require_nonzero(x, f"N_{partition}")
                denominator = denominator * denominators_ring.from_univariate(
                    "s", dq_coefficients(x, line.domain.zero, order, line.domain))
        term = term * denominator.invert().restrict(ring)
        for exp, coeff in term.terms.items():
            key = (partition.weight,) + exp
            terms[key] = terms[key] + coeff if key in terms else coeff
    return TruncatedSeries(full, terms)


def verify_verlinde_sum_dependence(first: Sequence, second: Sequence, w_order: int = 3,
                                   slope: Fraction = DEFAULT_LIMIT_SLOPE) -> CheckReport:
    """H^V ne dépend que de Σ v_i: deux affectations de même somme donnent le même log Ω^V"""
    parameters = {"first": [str(x) for x in first], "second": [str(x) for x in second], "wOrder": w_order}
    if len(first) != len(second) or sum(Fraction(x) for x in first) != sum(Fraction(x) for x in second):
        return CheckReport.skipped("verlinde-sum-dependence", parameters, "rangs ou sommes distincts")
    line = SlopeLine(slope)
    ring = slope_ring(line, 2 * w_order)
    try:
        lhs = _verlinde_split_sum(line, ring, first, w_order).log()
        rhs = _verlinde_split_sum(line, ring, second, w_order).log()
    except HilbSeriesError as error:
        return CheckReport.from_error("verlinde-sum-dependence", parameters, error)
    return compare_series("verlinde-sum-dependence", parameters, lhs, rhs)


def verify_segre_reflection(partition: Partition, v: Sequence,
                            slope: Fraction = DEFAULT_LIMIT_SLOPE) -> CheckReport:
    """Terme de Ω^S(v; t1, t2) = terme de Ω^C(y = -v; -t1, -t2)"""
    parameters = {"partition": partition.to_json(), "v": [str(x) for x in v]}
    t1, t2 = QQ.one, lift(slope, QQ)
    expected = segre_term_value(partition, t1, t2, v)
    actual = chern_term_value(partition, -t1, -t2, (), [-lift(x, QQ) for x in v])
    if expected != actual:
        return CheckReport.failure("segre-reflection", parameters, str(partition), expected, actual)
    return CheckReport.success("segre-reflection", parameters)


def omega_suite(max_weight: int = 3, quick: bool = True) -> List[CheckReport]:
    """Équation fonctionnelle, palindromie, symétrie et limites terme à terme"""
    reports: List[CheckReport] = []
    for k in (0, 1, 2):
        reports.append(verify_functional_equation(k, max_weight, max_weight))
        reports.append(verify_palindromic(k, max_weight, max_weight))
    for k in (1, 2, 3):
        for d1 in (-1, 0, 1):
            for d2 in (-1, 0, 1):
                if d1 + d2 <= 1 and not (quick and k == 3):
                    reports.append(verify_symmetry_theorem(d1, d2, k, max_weight + 1, max_weight + 1))
    for partition in partitions_up_to(3):
        if partition.weight:
            reports.append(verify_chern_limit_term(partition, 2))
            reports.append(verify_verlinde_limit_term(partition, 2))
            reports.append(verify_segre_reflection(partition, default_weights(2)))
    reports.append(verify_regularity(2, min(max_weight, 4)))
    reports.append(verify_verlinde_sum_dependence(
        [Fraction(1, 2), Fraction(1, 3)], [Fraction(5, 6), Fraction(0)], min(max_weight, 3)))
    return reports
