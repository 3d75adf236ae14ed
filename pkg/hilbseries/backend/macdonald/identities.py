"""
Numeric verifiers for the Macdonald identity toolkit

Created: 2024-11-04
"""
# backend/macdonald/identities.py
import logging
import random
from typing import List, Optional

from backend.combinatorics.partitions import (
    EMPTY,
    Partition,
    enumerate_partitions,
    partitions_up_to,
    stat_n,
    stat_t,
)
from backend.core.coefficients import QT, Q_GEN, T_GEN, qt_monomial
from backend.core.series import SeriesRing
from backend.macdonald.modified import modified_macdonald
from backend.macdonald.plethysm import (
    box_product,
    d_alphabet,
    plethystic_evaluate,
    plethystic_exp,
    scalar_value,
    shifted_alphabet,
)
from backend.macdonald.symfunc import SymFunc, tensor_coefficients
from backend.types.report_types import CheckReport, compare_series

logger = logging.getLogger(__name__)


def _qt_denominator(partition: Partition):
    """Π (1 - q^{λ_i})(1 - t^{λ_i})"""
    value = QT.one
    for part in partition.parts:
        value = value * (QT.one - Q_GEN ** part) * (QT.one - T_GEN ** part)
    return value


def kernel_exp(max_degree: int) -> SymFunc:
    """pExp[X/((1-q)(1-t))] = Σ_λ p_λ / (z_λ Π(1-q^{λ_i})(1-t^{λ_i}))"""
    terms = {
        lam: QT.one / (QT.convert(lam.z_lambda()) * _qt_denominator(lam))
        for lam in partitions_up_to(max_degree)
    }
    return SymFunc(terms, max_degree)


def translate_by_one(f: SymFunc, max_degree: int) -> SymFunc:
    """F[X + 1]: p_k -> p_k + 1"""
    result = SymFunc({}, max_degree)
    for lam, coeff in f.terms.items():
        expanded = SymFunc.one(max_degree).scale(coeff)
        for part in lam.parts:
            expanded = expanded * SymFunc({Partition((part,)): 1, EMPTY: 1}, max_degree)
        result = result + expanded
    return result


def verify_cauchy(n: int, max_weight: Optional[int] = None) -> CheckReport:
    """pExp[-XY/((1-q)(1-t))] en degré (n, n) contre Σ_{|λ|=n} H~_λ[X] H~_λ[Y] / N_λ"""
    parameters = {"n": n}
    partitions = enumerate_partitions(n)
    rhs = tensor_coefficients(
        (QT.one / stat_n(lam), modified_macdonald(lam, max_weight), modified_macdonald(lam, max_weight))
        for lam in partitions
    )
    for alpha in partitions:
        for beta in partitions:
            expected = QT.zero
            if alpha == beta:
                sign = -1 if len(alpha) % 2 else 1
                expected = QT.convert(sign) / (QT.convert(alpha.z_lambda()) * _qt_denominator(alpha))
            actual = rhs.get((alpha, beta), QT.zero)
            if expected != actual:
                logger.warning(f"Cauchy: écart en p{alpha} ⊗ p{beta}")
                return CheckReport.failure(
                    "cauchy", parameters, f"p{alpha}⊗p{beta}", expected, actual)
    logger.info(f"Identité de Cauchy vérifiée en degré {n}")
    return CheckReport.success("cauchy", parameters)


def verify_garsia_tesler(mu: Partition, degree_cap: int, max_weight: Optional[int] = None) -> CheckReport:
    """H~_μ[X+1] = pExp[X/((1-q)(1-t))] Σ_λ (-1)^{|λ|} H~_λ[X] H~_λ[D_μ] / (T_λ N_λ)"""
    parameters = {"mu": mu.to_json(), "degreeCap": degree_cap}
    full = max(mu.weight, degree_cap)
    lhs = translate_by_one(modified_macdonald(mu, max_weight).with_max_degree(full), full)
    lhs = lhs.with_max_degree(degree_cap)
    d_mu = d_alphabet(mu)
    total = SymFunc({}, degree_cap)
    for lam in partitions_up_to(degree_cap):
        h_lam = modified_macdonald(lam, max_weight).with_max_degree(degree_cap)
        value = scalar_value(plethystic_evaluate(modified_macdonald(lam, max_weight), d_mu))
        if not value:
            continue
        coeff = value / (stat_t(lam) * stat_n(lam))
        if lam.weight % 2:
            coeff = -coeff
        total = total + h_lam.scale(coeff)
    rhs = kernel_exp(degree_cap) * total
    difference = lhs.first_difference(rhs)
    if difference is not None:
        partition, expected, actual = difference
        return CheckReport.failure("garsia-tesler", parameters, f"p{partition}", expected, actual)
    logger.info(f"Garsia-Tesler vérifiée pour μ={mu}")
    return CheckReport.success("garsia-tesler", parameters)


def verify_koornwinder(mu: Partition, nu: Partition, max_weight: Optional[int] = None) -> CheckReport:
    """H~_ν[1+uD_μ] Π_μ(1-u q^c t^r) = H~_μ[1+uD_ν] Π_ν(1-u q^c t^r), puis la limite u -> ∞"""
    parameters = {"mu": mu.to_json(), "nu": nu.to_json()}
    ring = SeriesRing(("u",), (mu.weight + nu.weight,), QT)
    h_mu = modified_macdonald(mu, max_weight)
    h_nu = modified_macdonald(nu, max_weight)
    lhs = plethystic_evaluate(h_nu, shifted_alphabet(ring, "u", mu)) * box_product(mu, ring, "u")
    rhs = plethystic_evaluate(h_mu, shifted_alphabet(ring, "u", nu)) * box_product(nu, ring, "u")
    report = compare_series("koornwinder", parameters, lhs, rhs)
    if not report.passed:
        return report

    left = scalar_value(plethystic_evaluate(h_nu, d_alphabet(mu))) / stat_t(nu)
    right = scalar_value(plethystic_evaluate(h_mu, d_alphabet(nu))) / stat_t(mu)
    if nu.weight % 2:
        left = -left
    if mu.weight % 2:
        right = -right
    if left != right:
        return CheckReport.failure("koornwinder", parameters, "limite u->oo", left, right)
    return CheckReport.success("koornwinder", parameters, limit=True)


def verify_macdonald_at_u(mu: Partition, max_weight: Optional[int] = None) -> CheckReport:
    """H~_μ[1-u] = Π_{□∈μ} (1 - u q^c t^r)"""
    parameters = {"mu": mu.to_json()}
    ring = SeriesRing(("u",), (mu.weight,), QT)
    alphabet = ring.one() - ring.gen("u")
    actual = plethystic_evaluate(modified_macdonald(mu, max_weight), alphabet)
    return compare_series("macdonald-at-u", parameters, box_product(mu, ring, "u"), actual)


def verify_w_specialisation(mu: Partition, max_weight: Optional[int] = None) -> CheckReport:
    """H~_μ[w] = w^{|μ|}"""
    parameters = {"mu": mu.to_json()}
    ring = SeriesRing(("w",), (mu.weight,), QT)
    actual = plethystic_evaluate(modified_macdonald(mu, max_weight), ring.gen("w"))
    return compare_series("w-specialisation", parameters, ring.monomial({"w": mu.weight}), actual)


def _random_alphabet(rng: random.Random, ring: SeriesRing):
    terms = {}
    for exp in ring.box_exponents()[1:]:
        if rng.random() < 0.5:
            continue
        coeff = rng.randint(-2, 2)
        if coeff:
            terms[exp] = qt_monomial(rng.randint(0, 2), rng.randint(0, 2)) * coeff
    return ring.from_dict(terms)


def verify_pexp_multiplicative(seed: int = 0, count: int = 100, orders=(2, 2)) -> List[CheckReport]:
    """pExp[A+B] = pExp[A] pExp[B] et pExp[-A] pExp[A] = 1 sur des alphabets aléatoires"""
    rng = random.Random(seed)
    ring = SeriesRing(("x", "y"), orders, QT)
    reports = []
    for index in range(count):
        a = _random_alphabet(rng, ring)
        b = _random_alphabet(rng, ring)
        parameters = {"seed": seed, "case": index}
        report = compare_series(
            "pexp-multiplicative", parameters, plethystic_exp(a + b), plethystic_exp(a) * plethystic_exp(b))
        if report.passed:
            report = compare_series(
                "pexp-inverse", parameters, ring.one(), plethystic_exp(-a) * plethystic_exp(a))
        reports.append(report)
    return reports


def macdonald_suite(max_weight: int, cap: int = 3) -> List[CheckReport]:
    """Suite complète: Cauchy, Garsia-Tesler, Koornwinder et spécialisations"""
    reports: List[CheckReport] = []
    for n in range(1, max_weight + 1):
        reports.append(verify_cauchy(n, max_weight))
    for mu in partitions_up_to(min(cap, max_weight)):
        reports.append(verify_garsia_tesler(mu, min(cap, max_weight), max_weight))
    small = [p for p in partitions_up_to(min(cap, max_weight)) if p.weight]
    for mu in small:
        for nu in small:
            if (mu.weight, mu.parts) <= (nu.weight, nu.parts):
                reports.append(verify_koornwinder(mu, nu, max_weight))
    for mu in partitions_up_to(max_weight):
        if mu.weight:
            reports.append(verify_macdonald_at_u(mu, max_weight))
            reports.append(verify_w_specialisation(mu, max_weight))
    return reports
