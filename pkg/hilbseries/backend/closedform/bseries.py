"""
Closed forms of the Verlinde series B3 and B4

Created: 2024-11-04
"""
# backend/closedform/bseries.py
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence

from sympy.polys.domains import QQ

from backend.closedform.lagrange import BranchSystem, lagrange_exp_log
from backend.core.laurent import LaurentSeries
from backend.core.series import TruncatedSeries
from backend.partfun.omega import generalized_binomial
from backend.partfun.slope import evaluate_polynomial, interpolate_polynomial
from backend.universal.closed_forms import g3_h_series
from backend.universal.symreg import y_ring
from backend.utils.exceptions import RootObstruction, SquareRootObstruction, ValidationFailure

logger = logging.getLogger(__name__)

B4_METHODS = ("binomial", "conjecture")
BRANCH_METHODS = ("lagrange", "newton")


def _binom(x, j: int):
    return generalized_binomial(x, j)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# B3

def elementary_from_power_sums(power_sums: Sequence[TruncatedSeries], degree: int) -> TruncatedSeries:
    """e_degree à partir de P_1..P_degree (identités de Newton)"""
    ring = power_sums[0].ring
    elementary = [ring.one()]
    for m in range(1, degree + 1):
        total = ring.zero()
        for i in range(1, m + 1):
            term = elementary[m - i] * power_sums[i - 1]
            total = total + (term if i % 2 else -term)
        elementary.append(total.scale(QQ(1, m)))
    return elementary[degree]


def bracket_reciprocal(r: int, order: int) -> LaurentSeries:
    """1/f(x) = x^{1-r} (1 + x + ... + x^{r-1})²"""
    precision = max((order - 1) * (r - 1), r - 1)
    block = [0] * (2 * r - 1)
    for i in range(r):
        for j in range(r):
            block[i + j] += 1
    return LaurentSeries(1 - r, block, precision, QQ, "x")


def branch_product(r: int, order: int, method: str = "lagrange") -> TruncatedSeries:
    """(-1)^r Π_i α_i(y) / y, normalisé au terme constant 1.

    "lagrange" applique lagrange_exp_log à 1/f, "newton" passe par les sommes de puissances.
    """
    if method not in BRANCH_METHODS:
        raise ValueError(f"Méthode inconnue {method!r} (attendu: {', '.join(BRANCH_METHODS)})")
    ring = y_ring(order)
    if method == "lagrange":
        return TruncatedSeries(ring, dict(lagrange_exp_log(bracket_reciprocal(r, order), order).terms))
    system = BranchSystem(r, order + 1)
    sums = [system.power_sum(j) for j in range(1, r)]
    product = elementary_from_power_sums(sums, r - 1).scale(_sign(r))
    return ring.from_univariate("y", [product.coefficient((j + 1,)) for j in range(order + 1)])


def b3_product(r: int, order: int, method: str = "lagrange") -> TruncatedSeries:
    """B3(y) par B3² = y / ((1-y)^r Π_i α_i(y))"""
    ring = y_ring(order)
    if r in (0, 1):
        return ring.one()
    if r < 0:
        raise ValueError(f"Produit des branches défini pour r >= 0 (r={r})")
    one, y = ring.one(), ring.gen("y")
    square = ((one - y) ** r * branch_product(r, order, method)).invert()
    constant = square.constant_term()
    if constant != QQ.one:
        raise SquareRootObstruction("B3² doit avoir un terme constant égal à 1", {"r": r, "constant": str(constant)})
    return square.power(QQ(1, 2))


def b3_exp_formula(r: int, order: int) -> TruncatedSeries:
    """B3(y) = exp(Σ_n (r - c_n) y^n / 2n), c_n le terme constant du crochet"""
    return g3_h_series(r + 1, order).exp()


# B4

@dataclass(frozen=True)
class BinomialTriple:
    alpha: object
    beta: object
    gamma: object


def _alpha(n: int, r: int):
    total = QQ.zero
    for i in range(n // 2 + 1):
        for j in range(n + 2 * i + 1):
            k = n + 2 * i - j
            total += _sign(j) * _binom(k * r + n - 1, 2 * n - 1) * _binom(2 * n, j)
    return total


def _beta(n: int, r: int):
    total = QQ.zero
    for k in range(1, n):
        ell = n - k
        inner = QQ.zero
        for i in range(k):
            left = _binom(2 * k, i)
            if not left:
                continue
            for j in range(ell):
                factor = _sign(i + j) * left * _binom(2 * ell, j)
                if not factor:
                    continue
                chain = QQ.zero
                for e in range(1, 2 * ell + 1):
                    chain += e * _binom((r + 1) * ell - j * r, 2 * ell - e) * _binom((r + 1) * k - i * r, 2 * k + e)
                inner += factor * chain
            for j in range(ell, min(2 * ell, n - i - 1) + 1):
                factor = _sign(i + j) * left * _binom(2 * ell, j)
                inner += factor * QQ((j * k - ell * i) * r, n) * _binom((r + 1) * n - r * (i + j) - 1, 2 * n - 1)
        total += inner * QQ(1, k * ell)
    return total


def _gamma_block(k: int, total_index: int, r: int):
    """Σ_{i+j=total_index} (-1)^i binom(rj + k - 1, 2k - 1) binom(2k, i)"""
    block = QQ.zero
    for i in range(total_index + 1):
        block += _sign(i) * _binom(r * (total_index - i) + k - 1, 2 * k - 1) * _binom(2 * k, i)
    return block


def _gamma(n: int, r: int):
    total = QQ.zero
    for k in range(1, n):
        ell = n - k
        inner = QQ.zero
        for a in range(1, min(k, ell) + 1):
            inner += a * _gamma_block(k, k - a, r) * _gamma_block(ell, a + ell, r)
        total += inner * QQ(1, k * ell)
    return total


@lru_cache(maxsize=None)
def binomial_triples(n: int, r: int) -> BinomialTriple:
    """Les trois sommes binomiales (α_n, β_n, γ_n) au rang r"""
    if n < 1:
        raise ValueError(f"n >= 1 attendu (n={n})")
    return BinomialTriple(_alpha(n, r), _beta(n, r), _gamma(n, r))


def b4_log_coefficient(n: int, r: int):
    """(4rα_n - r² - 3r^{2n} - 2nβ_n - 2nr²γ_n) / 8n"""
    triple = binomial_triples(n, r)
    value = 4 * r * triple.alpha - r * r - 3 * r ** (2 * n) - 2 * n * triple.beta - 2 * n * r * r * triple.gamma
    return QQ(1, 8 * n) * value


def b4_log_binomial(r: int, order: int) -> TruncatedSeries:
    return y_ring(order).from_univariate("y", [QQ.zero] + [b4_log_coefficient(n, r) for n in range(1, order + 1)])


def b4_binomial(r: int, order: int) -> TruncatedSeries:
    """B4(-y(1-y)^{r²-1}) par les sommes binomiales"""
    if r < 0:
        raise ValueError(f"Sommes binomiales définies pour r >= 0 (r={r})")
    return b4_log_binomial(r, order).exp()


def b4_conjecture(r: int, order: int) -> TruncatedSeries:
    """B4 par (B4 B3^r)^8 = (1-r²y)³/(1-y)^{3r²} (Π_{i,j}(1 - α_iα_j) Π_{i≠j}(1 - α_i^r α_j^r))²"""
    ring = y_ring(order)
    if r in (0, 1):
        return ring.one()
    if r < 0:
        raise ValueError(f"Produit des branches défini pour r >= 0 (r={r})")
    system = BranchSystem(r, order)
    limit = (r - 1) * order
    # log Π_{i,j}(1 - α_iα_j) = -Σ P_n²/n, log Π_{i≠j}(1 - α_i^rα_j^r) = -Σ (P_{rn}² - P_{2rn})/n
    pairs = ring.zero()
    for n in range(1, limit + 1):
        p = system.power_sum(n)
        if p.is_zero():
            continue
        pairs = pairs - (p * p).scale(QQ(1, n))
    for n in range(1, limit // r + 1):
        p = system.power_sum(r * n)
        pairs = pairs - (p * p - system.power_sum(2 * r * n)).scale(QQ(1, n))
    one, y = ring.one(), ring.gen("y")
    prefactor = (one - y.scale(r * r)) ** 3 * ((one - y) ** (3 * r * r)).invert()
    eighth = prefactor * pairs.scale(2).exp()
    constant = eighth.constant_term()
    if constant != QQ.one:
        raise RootObstruction("(B4 B3^r)^8 doit avoir un terme constant égal à 1", {"r": r, "constant": str(constant)})
    return eighth.power(QQ(1, 8)) * (b3_product(r, order) ** r).invert()


@dataclass
class SymbolicB4:
    """Coefficients de log B4(-y(1-y)^{r²-1}) comme polynômes en r (coefficients croissants)"""
    order: int
    polynomials: List[List]

    def coefficient(self, n: int, r):
        if n == 0:
            return QQ.zero
        return evaluate_polynomial(self.polynomials[n - 1], QQ(r))

    def log_series(self, r: int) -> TruncatedSeries:
        return y_ring(self.order).from_univariate("y", [self.coefficient(n, r) for n in range(self.order + 1)])

    def degree(self, n: int) -> int:
        coeffs = self.polynomials[n - 1]
        nonzero = [i for i, c in enumerate(coeffs) if c]
        return nonzero[-1] if nonzero else -1


def b4_symbolic(order: int) -> SymbolicB4:
    """Interpolation en r = 0..2n+2 de chaque coefficient, validée en r = 2n+3"""
    polynomials = []
    for n in range(1, order + 1):
        nodes = list(range(2 * n + 3))
        coeffs = interpolate_polynomial(nodes, [b4_log_coefficient(n, r) for r in nodes])
        check = 2 * n + 3
        expected = b4_log_coefficient(n, check)
        actual = evaluate_polynomial(coeffs, QQ(check))
        if actual != expected:
            raise ValidationFailure(
                f"Coefficient de y^{n} de log B4 non polynomial en r",
                n, 0, {"r": check, "expected": str(expected), "actual": str(actual)})
        polynomials.append(coeffs)
        logger.debug(f"Coefficient de y^{n} de log B4 interpolé en r")
    return SymbolicB4(order, polynomials)
