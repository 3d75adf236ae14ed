"""
Constant terms of powers of the bracket (x^{k-1} - x^{1-k}) / (x - 1/x)

Created: 2024-11-04
"""
# backend/closedform/brackets.py
from functools import lru_cache

from sympy.polys.domains import QQ

from backend.core.series import SeriesRing
from backend.partfun.omega import generalized_binomial


@lru_cache(maxsize=None)
def bracket_constant_term(k: int, n: int) -> int:
    """[x^0] ((x^{k-1} - x^{1-k}) / (x - 1/x))^{2n}.

    Avec m = |k-1| et X = x^2 le crochet vaut ±X^{-(m-1)/2} (1 + X + ... + X^{m-1}),
    d'où le coefficient de X^{n(m-1)} dans (1 + ... + X^{m-1})^{2n}.
    """
    if n < 0:
        raise ValueError(f"Puissance négative: {n}")
    m = abs(k - 1)
    if m == 0:
        return 1 if n == 0 else 0
    target = n * (m - 1)
    ring = SeriesRing(("X",), (target,), QQ)
    block = ring.from_univariate("X", [1] * m)
    return int((block ** (2 * n)).coefficient((target,)))


def bracket_constant_term_binomial(k: int, n: int) -> int:
    """Même constante par inclusion-exclusion: Σ_{im <= n(m-1)} (-1)^i binom(2n, i) binom(n(m+1) - im - 1, 2n - 1)"""
    m = abs(k - 1)
    if n == 0:
        return 1
    if m == 0:
        return 0
    target = n * (m - 1)
    total = QQ.zero
    for i in range(target // m + 1):
        term = generalized_binomial(2 * n, i) * generalized_binomial(n * (m + 1) - i * m - 1, 2 * n - 1)
        total += -term if i % 2 else term
    return int(total)
