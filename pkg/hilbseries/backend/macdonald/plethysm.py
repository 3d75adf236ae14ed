"""
Plethystic substitution on series alphabets

Created: 2024-11-04
"""
# backend/macdonald/plethysm.py
import logging
from typing import Dict, Iterable

from backend.combinatorics.partitions import Partition, d_monomials
from backend.core.coefficients import QT, Q_GEN, T_GEN, adams_qt, inverse_integer, qt_monomial
from backend.core.series import SeriesRing, TruncatedSeries
from backend.macdonald.symfunc import SymFunc
from backend.utils.exceptions import ConstantTermPresent

logger = logging.getLogger(__name__)

# anneau sans variable: alphabets scalaires de Q(q,t)
SCALAR_RING = SeriesRing((), (), QT)


def adams(alphabet: TruncatedSeries, n: int) -> TruncatedSeries:
    """p_n[A]: chaque variable (et q, t) élevée à la puissance n"""
    if n == 1:
        return alphabet
    ring = alphabet.ring
    terms = {}
    for exp, coeff in alphabet.terms.items():
        scaled = tuple(e * n for e in exp)
        if ring.in_box(scaled):
            terms[scaled] = adams_qt(coeff, n)
    return TruncatedSeries(ring, terms)


class _AdamsCache:
    def __init__(self, alphabet: TruncatedSeries):
        self.alphabet = alphabet
        self.powers: Dict[int, TruncatedSeries] = {}

    def __call__(self, n: int) -> TruncatedSeries:
        if n not in self.powers:
            self.powers[n] = adams(self.alphabet, n)
        return self.powers[n]


def plethystic_evaluate(f: SymFunc, alphabet: TruncatedSeries) -> TruncatedSeries:
    """F[A]: p_n -> A(x^n), prolongé multiplicativement et linéairement"""
    ring = alphabet.ring
    p = _AdamsCache(alphabet)
    products: Dict[Partition, TruncatedSeries] = {}

    def p_lambda(partition: Partition) -> TruncatedSeries:
        if partition not in products:
            if not partition.parts:
                products[partition] = ring.one()
            else:
                head = Partition(partition.parts[1:])
                products[partition] = p_lambda(head) * p(partition.parts[0])
        return products[partition]

    result = ring.zero()
    for partition, coeff in f.items():
        result = result + p_lambda(partition).scale(coeff)
    return result


def plethystic_exp(alphabet: TruncatedSeries) -> TruncatedSeries:
    """pExp[A] = exp(Σ p_n[A]/n); A sans terme constant"""
    if alphabet.constant_term():
        raise ConstantTermPresent(
            "L'exponentielle pléthystique exige un alphabet sans terme constant",
            {"constant": alphabet.constant_term()})
    ring = alphabet.ring
    valuation = alphabet.valuation()
    if valuation is None:
        return ring.one()
    top = sum(ring.orders) // valuation
    exponent = ring.zero()
    for n in range(1, top + 1):
        exponent = exponent + adams(alphabet, n).scale(inverse_integer(n, QT))
    return exponent.exp()


def plethystic_log_kernel(ring: SeriesRing, names: Iterable[str], sign: int = 1) -> TruncatedSeries:
    """±(x_1 + ... + x_j)/((1-q)(1-t)), alphabet des noyaux de Cauchy"""
    total = ring.zero()
    for name in names:
        total = total + ring.gen(name)
    return total.scale(QT.convert(sign) / ((QT.one - Q_GEN) * (QT.one - T_GEN)))


def variables_alphabet(ring: SeriesRing, names: Iterable[str]) -> TruncatedSeries:
    total = ring.zero()
    for name in names:
        total = total + ring.gen(name)
    return total


def scalar_alphabet(value) -> TruncatedSeries:
    return SCALAR_RING.scalar(value)


def d_alphabet(partition: Partition) -> TruncatedSeries:
    """D_μ = -1 + (1-q)(1-t)B_μ comme somme finie signée de monômes en q, t"""
    total = QT.zero
    for coeff, a, b in d_monomials(partition):
        total += qt_monomial(a, b) * coeff
    return scalar_alphabet(total)


def box_product(partition: Partition, ring: SeriesRing, name: str) -> TruncatedSeries:
    """Π_{□∈μ} (1 - x q^c t^r)"""
    x = ring.gen(name)
    result = ring.one()
    for column, row in partition.boxes():
        result = result * (ring.one() - x.scale(qt_monomial(column, row)))
    return result


def scalar_value(series: TruncatedSeries):
    """Valeur d'une série de l'anneau sans variable"""
    return series.constant_term()


def shifted_alphabet(ring: SeriesRing, name: str, partition: Partition) -> TruncatedSeries:
    """1 + x D_μ"""
    d_value = scalar_value(d_alphabet(partition))
    return ring.one() + ring.gen(name).scale(d_value)
