"""
Symmetric functions in the power-sum basis

Created: 2024-11-04
"""
# backend/macdonald/symfunc.py
import logging
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from backend.combinatorics.partitions import EMPTY, Partition, enumerate_partitions
from backend.core.coefficients import QT, lift

logger = logging.getLogger(__name__)


class SymFunc:
    """Fonction symétrique tronquée: coefficients sur les p_λ, degré <= max_degree"""

    __slots__ = ("terms", "max_degree", "domain")

    def __init__(self, terms: Optional[Mapping[Partition, object]] = None, max_degree: int = 0, domain=QT):
        self.max_degree = max_degree
        self.domain = domain
        self.terms: Dict[Partition, object] = {}
        for partition, coeff in (terms or {}).items():
            if partition.weight > max_degree:
                continue
            value = lift(coeff, domain)
            if value:
                self.terms[partition] = value

    @classmethod
    def power_sum(cls, partition: Partition, max_degree: Optional[int] = None, domain=QT) -> "SymFunc":
        return cls({partition: 1}, partition.weight if max_degree is None else max_degree, domain)

    @classmethod
    def one(cls, max_degree: int, domain=QT) -> "SymFunc":
        return cls({EMPTY: 1}, max_degree, domain)

    def items(self) -> List[Tuple[Partition, object]]:
        return sorted(self.terms.items(), key=lambda item: (item[0].weight, item[0].parts))

    def coefficient(self, partition: Partition):
        return self.terms.get(partition, self.domain.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous(self, degree: int) -> "SymFunc":
        return SymFunc({p: c for p, c in self.terms.items() if p.weight == degree}, self.max_degree, self.domain)

    def with_max_degree(self, max_degree: int) -> "SymFunc":
        return SymFunc(self.terms, max_degree, self.domain)

    def map_coefficients(self, fn: Callable) -> "SymFunc":
        return SymFunc({p: fn(p, c) for p, c in self.terms.items()}, self.max_degree, self.domain)

    def first_difference(self, other: "SymFunc"):
        for partition in sorted(set(self.terms) | set(other.terms), key=lambda p: (p.weight, p.parts)):
            a = self.coefficient(partition)
            b = other.coefficient(partition)
            if a != b:
                return partition, a, b
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*p{p}" for p, c in self.items())

    def __add__(self, other: "SymFunc") -> "SymFunc":
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, self.domain.zero) + c
        return SymFunc(terms, min(self.max_degree, other.max_degree), self.domain)

    def __neg__(self) -> "SymFunc":
        return SymFunc({p: -c for p, c in self.terms.items()}, self.max_degree, self.domain)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, value) -> "SymFunc":
        c = lift(value, self.domain)
        return SymFunc({p: c * v for p, v in self.terms.items()}, self.max_degree, self.domain)

    def __mul__(self, other) -> "SymFunc":
        if not isinstance(other, SymFunc):
            return self.scale(other)
        max_degree = min(self.max_degree, other.max_degree)
        terms: Dict[Partition, object] = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                if p1.weight + p2.weight > max_degree:
                    continue
                p = p1.union(p2)
                terms[p] = terms.get(p, self.domain.zero) + c1 * c2
        return SymFunc(terms, max_degree, self.domain)

    __rmul__ = __mul__


# Base monomiale

def _monomial_count(parts: Tuple[int, ...], target: Tuple[int, ...]) -> int:
    """Nombre de répartitions des parts de μ dans les lignes de λ: coefficient de x^λ dans p_μ"""
    remaining = list(target)

    def place(index: int) -> int:
        if index == len(parts):
            return 1 if not any(remaining) else 0
        total = 0
        for row in range(len(remaining)):
            if remaining[row] >= parts[index]:
                remaining[row] -= parts[index]
                total += place(index + 1)
                remaining[row] += parts[index]
        return total

    return place(0)


@lru_cache(maxsize=None)
def power_to_monomial_matrix(n: int) -> Tuple[Tuple[Partition, ...], DomainMatrix]:
    """Matrice M avec p_μ = Σ_λ M[μ, λ] m_λ, lignes et colonnes dans l'ordre des partitions de n"""
    partitions = tuple(enumerate_partitions(n))
    rows = [[QQ(_monomial_count(mu.parts, lam.parts)) for lam in partitions] for mu in partitions]
    return partitions, DomainMatrix(rows, (len(partitions), len(partitions)), QQ)


@lru_cache(maxsize=None)
def _monomial_in_power(n: int) -> Dict[Partition, Dict[Partition, object]]:
    partitions, matrix = power_to_monomial_matrix(n)
    inverse = matrix.inv().to_list()
    # m_λ = Σ_μ (M^{-1})[λ, μ] p_μ
    return {
        lam: {mu: inverse[i][j] for j, mu in enumerate(partitions) if inverse[i][j]}
        for i, lam in enumerate(partitions)
    }


def monomial(partition: Partition, max_degree: Optional[int] = None, domain=QT) -> SymFunc:
    """m_λ dans la base des sommes de puissances"""
    if partition.weight == 0:
        return SymFunc.one(max_degree or 0, domain)
    coeffs = _monomial_in_power(partition.weight)[partition]
    return SymFunc(coeffs, partition.weight if max_degree is None else max_degree, domain)


def to_monomial_basis(f: SymFunc) -> Dict[Partition, object]:
    """Coefficients de f dans la base monomiale"""
    result: Dict[Partition, object] = {}
    for mu, c in f.terms.items():
        if mu.weight == 0:
            result[mu] = result.get(mu, f.domain.zero) + c
            continue
        partitions, matrix = power_to_monomial_matrix(mu.weight)
        row = matrix.to_list()[partitions.index(mu)]
        for lam, entry in zip(partitions, row):
            if entry:
                result[lam] = result.get(lam, f.domain.zero) + c * lift(entry, f.domain)
    return {lam: c for lam, c in result.items() if c}


def elementary(n: int, max_degree: Optional[int] = None, domain=QT) -> SymFunc:
    """e_n = Σ_λ ε_λ p_λ / z_λ"""
    terms = {
        lam: QQ((-1) ** (n - len(lam)), lam.z_lambda()) for lam in enumerate_partitions(n)
    }
    return SymFunc(terms, n if max_degree is None else max_degree, domain)


def complete(n: int, max_degree: Optional[int] = None, domain=QT) -> SymFunc:
    """h_n = Σ_λ p_λ / z_λ"""
    terms = {lam: QQ(1, lam.z_lambda()) for lam in enumerate_partitions(n)}
    return SymFunc(terms, n if max_degree is None else max_degree, domain)


# Produits scalaires

def scalar_product(f: SymFunc, g: SymFunc, weight: Callable[[Partition], object]) -> object:
    """Σ_λ f_λ g_λ weight(λ)"""
    total = f.domain.zero
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d:
            total += c * d * weight(lam)
    return total


def tensor_coefficients(pairs) -> Dict[Tuple[Partition, Partition], object]:
    """Coefficients de Σ c f⊗g dans la base p_α ⊗ p_β"""
    result: Dict[Tuple[Partition, Partition], object] = {}
    for coeff, f, g in pairs:
        for (alpha, a), (beta, b) in product(f.terms.items(), g.terms.items()):
            key = (alpha, beta)
            value = result.get(key)
            result[key] = coeff * a * b if value is None else value + coeff * a * b
    return {key: value for key, value in result.items() if value}
