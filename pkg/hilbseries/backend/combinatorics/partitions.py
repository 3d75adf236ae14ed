"""
Integer partitions and box statistics

Created: 2024-11-04
"""
# backend/combinatorics/partitions.py
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, List, Sequence, Tuple

from backend.core.coefficients import QT, Q_GEN, T_GEN, qt_monomial


@dataclass(frozen=True)
class BoxStats:
    """Statistiques d'une case (indices à partir de 0)"""
    column: int
    row: int
    arm: int
    leg: int


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"Les parts doivent être strictement positives: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"Les parts doivent être décroissantes: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[int]) -> "Partition":
        """Construit une partition en triant les parts et en retirant les zéros"""
        return cls(tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")" if self.parts else "()"

    def conjugate(self) -> "Partition":
        return _conjugate(self.parts)

    def boxes(self) -> Iterator[Tuple[int, int]]:
        """Cases (colonne, ligne)"""
        for row, part in enumerate(self.parts):
            for column in range(part):
                yield column, row

    def n_stat(self) -> int:
        """n(λ) = Σ i λ_i"""
        return sum(i * p for i, p in enumerate(self.parts))

    def z_lambda(self) -> int:
        """z_λ = Π i^{m_i} m_i!"""
        result = 1
        for part, mult in Counter(self.parts).items():
            result *= part ** mult * factorial(mult)
        return result

    def hook_lengths(self) -> List[int]:
        return [s.arm + s.leg + 1 for s in box_stats(self)]

    def dominates(self, other: "Partition") -> bool:
        if self.weight != other.weight:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.parts[i] if i < len(self) else 0
            b += other.parts[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def union(self, other: "Partition") -> "Partition":
        return Partition.of(self.parts + other.parts)

    def to_json(self) -> List[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Partition":
        return cls(tuple(data))


EMPTY = Partition(())


@lru_cache(maxsize=None)
def _conjugate(parts: Tuple[int, ...]) -> Partition:
    if not parts:
        return EMPTY
    return Partition(tuple(sum(1 for p in parts if p > j) for j in range(parts[0])))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def enumerate_partitions(n: int) -> List[Partition]:
    """Partitions de n dans l'ordre lexicographique inverse: (n), (n-1,1), ..., (1^n)"""
    if n < 0:
        return []
    return [Partition(p) for p in _partitions(n, n)]


def partitions_up_to(n: int) -> List[Partition]:
    """Toutes les partitions de poids <= n, par poids croissant"""
    return [p for weight in range(n + 1) for p in enumerate_partitions(weight)]


@lru_cache(maxsize=None)
def count_partitions(n: int) -> int:
    """p(n) par la récurrence pentagonale d'Euler"""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * count_partitions(n - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            total += sign * count_partitions(n - g2)
        j += 1
    return total


@lru_cache(maxsize=None)
def box_stats(partition: Partition) -> Tuple[BoxStats, ...]:
    conj = partition.conjugate().parts
    return tuple(
        BoxStats(column, row, partition.parts[row] - column - 1, conj[column] - row - 1)
        for column, row in partition.boxes()
    )


# Statistiques en (q, t)

@lru_cache(maxsize=None)
def stat_n(partition: Partition):
    """N_λ = Π (q^{a+1} - t^l)(q^a - t^{l+1})"""
    result = QT.one
    for s in box_stats(partition):
        result *= (Q_GEN ** (s.arm + 1) - T_GEN ** s.leg) * (Q_GEN ** s.arm - T_GEN ** (s.leg + 1))
    return result


@lru_cache(maxsize=None)
def stat_b(partition: Partition):
    """B_λ = Σ q^c t^r"""
    result = QT.zero
    for column, row in partition.boxes():
        result += qt_monomial(column, row)
    return result


def stat_t(partition: Partition):
    """T_λ = q^{n(λ')} t^{n(λ)}"""
    return qt_monomial(partition.conjugate().n_stat(), partition.n_stat())


def stat_d(partition: Partition):
    """D_λ = -1 + (1-q)(1-t) B_λ"""
    return -QT.one + (QT.one - Q_GEN) * (QT.one - T_GEN) * stat_b(partition)


def d_monomials(partition: Partition) -> List[Tuple[int, int, int]]:
    """Développement de D_λ en somme signée de monômes (coefficient, exposant de q, exposant de t)"""
    terms: Counter = Counter()
    terms[(0, 0)] -= 1
    for column, row in partition.boxes():
        terms[(column, row)] += 1
        terms[(column + 1, row)] -= 1
        terms[(column, row + 1)] -= 1
        terms[(column + 1, row + 1)] += 1
    return [(coeff, a, b) for (a, b), coeff in sorted(terms.items()) if coeff]
