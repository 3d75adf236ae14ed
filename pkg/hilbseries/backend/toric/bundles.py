"""
Split equivariant bundles and K-theory classes on toric surfaces

Created: 2024-11-04
"""
# backend/toric/bundles.py
import logging
import re
from collections import Counter
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from backend.toric.surfaces import LinearForm, ToricSurfaceModel, ZERO_FORM
from backend.utils.exceptions import BadDivisorData

logger = logging.getLogger(__name__)

WeightTable = Tuple[Tuple[LinearForm, ...], ...]


@dataclass(frozen=True)
class EquivariantBundle:
    """Classe α = V - W donnée par les poids de V (positive) et de W (negative) en chaque point fixe"""
    surface: ToricSurfaceModel
    positive: WeightTable
    negative: WeightTable = ()
    label: str = ""

    def __post_init__(self):
        count = self.surface.euler_characteristic
        negative = self.negative or tuple(() for _ in range(count))
        object.__setattr__(self, "negative", negative)
        for table in (self.positive, negative):
            if len(table) != count:
                raise BadDivisorData(
                    f"Table de poids à {len(table)} entrées pour {count} points fixes",
                    {"surface": self.surface.name})
        ranks = {len(p) - len(n) for p, n in zip(self.positive, negative)}
        if len(ranks) > 1:
            raise BadDivisorData("Rang non constant selon les points fixes", {"ranks": sorted(ranks)})

    @property
    def rank(self) -> int:
        return len(self.positive[0]) - len(self.negative[0])

    def weights_at(self, index: int) -> Counter:
        """Multiplicités signées des poids au point fixe index, termes opposés simplifiés"""
        counter: Counter = Counter()
        for v in self.positive[index]:
            counter[v] += 1
        for v in self.negative[index]:
            counter[v] -= 1
        return Counter({v: mult for v, mult in counter.items() if mult})

    def __add__(self, other: "EquivariantBundle") -> "EquivariantBundle":
        self._check_surface(other)
        return EquivariantBundle(
            self.surface,
            tuple(a + b for a, b in zip(self.positive, other.positive)),
            tuple(a + b for a, b in zip(self.negative, other.negative)),
            _join(self.label, other.label, "+"))

    def __neg__(self) -> "EquivariantBundle":
        return EquivariantBundle(self.surface, self.negative, self.positive, f"-({self.label})")

    def __sub__(self, other: "EquivariantBundle") -> "EquivariantBundle":
        return k_theory_class(self, other)

    def _check_surface(self, other: "EquivariantBundle") -> None:
        if other.surface.name != self.surface.name:
            raise BadDivisorData(
                f"Fibrés sur des surfaces différentes ({self.surface.name}, {other.surface.name})",
                {"left": self.surface.name, "right": other.surface.name})


def _join(left: str, right: str, sign: str) -> str:
    if not left:
        return right if sign == "+" else f"-{right}"
    return f"{left}{sign}{right}" if right else left


def equivariant_line_bundle(surface: ToricSurfaceModel, divisor: Sequence[int],
                            label: str = "") -> EquivariantBundle:
    """O(Σ d_ρ D_ρ): au cône (ρ_i, ρ_{i+1}) le poids est d_i t1 + d_{i+1} t2"""
    divisor = tuple(divisor)
    if len(divisor) != len(surface.rays) or not all(isinstance(d, int) for d in divisor):
        raise BadDivisorData(
            f"Donnée de diviseur invalide pour {surface.name}: {divisor}",
            {"surface": surface.name, "divisor": list(divisor)})
    weights = []
    for point in surface.fixed_points:
        i, j = point.cone
        weights.append((point.t1.scale(divisor[i]) + point.t2.scale(divisor[j]),))
    return EquivariantBundle(surface, tuple(weights), label=label or f"O{divisor}")


def trivial_bundle(surface: ToricSurfaceModel, rank: int = 1) -> EquivariantBundle:
    """rank copies de O; un rang négatif donne -|rank| O"""
    copies = tuple(ZERO_FORM for _ in range(abs(rank)))
    empty = tuple(() for _ in surface.fixed_points)
    table = tuple(copies for _ in surface.fixed_points)
    if rank >= 0:
        return EquivariantBundle(surface, table, empty, label=f"{rank}O")
    return EquivariantBundle(surface, empty, table, label=f"{rank}O")


def k_theory_class(v: EquivariantBundle, w: EquivariantBundle) -> EquivariantBundle:
    """α = V - W: les poids de W passent au dénominateur"""
    v._check_surface(w)
    return EquivariantBundle(
        v.surface,
        tuple(a + b for a, b in zip(v.positive, w.negative)),
        tuple(a + b for a, b in zip(v.negative, w.positive)),
        _join(v.label, w.label, "-"))


def canonical_bundle(surface: ToricSurfaceModel) -> EquivariantBundle:
    return equivariant_line_bundle(surface, surface.canonical_divisor(), label="K")


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*O(?:\(([^)]*)\))?\s*")


def _parse_arguments(raw: str, surface: ToricSurfaceModel, text: str) -> List[int]:
    chunks = [chunk.strip() for chunk in raw.split(",")] if raw.strip() else []
    try:
        values = [int(chunk) for chunk in chunks]
    except ValueError:
        raise BadDivisorData(f"Arguments non entiers dans {text!r}", {"bundle": text})
    if len(values) > len(surface.basis):
        raise BadDivisorData(
            f"O({raw}) attend au plus {len(surface.basis)} entiers sur {surface.name} "
            f"(base {', '.join(surface.basis_names)})",
            {"bundle": text, "surface": surface.name})
    return values + [0] * (len(surface.basis) - len(values))


def parse_bundle(surface: ToricSurfaceModel, text: str) -> EquivariantBundle:
    """Lit une somme du type "O(2)+O(1)", "O(1,0)+O(0,1)+O" ou "2O(1)-O" """
    position = 0
    result = None
    text = text.strip()
    if not text:
        raise BadDivisorData("Fibré vide", {"bundle": text})
    while position < len(text):
        match = _TERM.match(text, position)
        if not match or match.end() == position:
            raise BadDivisorData(f"Syntaxe de fibré invalide près de {text[position:]!r}", {"bundle": text})
        if result is not None and not match.group(1):
            raise BadDivisorData(f"Signe manquant près de {text[position:]!r}", {"bundle": text})
        sign, count, raw = match.group(1) or "+", int(match.group(2) or 1), match.group(3) or ""
        coordinates = _parse_arguments(raw, surface, text)
        label = f"O({','.join(str(c) for c in coordinates)})"
        line = equivariant_line_bundle(surface, surface.divisor(coordinates), label)
        for _ in range(count):
            if result is None:
                result = line if sign == "+" else -line
            elif sign == "+":
                result = result + line
            else:
                result = result - line
        position = match.end()
    if result is None:
        result = trivial_bundle(surface, 0)
    logger.debug(f"Fibré {text!r} lu sur {surface.name}: rang {result.rank}")
    return result
