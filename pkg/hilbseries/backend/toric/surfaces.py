"""
Smooth projective toric surfaces and their fixed points

Created: 2024-11-04
"""
# backend/toric/surfaces.py
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from backend.partfun.slope import SlopeLine
from backend.utils.exceptions import BadDivisorData, UnknownSurface

logger = logging.getLogger(__name__)

Ray = Tuple[int, int]


@dataclass(frozen=True)
class LinearForm:
    """Forme linéaire entière a1*x + a2*y en les paramètres du tore"""
    a1: int = 0
    a2: int = 0

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a1 + other.a1, self.a2 + other.a2)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.a1, -self.a2)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, n: int) -> "LinearForm":
        return LinearForm(n * self.a1, n * self.a2)

    def is_zero(self) -> bool:
        return self.a1 == 0 and self.a2 == 0

    def on_line(self, line: SlopeLine):
        return line.weight(self.a1, self.a2)

    def __str__(self) -> str:
        return f"{self.a1}*a1{self.a2:+d}*a2"


ZERO_FORM = LinearForm(0, 0)


@dataclass(frozen=True)
class FixedPoint:
    index: int
    cone: Tuple[int, int]
    t1: LinearForm
    t2: LinearForm


@dataclass(frozen=True)
class ToricSurfaceModel:
    """Éventail lisse (rayons dans l'ordre trigonométrique), points fixes et base de diviseurs.

    basis associe à chaque classe nommée ses coefficients sur les diviseurs toriques D_ρ.
    """
    name: str
    rays: Tuple[Ray, ...]
    fixed_points: Tuple[FixedPoint, ...]
    basis: Tuple[Tuple[str, Tuple[int, ...]], ...]

    @property
    def euler_characteristic(self) -> int:
        return len(self.fixed_points)

    @property
    def basis_names(self) -> List[str]:
        return [label for label, _ in self.basis]

    def divisor(self, coordinates: Sequence[int]) -> Tuple[int, ...]:
        """Coefficients sur les D_ρ de Σ coordinates[i] * basis[i]"""
        if len(coordinates) > len(self.basis):
            raise BadDivisorData(
                f"{len(coordinates)} coordonnées pour une base de taille {len(self.basis)} sur {self.name}",
                {"surface": self.name, "coordinates": list(coordinates)})
        result = [0] * len(self.rays)
        for n, (_, vector) in zip(coordinates, self.basis):
            for j, coeff in enumerate(vector):
                result[j] += n * coeff
        return tuple(result)

    def canonical_divisor(self) -> Tuple[int, ...]:
        return tuple(-1 for _ in self.rays)


def _as_int(value) -> int:
    if value.denominator != 1:
        raise BadDivisorData("Cône non régulier (inverse non entier)", {"value": str(value)})
    return int(value.numerator)


def tangent_weights(u: Ray, v: Ray) -> Tuple[LinearForm, LinearForm]:
    """Base duale (m1, m2) du cône (u, v): m_j·u_k = δ_jk, le cône doit être régulier"""
    matrix = DomainMatrix([[QQ(u[0]), QQ(u[1])], [QQ(v[0]), QQ(v[1])]], (2, 2), QQ)
    det = matrix.det()
    if det not in (QQ(1), QQ(-1)):
        raise BadDivisorData(f"Cône ({u}, {v}) non lisse (déterminant {det})", {"cone": (u, v)})
    inverse = matrix.inv().to_list()
    m1 = LinearForm(_as_int(inverse[0][0]), _as_int(inverse[1][0]))
    m2 = LinearForm(_as_int(inverse[0][1]), _as_int(inverse[1][1]))
    return m1, m2


def toric_surface(name: str, rays: Sequence[Ray],
                  basis: Sequence[Tuple[str, Sequence[int]]]) -> ToricSurfaceModel:
    rays = tuple(tuple(r) for r in rays)
    count = len(rays)
    if count < 3:
        raise BadDivisorData(f"Éventail à {count} rayons pour {name}", {"surface": name})
    points = []
    for i in range(count):
        j = (i + 1) % count
        t1, t2 = tangent_weights(rays[i], rays[j])
        points.append(FixedPoint(i, (i, j), t1, t2))
    for label, vector in basis:
        if len(vector) != count:
            raise BadDivisorData(f"Classe {label} mal dimensionnée sur {name}", {"class": label})
    logger.debug(f"Surface {name}: {count} points fixes")
    return ToricSurfaceModel(
        name, rays, tuple(points), tuple((label, tuple(vector)) for label, vector in basis))


def projective_plane() -> ToricSurfaceModel:
    return toric_surface("P2", [(1, 0), (0, 1), (-1, -1)], [("H", (1, 0, 0))])


def hirzebruch(a: int) -> ToricSurfaceModel:
    """F_a: F la fibre, S la section D_(0,1); F_0 = P1xP1"""
    name = "P1xP1" if a == 0 else f"F{a}"
    return toric_surface(name, [(1, 0), (0, 1), (-1, a), (0, -1)],
                         [("F", (1, 0, 0, 0)), ("S", (0, 1, 0, 0))])


_BLOWUP_RAYS: Tuple[Ray, ...] = ((1, 1), (-1, 0), (0, -1))


def blown_up_plane(n: int) -> ToricSurfaceModel:
    """Éclatement de P2 en n ∈ {1,2,3} points fixes: base H, E1, ..., En"""
    if not 1 <= n <= 3:
        raise UnknownSurface(f"Bl{n}P2 n'est pas torique dans ce modèle", {"n": n})
    order = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    present = {(1, 0), (0, 1), (-1, -1)} | set(_BLOWUP_RAYS[:n])
    rays = [r for r in order if r in present]
    hyperplane = tuple(1 if r in ((1, 0), (1, 1), (0, -1)) else 0 for r in rays)
    basis = [("H", hyperplane)]
    for i, exceptional in enumerate(_BLOWUP_RAYS[:n], start=1):
        basis.append((f"E{i}", tuple(1 if r == exceptional else 0 for r in rays)))
    return toric_surface(f"Bl{n}P2", rays, basis)


def _builders() -> Dict[str, object]:
    builders = {"p2": projective_plane, "p1xp1": lambda: hirzebruch(0)}
    for a in range(4):
        builders[f"f{a}"] = lambda a=a: hirzebruch(a)
    for n in range(1, 4):
        builders[f"bl{n}p2"] = lambda n=n: blown_up_plane(n)
    return builders


BUILTIN_SURFACES = ("P2", "P1xP1", "F0", "F1", "F2", "F3", "Bl1P2", "Bl2P2", "Bl3P2")


def builtin_surface(name: str) -> ToricSurfaceModel:
    key = re.sub(r"[\s_]", "", name).lower()
    builders = _builders()
    if key not in builders:
        raise UnknownSurface(
            f"Surface inconnue: {name!r} (disponibles: {', '.join(BUILTIN_SURFACES)})",
            {"name": name})
    return builders[key]()
