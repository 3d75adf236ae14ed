"""
The (u, v) chart of the (w, z) plane

Created: 2024-11-04
"""
# backend/universal/uvchart.py
import logging
from functools import cached_property
from typing import Optional

from sympy.polys.domains import QQ

from backend.core.series import SeriesRing, TruncatedSeries
from backend.utils.exceptions import NonConvergence, TruncationTooSmall

logger = logging.getLogger(__name__)


class UVChart:
    """w = u(1-u)^{k-1} / (v(1-v)^{k-1}), z = v / (1-u)^{k-1}, y = uv / ((1-u)(1-v)).

    u et v sont des séries en (w, z): u = wz + ..., v = z + ...
    """

    def __init__(self, k: int, w_order: int, z_order: int):
        self.k = k
        self.w_order = w_order
        self.z_order = z_order
        self.ring = SeriesRing(("w", "z"), (w_order, z_order), QQ)
        self.u, self.v = self._solve()

    def _solve(self):
        ring = self.ring
        one = ring.one()
        w, z = ring.gen("w"), ring.gen("z")
        u, v = w * z, z
        for iteration in range(self.w_order + self.z_order + 2):
            new_u = w * z * (one - v) ** (self.k - 1)
            new_v = z * (one - u) ** (self.k - 1)
            if new_u == u and new_v == v:
                logger.debug(f"Carte (u, v) stabilisée après {iteration} itérations (k={self.k})")
                return u, v
            u, v = new_u, new_v
        raise NonConvergence(
            "L'itération de point fixe pour (u, v) ne s'est pas stabilisée",
            {"k": self.k, "w_order": self.w_order, "z_order": self.z_order})

    @property
    def one(self) -> TruncatedSeries:
        return self.ring.one()

    @cached_property
    def rho(self) -> TruncatedSeries:
        """u/v = w (1-v)^{k-1} / (1-u)^{k-1}, série entière"""
        one = self.one
        return self.ring.gen("w") * (one - self.v) ** (self.k - 1) * (one - self.u) ** (1 - self.k)

    @cached_property
    def y(self) -> TruncatedSeries:
        one = self.one
        return self.u * self.v * ((one - self.u) * (one - self.v)).invert()

    @cached_property
    def delta(self) -> TruncatedSeries:
        """1 - u - v - (k^2 - 2k) uv"""
        return self.one - self.u - self.v - (self.u * self.v).scale(self.k * self.k - 2 * self.k)

    def uv_ring(self) -> SeriesRing:
        """Anneau en (u, v) suffisant: u^a v^b a une valuation w^a z^{a+b}"""
        return SeriesRing(("u", "v"), (min(self.w_order, self.z_order), self.z_order), QQ)

    def pull(self, expr: TruncatedSeries) -> TruncatedSeries:
        """expr(u, v) comme série en (w, z)"""
        return expr.substitute({"u": self.u, "v": self.v}, self.ring)

    def pull_y(self, h: TruncatedSeries) -> TruncatedSeries:
        """h(y) comme série en (w, z), h une série en une variable; y^a commence en w^a z^{2a}"""
        needed = min(self.w_order, self.z_order // 2)
        if h.ring.orders[0] < needed:
            raise TruncationTooSmall(
                f"h est tronquée à l'ordre {h.ring.orders[0]}, il en faut {needed}",
                {"needed": needed, "available": h.ring.orders[0]})
        return h.compose(self.y)


def uv_substitute(expr: TruncatedSeries, k: int, w_order: int, z_order: int,
                  chart: Optional[UVChart] = None) -> TruncatedSeries:
    chart = chart or UVChart(k, w_order, z_order)
    return chart.pull(expr)


def uv_dw(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """D_w en coordonnées (u, v): [(1-u)(1-v) E_u - (k-1) u (1-v) E_v] / Δ"""
    ring = f.ring
    one, u, v = ring.one(), ring.gen("u"), ring.gen("v")
    numerator = (one - u) * (one - v) * f.euler("u") - (u * (one - v) * f.euler("v")).scale(k - 1)
    return numerator * _uv_delta(ring, k).invert()


def uv_dz(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """D_z en coordonnées (u, v): [(1-u)(1-kv) E_u + (1-v)(1-ku) E_v] / Δ"""
    ring = f.ring
    one, u, v = ring.one(), ring.gen("u"), ring.gen("v")
    numerator = (one - u) * (one - v.scale(k)) * f.euler("u") + (one - v) * (one - u.scale(k)) * f.euler("v")
    return numerator * _uv_delta(ring, k).invert()


def _uv_delta(ring: SeriesRing, k: int) -> TruncatedSeries:
    u, v = ring.gen("u"), ring.gen("v")
    return ring.one() - u - v - (u * v).scale(k * k - 2 * k)
