"""
The series C, C', D, E, F built from the H family

Created: 2024-11-04
"""
# backend/universal/cdef.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from sympy.polys.domains import QQ

from backend.core.series import TruncatedSeries
from backend.partfun.extraction import HSeriesFamily
from backend.types.report_types import CheckReport, compare_series
from backend.universal.closed_forms import c_h_series, c_prime_h_series, d_h_series
from backend.universal.symreg import SymRegSeries, h_order, h_to_f
from backend.universal.uvchart import UVChart
from backend.utils.exceptions import HilbSeriesError

logger = logging.getLogger(__name__)


def dw(f: TruncatedSeries) -> TruncatedSeries:
    return f.euler("w")


def dz(f: TruncatedSeries) -> TruncatedSeries:
    return f.euler("z")


def k_operator(h_mm: TruncatedSeries) -> TruncatedSeries:
    """K_k = (D_w (D_z - D_w) - D_z²) H_{-1,-1}"""
    return dw(dz(h_mm) - dw(h_mm)) - dz(dz(h_mm))


@dataclass
class CDEFSeries:
    k: int
    c: TruncatedSeries
    c_prime: TruncatedSeries
    d: TruncatedSeries
    e: TruncatedSeries
    f: TruncatedSeries
    family: HSeriesFamily

    def as_dict(self) -> Dict[str, TruncatedSeries]:
        return {"C": self.c, "C'": self.c_prime, "D": self.d, "E": self.e, "F": self.f}

    def log_g0g1(self) -> TruncatedSeries:
        return self.c_prime

    def log_g3(self) -> TruncatedSeries:
        """D/k - (k-1)/2 C'"""
        return self.d.scale(QQ(1, self.k)) - self.c_prime.scale(QQ(self.k - 1, 2))

    def log_g4(self) -> TruncatedSeries:
        """3E - F + (C11 - D1)/2"""
        family = self.family
        return self.e.scale(3) - self.f + (family.c11 - family.d1).scale(QQ(1, 2))

    def d_from_taylor(self) -> TruncatedSeries:
        """-k D1 + k² C11 + binom(k, 2) C2"""
        k, family = self.k, self.family
        return family.d1.scale(-k) + family.c11.scale(k * k) + family.c2.scale(QQ(k * (k - 1), 2))


def build_cdef(k: int, w_order: int, z_order: int, family: Optional[HSeriesFamily] = None,
               max_weight: Optional[int] = None) -> CDEFSeries:
    family = family or HSeriesFamily.build(k, w_order, z_order, max_weight=max_weight)
    h_mm = family.h_mm
    correction = k_operator(h_mm)
    series = CDEFSeries(
        k=k,
        c=dz(dw(dz(h_mm) - dw(h_mm))),
        c_prime=family.c_prime,
        d=dz(family.h_m0 + dz(h_mm).scale(QQ(1, 2))),
        e=family.h_m1 + correction.scale(QQ(1, 12)),
        f=family.h_00 + correction.scale(QQ(1, 4)),
        family=family,
    )
    logger.info(f"Séries C, C', D, E, F construites pour k={k} à l'ordre ({w_order}, {z_order})")
    return series


def known_h(name: str, k: int, order: int) -> TruncatedSeries:
    if name == "C":
        return c_h_series(k, order)
    if name == "C'":
        return c_prime_h_series(order)
    if name == "D":
        return d_h_series(k, order)
    raise ValueError(f"Pas de série h connue pour {name}")


def verify_cdef(k: int, w_order: int, z_order: int, series: Optional[CDEFSeries] = None) -> List[CheckReport]:
    """Symétrie et régularité des cinq séries, séries h connues de C, C', D et la relation de D"""
    series = series or build_cdef(k, w_order, z_order)
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    reports = []
    for name, f in series.as_dict().items():
        params = dict(parameters, series=name)
        try:
            SymRegSeries(k, f).certify(0)
            reports.append(CheckReport.success("symmetric-regular", params))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("symmetric-regular", params, error))
    chart = UVChart(k, w_order, z_order)
    order = h_order(w_order, z_order)
    for name in ("C", "C'", "D"):
        params = dict(parameters, series=name)
        try:
            expected = h_to_f(known_h(name, k, order), k, w_order, z_order, chart=chart)
            reports.append(compare_series("cdef-h-series", params, expected, series.as_dict()[name]))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("cdef-h-series", params, error))
    reports.append(compare_series("d-taylor-relation", parameters, series.d_from_taylor(), series.d))
    return reports
