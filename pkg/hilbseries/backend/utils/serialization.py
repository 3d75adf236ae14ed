"""
Canonical JSON encoding

Created: 2024-11-04
"""
# backend/utils/serialization.py
import json
from typing import Any, Dict, List

from sympy.polys.domains import QQ

from backend.core.coefficients import coefficient_strings, lift
from backend.core.series import SeriesRing, TruncatedSeries


def scalar_to_json(value, domain=QQ) -> Dict[str, str]:
    num, den = coefficient_strings(lift(value, domain), domain)
    return {"num": num, "den": den}


def scalar_from_json(data: Dict[str, str]):
    return QQ(int(data["num"]), int(data["den"]))


def series_to_json(series: TruncatedSeries) -> Dict[str, Any]:
    """{"vars", "orders", "terms"} avec les termes triés par exposant"""
    ring = series.ring
    terms = []
    for exp, coeff in series.items():
        num, den = coefficient_strings(coeff, ring.domain)
        terms.append({"exp": list(exp), "num": num, "den": den})
    return {"vars": list(ring.names), "orders": list(ring.orders), "terms": terms}


def series_from_json(data: Dict[str, Any]) -> TruncatedSeries:
    """Relecture d'une série à coefficients rationnels"""
    ring = SeriesRing(data["vars"], data["orders"], QQ)
    return ring.from_dict({tuple(term["exp"]): QQ(int(term["num"]), int(term["den"])) for term in data["terms"]})


def univariate_coefficients(series: TruncatedSeries) -> List[Dict[str, str]]:
    """Liste dense des coefficients d'une série en une variable"""
    if series.ring.nvars != 1:
        raise ValueError("Liste de coefficients réservée aux séries en une variable")
    return [scalar_to_json(series.coefficient((j,)), series.domain) for j in range(series.ring.orders[0] + 1)]


def to_canonical_json(payload: Any) -> str:
    """Sortie stable octet par octet"""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
