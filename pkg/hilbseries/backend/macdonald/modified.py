"""
Macdonald polynomials: P, integral form J and modified H~

Created: 2024-11-04
"""
# backend/macdonald/modified.py
import logging
from functools import lru_cache
from typing import Dict, Optional

from backend.combinatorics.partitions import Partition, box_stats, enumerate_partitions
from backend.core.coefficients import QT, Q_GEN, T_GEN
from backend.macdonald.symfunc import SymFunc, monomial, scalar_product
from backend.utils.config import ConfigManager
from backend.utils.exceptions import WeightTooLarge

logger = logging.getLogger(__name__)

# t' = 1/t : P et J sont construits en (q, t') puis modifiés
T_INV = QT.one / T_GEN


def _qt_weight(partition: Partition, t_param):
    """z_λ Π (1 - q^{λ_i}) / (1 - t^{λ_i})"""
    value = QT.convert(partition.z_lambda())
    for part in partition.parts:
        value = value * (QT.one - Q_GEN ** part) / (QT.one - t_param ** part)
    return value


def qt_product(f: SymFunc, g: SymFunc, t_param=T_GEN):
    """Produit scalaire de Macdonald <p_λ, p_μ>_{q,t}"""
    return scalar_product(f, g, lambda lam: _qt_weight(lam, t_param))


@lru_cache(maxsize=None)
def _macdonald_p_degree(n: int) -> Dict[Partition, SymFunc]:
    """Gram-Schmidt sur la base monomiale, ordre lexicographique croissant depuis (1^n)"""
    logger.debug(f"Construction des polynômes P de Macdonald de degré {n}")
    ordered = list(reversed(enumerate_partitions(n)))
    basis: Dict[Partition, SymFunc] = {}
    norms = {}
    for mu in ordered:
        vector = monomial(mu)
        m_mu = vector
        for nu, p_nu in basis.items():
            coeff = qt_product(m_mu, p_nu, T_INV) / norms[nu]
            if coeff:
                vector = vector - p_nu.scale(coeff)
        basis[mu] = vector
        norms[mu] = qt_product(vector, vector, T_INV)
    return basis


def _check_weight(partition: Partition, max_weight: Optional[int]) -> None:
    if max_weight is None:
        max_weight = ConfigManager.settings().macdonald_max_weight
    if partition.weight > max_weight:
        raise WeightTooLarge(
            f"Poids {partition.weight} supérieur au maximum autorisé {max_weight}",
            {"partition": partition, "max_weight": max_weight})


def macdonald_p(partition: Partition, max_weight: Optional[int] = None) -> SymFunc:
    """P_μ(q, t') avec t' = 1/t"""
    _check_weight(partition, max_weight)
    if partition.weight == 0:
        return SymFunc.one(0)
    return _macdonald_p_degree(partition.weight)[partition]


def integral_form_j(partition: Partition, max_weight: Optional[int] = None) -> SymFunc:
    """J_μ = Π (1 - q^a t'^{l+1}) P_μ"""
    c = QT.one
    for s in box_stats(partition):
        c = c * (QT.one - Q_GEN ** s.arm * T_INV ** (s.leg + 1))
    return macdonald_p(partition, max_weight).scale(c)


@lru_cache(maxsize=None)
def _modified(partition: Partition) -> SymFunc:
    j = integral_form_j(partition, max_weight=partition.weight)
    prefactor = T_GEN ** partition.n_stat()

    def modify(lam: Partition, coeff):
        value = coeff * prefactor
        for part in lam.parts:
            value = value / (QT.one - T_INV ** part)
        return value

    return j.map_coefficients(modify)


def modified_macdonald(partition: Partition, max_weight: Optional[int] = None) -> SymFunc:
    """H~_μ[X; q, t] = t^{n(μ)} J_μ[X/(1 - 1/t); q, 1/t]"""
    _check_weight(partition, max_weight)
    return _modified(partition)
