"""
Custom exceptions

Created: 2024-11-04
"""
# backend/utils/exceptions.py
from typing import Any, Dict, Optional


class HilbSeriesError(Exception):
    """Erreur de base du moteur de séries"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": {key: str(value) for key, value in sorted(self.details.items())},
        }


# Anneau de coefficients et séries tronquées

class NonUnitConstantTerm(HilbSeriesError):
    pass


class BadConstantTerm(HilbSeriesError):
    pass


class NonzeroConstantTerm(HilbSeriesError):
    pass


class NonUnitLinearTerm(HilbSeriesError):
    pass


class NonConvergence(HilbSeriesError):
    pass


# Macdonald et pléthysme

class WeightTooLarge(HilbSeriesError):
    pass


class ConstantTermPresent(HilbSeriesError):
    pass


# Fonctions de partition

class DegenerateSlope(HilbSeriesError):
    pass


class InsufficientCap(HilbSeriesError):
    pass


# Surfaces toriques

class UnknownSurface(HilbSeriesError):
    pass


class BadDivisorData(HilbSeriesError):
    pass


class NonConstantResult(HilbSeriesError):
    pass


class PoleSurvived(HilbSeriesError):
    pass


class SlopeDependence(HilbSeriesError):
    pass


class NonIntegerVerlinde(HilbSeriesError):
    pass


class TruncationTooSmall(HilbSeriesError):
    pass


# Séries universelles

class RankDeficientMatrix(HilbSeriesError):
    pass


class NonzeroResidual(HilbSeriesError):
    pass


class PipelineMismatch(HilbSeriesError):
    pass


class ValidationFailure(HilbSeriesError):
    """Échec de validation localisé sur un coefficient w^m z^n"""

    def __init__(self, message: str, m: int, n: int, details: Optional[Dict[str, Any]] = None):
        merged = {"m": m, "n": n}
        merged.update(details or {})
        super().__init__(message, merged)
        self.m = m
        self.n = n


# Formes closes

class SquareRootObstruction(HilbSeriesError):
    pass


class RootObstruction(HilbSeriesError):
    pass
