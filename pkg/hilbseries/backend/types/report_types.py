from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class Discrepancy:
    location: str
    expected: str
    actual: str

    def to_dict(self) -> Dict[str, str]:
        return {"location": self.location, "expected": self.expected, "actual": self.actual}


@dataclass
class CheckReport:
    identity: str
    parameters: Dict[str, Any]
    status: CheckStatus
    first_discrepancy: Optional[Discrepancy] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @classmethod
    def success(cls, identity: str, parameters: Dict[str, Any], **details) -> "CheckReport":
        return cls(identity, parameters, CheckStatus.PASS, None, details)

    @classmethod
    def failure(
        cls,
        identity: str,
        parameters: Dict[str, Any],
        location: str,
        expected: Any,
        actual: Any,
        **details,
    ) -> "CheckReport":
        return cls(identity, parameters, CheckStatus.FAIL, Discrepancy(location, str(expected), str(actual)), details)

    @classmethod
    def skipped(cls, identity: str, parameters: Dict[str, Any], reason: str) -> "CheckReport":
        return cls(identity, parameters, CheckStatus.SKIPPED, None, {"reason": reason})

    @classmethod
    def from_error(cls, identity: str, parameters: Dict[str, Any], error) -> "CheckReport":
        """Rapport d'échec construit à partir d'une HilbSeriesError"""
        payload = error.to_dict()
        return cls(
            identity,
            parameters,
            CheckStatus.FAIL,
            Discrepancy(payload["error"], "", payload["message"]),
            payload["details"],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "parameters": self.parameters,
            "pass": self.passed,
            "status": self.status.value,
            "firstDiscrepancy": self.first_discrepancy.to_dict() if self.first_discrepancy else None,
            "details": self.details,
        }


def format_exponent(names: Sequence[str], exponent: Sequence[int]) -> str:
    """w^1*z^2, ou 1 pour l'exposant nul"""
    parts = [f"{name}^{power}" for name, power in zip(names, exponent) if power]
    return "*".join(parts) if parts else "1"


def compare_series(identity: str, parameters: Dict[str, Any], expected, actual, **details) -> CheckReport:
    """Compare deux séries tronquées du même anneau coefficient par coefficient"""
    difference = expected.first_difference(actual)
    if difference is None:
        return CheckReport.success(identity, parameters, **details)
    exponent, a, b = difference
    return CheckReport.failure(
        identity, parameters, format_exponent(expected.ring.names, exponent), a, b, **details)


def all_passed(reports: List[CheckReport]) -> bool:
    return all(report.status is not CheckStatus.FAIL for report in reports)


@dataclass
class RunManifest:
    command: str
    parameters: Dict[str, Any]
    engine_version: str
    orders: Dict[str, Any] = field(default_factory=dict)
    elapsed: Optional[float] = None
    reports: List[CheckReport] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all_passed(self.reports)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for report in self.reports:
            counts[report.status.value] += 1
        return counts

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "engineVersion": self.engine_version,
            "orders": self.orders,
            "pass": self.passed,
            "summary": self.summary,
            "reports": [report.to_dict() for report in self.reports],
            "results": self.results,
        }
        if include_timing and self.elapsed is not None:
            payload["elapsed"] = round(self.elapsed, 3)
        return payload
