#frontend/components/compute_commands.py

import logging
from argparse import Namespace
from typing import Any, Dict, List, Optional

from backend.closedform.bseries import b4_binomial, b4_conjecture, b4_symbolic
from backend.core.series import TruncatedSeries
from backend.partfun.omega import OmegaSpec, omega_master
from backend.toric.bundles import parse_bundle, trivial_bundle
from backend.toric.hilbert import hilb_k, verlinde_series
from backend.toric.surfaces import builtin_surface
from backend.types.report_types import CheckReport, RunManifest
from backend.universal.closed_forms import closed_form_g, verlinde_t
from backend.universal.product_formula import extract_universal, gcef_from_family
from backend.universal.symreg import limit_pullback
from backend.utils.config import ENGINE_VERSION
from backend.utils.exceptions import BadDivisorData, HilbSeriesError, UnknownSurface
from backend.utils.serialization import scalar_to_json, series_to_json, univariate_coefficients

logger = logging.getLogger(__name__)

G_SOURCES = ("closed", "localization", "family")
B4_PIPELINES = ("binomial", "conjecture", "localization")
SERIES_LETTERS = {"full": "G", "chern": "A", "verlinde": "B"}


class ComputeCommand:
    """Commande de calcul: parameters() décrit l'appel, compute() produit les résultats"""
    name = "compute"

    def __init__(self, args: Namespace):
        self.args = args

    def parameters(self) -> Dict[str, Any]:
        return {}

    def orders(self) -> Dict[str, Any]:
        return {}

    def validate(self) -> Optional[str]:
        """Message d'erreur d'usage, ou None"""
        return None

    def compute(self) -> Dict[str, Any]:
        raise NotImplementedError

    def render(self) -> RunManifest:
        parameters = self.parameters()
        manifest = RunManifest(self.name, parameters, ENGINE_VERSION, self.orders())
        try:
            manifest.results = self.compute()
        except HilbSeriesError as error:
            logger.error(f"Échec de {self.name}: {error}")
            manifest.reports.append(CheckReport.from_error(self.name, parameters, error))
        return manifest


class OmegaCommand(ComputeCommand):
    name = "compute omega"

    def parameters(self) -> Dict[str, Any]:
        return {"k": self.args.k, "m": self.args.m}

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder, "z": self.args.zorder}

    def compute(self) -> Dict[str, Any]:
        spec = OmegaSpec(self.args.k, self.args.worder, self.args.zorder, self.args.m)
        return {"omega": series_to_json(omega_master(spec))}


class SurfaceCommand(ComputeCommand):
    """Commandes portant sur une surface torique et une classe α"""

    def parameters(self) -> Dict[str, Any]:
        return {"surface": self.args.surface, "bundle": self.args.bundle}

    def validate(self) -> Optional[str]:
        try:
            self.surface_and_bundle()
        except (UnknownSurface, BadDivisorData) as error:
            return str(error)
        return None

    def surface_and_bundle(self):
        surface = builtin_surface(self.args.surface)
        return surface, parse_bundle(surface, self.args.bundle)


class VerlindeCommand(SurfaceCommand):
    """I^V de α - O: --bundle O donne la série (1 - w)^{-1}"""
    name = "compute verlinde"

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder}

    def compute(self) -> Dict[str, Any]:
        surface, bundle = self.surface_and_bundle()
        shifted = bundle - trivial_bundle(surface, 1)
        series = verlinde_series(surface, shifted, self.args.worder)
        return {"rank": bundle.rank, "verlinde": univariate_coefficients(series)}


class HilbKCommand(SurfaceCommand):
    name = "compute hilbk"

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder, "z": self.args.zorder}

    def compute(self) -> Dict[str, Any]:
        surface, bundle = self.surface_and_bundle()
        series = hilb_k(surface, bundle, self.args.worder, self.args.zorder)
        return {"rank": bundle.rank, "hilbk": series_to_json(series)}


class GSeriesCommand(ComputeCommand):
    """G_i (forme close, localisation ou famille H), A_i et B_i (localisation)"""
    name = "compute g-series"

    def parameters(self) -> Dict[str, Any]:
        return {"flavour": self.args.flavour, "k": self.args.k, "source": self.args.source,
                "which": self.indices(), "log": self.args.log}

    def orders(self) -> Dict[str, Any]:
        orders = {"w": self.args.worder}
        if self.args.flavour == "full":
            orders["z"] = self.z_order()
        return orders

    def z_order(self) -> int:
        return self.args.zorder if self.args.zorder is not None else 2 * self.args.worder

    def validate(self) -> Optional[str]:
        if self.args.source != "localization" and self.args.flavour != "full":
            return f"--source {self.args.source} n'existe que pour --flavour full"
        if self.args.source == "closed" and 4 in self.indices():
            return "G4 n'a pas de forme close"
        return None

    def indices(self) -> List[int]:
        if self.args.which:
            return sorted(set(self.args.which))
        return [0, 1, 2, 3] if self.args.source == "closed" else [0, 1, 2, 3, 4]

    def _log_series(self) -> Dict[int, TruncatedSeries]:
        args, indices = self.args, self.indices()
        if args.source == "closed":
            return {i: closed_form_g(i, args.k, args.worder, self.z_order()).log() for i in indices}
        if args.source == "family":
            bundle = gcef_from_family(args.k, args.worder, self.z_order())
        else:
            z_order = self.z_order() if args.flavour == "full" else None
            bundle = extract_universal(args.flavour, args.k, args.worder, z_order, quick=args.quick)
        return {i: bundle.log_g[i] for i in indices}

    def compute(self) -> Dict[str, Any]:
        letter = SERIES_LETTERS[self.args.flavour]
        results = {}
        for index, log_series in self._log_series().items():
            series = log_series if self.args.log else log_series.exp()
            key = f"log{letter}{index}" if self.args.log else f"{letter}{index}"
            results[key] = series_to_json(series)
        return results


class B4Command(ComputeCommand):
    """B4(-y(1-y)^{r²-1}) par les pipelines demandés, côte à côte"""
    name = "compute b4"

    def methods(self) -> List[str]:
        return sorted(set(self.args.method or ["binomial", "conjecture"]), key=B4_PIPELINES.index)

    def parameters(self) -> Dict[str, Any]:
        return {"r": self.args.r, "methods": self.methods(), "symbolic": self.args.symbolic}

    def orders(self) -> Dict[str, Any]:
        return {"y": self.args.order}

    def validate(self) -> Optional[str]:
        if self.args.r < 0:
            return f"--r doit être positif ou nul (reçu: {self.args.r})"
        return None

    def _series(self, method: str) -> TruncatedSeries:
        r, order = self.args.r, self.args.order
        if method == "binomial":
            return b4_binomial(r, order)
        if method == "conjecture":
            return b4_conjecture(r, order)
        verlinde = extract_universal("verlinde", r + 1, order, quick=self.args.quick)
        return limit_pullback(verlinde.log_g[4], verlinde_t(r, order)).exp()

    def compute(self) -> Dict[str, Any]:
        results: Dict[str, Any] = {}
        for method in self.methods():
            results[method] = univariate_coefficients(self._series(method))
            logger.info(f"B4 calculée par {method} pour r={self.args.r}")
        if self.args.symbolic:
            symbolic = b4_symbolic(self.args.order)
            results["symbolicLog"] = {
                str(n): [scalar_to_json(c) for c in symbolic.polynomials[n - 1]]
                for n in range(1, self.args.order + 1)
            }
        return results


COMPUTE_COMMANDS = {
    "omega": OmegaCommand,
    "verlinde": VerlindeCommand,
    "hilbk": HilbKCommand,
    "g-series": GSeriesCommand,
    "b4": B4Command,
}
