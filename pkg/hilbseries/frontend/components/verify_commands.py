#frontend/components/verify_commands.py

import logging
from argparse import Namespace
from typing import Any, Dict, List, Optional

from backend.closedform.checks import (
    closedform_suite,
    verify_b3_agreement,
    verify_b4_symbolic,
    verify_bconj,
    verify_g3_verlinde_limit,
)
from backend.macdonald.identities import macdonald_suite, verify_pexp_multiplicative
from backend.partfun.checks import (
    omega_suite,
    verify_functional_equation,
    verify_palindromic,
    verify_regularity,
    verify_slope_independence,
    verify_symmetry_theorem,
)
from backend.toric.bundles import trivial_bundle
from backend.toric.hilbert import verlinde_series
from backend.toric.localization import verify_localization
from backend.toric.surfaces import BUILTIN_SURFACES, builtin_surface
from backend.types.report_types import CheckReport, RunManifest, compare_series
from backend.universal.cdef import verify_cdef
from backend.universal.identities import (
    verify_differential_identities,
    verify_h_to_f_pipelines,
    verify_known_series,
    verify_main_theorem,
    verify_segre_verlinde,
    verify_verlinde_limit_relation,
)
from backend.universal.product_formula import extract_universal
from backend.utils.config import ENGINE_VERSION
from backend.utils.exceptions import HilbSeriesError, UnknownSurface

logger = logging.getLogger(__name__)


def flag_max_weight(args: Namespace, default: int) -> int:
    """--max-weight s'il a été passé, sinon la valeur par défaut de la commande"""
    value = getattr(args, "max_weight", None)
    return default if value is None else value


class VerifyCommand:
    """Commande de vérification: checks() renvoie la liste des rapports"""
    name = "verify"

    def __init__(self, args: Namespace):
        self.args = args

    def parameters(self) -> Dict[str, Any]:
        return {}

    def orders(self) -> Dict[str, Any]:
        return {}

    def validate(self) -> Optional[str]:
        return None

    def checks(self) -> List[CheckReport]:
        raise NotImplementedError

    def render(self) -> RunManifest:
        parameters = self.parameters()
        manifest = RunManifest(self.name, parameters, ENGINE_VERSION, self.orders())
        try:
            manifest.reports = self.checks()
        except HilbSeriesError as error:
            manifest.reports = [CheckReport.from_error(self.name, parameters, error)]
        if not manifest.passed:
            logger.warning(f"{self.name}: {manifest.summary['fail']} contrôle(s) en échec")
        else:
            logger.info(f"{self.name}: {len(manifest.reports)} contrôle(s) réussis")
        return manifest


class MacdonaldVerify(VerifyCommand):
    name = "verify macdonald"

    def weight(self) -> int:
        return flag_max_weight(self.args, 4)

    def parameters(self) -> Dict[str, Any]:
        return {"maxWeight": self.weight()}

    def checks(self) -> List[CheckReport]:
        return macdonald_suite(self.weight()) + verify_pexp_multiplicative(count=20)


class OmegaIdentityVerify(VerifyCommand):
    name = "verify omega-identity"

    def parameters(self) -> Dict[str, Any]:
        return {"k": self.args.k}

    def orders(self) -> Dict[str, Any]:
        order = flag_max_weight(self.args, 3)
        return {"w": self.args.worder or order, "z": self.args.zorder or order}

    def checks(self) -> List[CheckReport]:
        orders = self.orders()
        k, w_order, z_order = self.args.k, orders["w"], orders["z"]
        return [verify_functional_equation(k, w_order, z_order), verify_palindromic(k, w_order, z_order)]


class SymmetryVerify(VerifyCommand):
    name = "verify symmetry"

    def parameters(self) -> Dict[str, Any]:
        return {"d1": self.args.d1, "d2": self.args.d2, "k": self.args.k}

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder, "z": self.args.zorder}

    def validate(self) -> Optional[str]:
        if min(self.args.d1, self.args.d2) < -1:
            return "d1 et d2 doivent être >= -1"
        return None

    def checks(self) -> List[CheckReport]:
        args = self.args
        reports = [verify_symmetry_theorem(args.d1, args.d2, args.k, args.worder, args.zorder)]
        if args.slopes:
            reports.append(verify_slope_independence(args.d1, args.d2, args.k, args.worder, args.zorder))
        return reports


class LocalizationVerify(VerifyCommand):
    """Sommes de localisation sur les surfaces intégrées et I^V(0) = (1 - w)^{-1}"""
    name = "verify localization"

    def surfaces(self) -> List[str]:
        return [self.args.surface] if self.args.surface else list(BUILTIN_SURFACES)

    def parameters(self) -> Dict[str, Any]:
        return {"surfaces": self.surfaces()}

    def validate(self) -> Optional[str]:
        try:
            for name in self.surfaces():
                builtin_surface(name)
        except UnknownSurface as error:
            return str(error)
        return None

    def checks(self) -> List[CheckReport]:
        reports: List[CheckReport] = []
        for name in self.surfaces():
            surface = builtin_surface(name)
            reports.extend(verify_localization(surface))
        surface = builtin_surface("P2")
        parameters = {"surface": surface.name, "bundle": "0", "wOrder": 6}
        try:
            series = verlinde_series(surface, trivial_bundle(surface, 0), 6)
            ring = series.ring
            expected = (ring.one() - ring.gen("w")).invert()
            reports.append(compare_series("verlinde-trivial", parameters, expected, series))
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("verlinde-trivial", parameters, error))
        return reports


class RegularityVerify(VerifyCommand):
    """Régularité de log Ω, puis symétrie et régularité des séries C, C', D, E, F"""
    name = "verify regularity"

    def parameters(self) -> Dict[str, Any]:
        return {"k": self.args.k}

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder, "z": self.z_order()}

    def z_order(self) -> int:
        return self.args.zorder if self.args.zorder is not None else 2 * self.args.worder

    def checks(self) -> List[CheckReport]:
        k, w_order, z_order = self.args.k, self.args.worder, self.z_order()
        reports = [verify_regularity(min(k, 2), min(w_order, 3))]
        reports.extend(verify_cdef(k, w_order, z_order))
        reports.extend(verify_differential_identities(k, w_order, z_order))
        return reports


class MainTheoremVerify(VerifyCommand):
    name = "verify main-theorem"

    def parameters(self) -> Dict[str, Any]:
        return {"k": self.args.k, "source": self.args.source, "quick": self.args.quick}

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.worder, "z": self.z_order()}

    def z_order(self) -> int:
        return self.args.zorder if self.args.zorder is not None else 2 * self.args.worder

    def checks(self) -> List[CheckReport]:
        args = self.args
        return verify_main_theorem(args.k, args.worder, self.z_order(), args.source, args.quick,
                                   getattr(args, "jobs", None))


class SegreVerlindeVerify(VerifyCommand):
    """Limites de Chern et de Verlinde; avec --localization, séries A et B extraites"""
    name = "verify segre-verlinde"

    def parameters(self) -> Dict[str, Any]:
        return {"k": self.args.k, "localization": self.args.localization}

    def orders(self) -> Dict[str, Any]:
        return {"w": self.args.order}

    def checks(self) -> List[CheckReport]:
        k, order, quick = self.args.k, self.args.order, self.args.quick
        if not self.args.localization:
            return verify_segre_verlinde(k, order)
        chern = extract_universal("chern", k, order, quick=quick)
        verlinde = extract_universal("verlinde", k, order, quick=quick)
        reports = verify_segre_verlinde(k, order, chern=chern, verlinde=verlinde)
        reports.extend(verify_known_series(k, order, chern, verlinde))
        reports.extend(verify_verlinde_limit_relation(k, order, verlinde=verlinde))
        return reports


class BConjVerify(VerifyCommand):
    name = "verify bconj"

    def ranks(self) -> List[int]:
        return sorted(set(self.args.r or [2, 3]))

    def parameters(self) -> Dict[str, Any]:
        return {"ranks": self.ranks(), "localization": self.args.localization}

    def orders(self) -> Dict[str, Any]:
        return {"y": self.args.order}

    def validate(self) -> Optional[str]:
        if any(r < 2 for r in self.ranks()):
            return "Conjecture testée pour r >= 2"
        return None

    def checks(self) -> List[CheckReport]:
        args = self.args
        reports = verify_bconj(self.ranks(), args.order, localization=args.localization, quick=args.quick)
        for r in self.ranks():
            reports.extend(verify_b3_agreement(r, args.order, localization=args.localization, quick=args.quick))
        return reports


class ClosedFormsVerify(VerifyCommand):
    name = "verify closed-forms"

    def parameters(self) -> Dict[str, Any]:
        return {"quick": self.args.quick}

    def orders(self) -> Dict[str, Any]:
        return {"y": self.args.order}

    def checks(self) -> List[CheckReport]:
        order, quick = self.args.order, self.args.quick
        reports = closedform_suite(order, quick)
        for k in (3, 4):
            reports.append(verify_g3_verlinde_limit(k, 3 if quick else order))
        reports.extend(verify_b4_symbolic(3 if quick else 4))
        return reports


class AllVerify(VerifyCommand):
    """Suite d'acceptation; --quick la réduit à l'échelle d'un poste de travail"""
    name = "verify all"

    def parameters(self) -> Dict[str, Any]:
        return {"quick": self.args.quick}

    def checks(self) -> List[CheckReport]:
        quick = self.args.quick
        reports: List[CheckReport] = []
        reports.extend(macdonald_suite(3 if quick else 4))
        reports.extend(omega_suite(2 if quick else 3, quick))
        for name in (("P2", "P1xP1") if quick else BUILTIN_SURFACES):
            reports.extend(verify_localization(builtin_surface(name)))
        w_order = 2 if quick else 4
        for k in ((3,) if quick else (3, 4)):
            reports.extend(verify_main_theorem(k, w_order, 2 * w_order, "localization", quick))
            reports.extend(verify_cdef(k, w_order, 2 * w_order))
            reports.extend(verify_differential_identities(k, w_order, 2 * w_order))
            reports.extend(self.universal_checks(k, w_order))
        reports.append(verify_h_to_f_pipelines(count=50 if quick else 200))
        reports.extend(closedform_suite(4 if quick else 6, quick))
        if not quick:
            reports.extend(verify_bconj((2, 3, 4), 12))
        return reports

    def universal_checks(self, k: int, w_order: int) -> List[CheckReport]:
        """Séries A et B extraites une fois par k puis confrontées aux formes closes, à B3 et à B4"""
        quick = self.args.quick
        try:
            chern = extract_universal("chern", k, w_order, quick=quick)
            verlinde = extract_universal("verlinde", k, w_order, quick=quick)
        except HilbSeriesError as error:
            return [CheckReport.from_error("universal-extraction", {"k": k, "wOrder": w_order}, error)]
        reports = verify_segre_verlinde(k, w_order, chern=chern, verlinde=verlinde)
        reports.extend(verify_known_series(k, w_order, chern, verlinde))
        reports.extend(verify_b3_agreement(k - 1, w_order, verlinde=verlinde))
        reports.extend(verify_bconj((k - 1,), w_order, verlinde=[verlinde]))
        return reports


VERIFY_COMMANDS = {
    "macdonald": MacdonaldVerify,
    "omega-identity": OmegaIdentityVerify,
    "symmetry": SymmetryVerify,
    "localization": LocalizationVerify,
    "regularity": RegularityVerify,
    "main-theorem": MainTheoremVerify,
    "segre-verlinde": SegreVerlindeVerify,
    "bconj": BConjVerify,
    "closed-forms": ClosedFormsVerify,
    "all": AllVerify,
}
