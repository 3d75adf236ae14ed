import argparse
import logging
import sys
from time import perf_counter
from typing import List, Optional

from backend.closedform.bseries import B4_METHODS
from backend.toric.surfaces import BUILTIN_SURFACES
from backend.universal.identities import MAIN_THEOREM_SOURCES
from backend.universal.product_formula import UNIVERSAL_FLAVOURS
from backend.utils.config import ENGINE_VERSION, ConfigManager
from backend.utils.logger import setup_logging
from frontend.components.compute_commands import B4_PIPELINES, COMPUTE_COMMANDS, G_SOURCES
from frontend.components.verify_commands import VERIFY_COMMANDS
from frontend.utils.rendering import OUTPUT_FORMATS, render

logger = logging.getLogger(__name__)


def global_options() -> argparse.ArgumentParser:
    # Acceptées avant ou après la sous-commande
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS,
                        help="Format de sortie (json par défaut)")
    parent.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="Nombre de processus de calcul")
    parent.add_argument("--max-weight", type=int, dest="max_weight", default=argparse.SUPPRESS,
                        help="Poids maximal des partitions")
    parent.add_argument("--log-level", dest="log_level", choices=ConfigManager.LOG_LEVELS,
                        default=argparse.SUPPRESS, help="Niveau de log (sortie d'erreur)")
    parent.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="Ajoute la durée d'exécution au rapport")
    return parent


def _add_compute_parsers(subparsers, parent: argparse.ArgumentParser) -> None:
    omega = subparsers.add_parser("omega", parents=[parent], help="Série maîtresse Ω")
    omega.add_argument("--k", type=int, required=True)
    omega.add_argument("--m", type=int, default=0)
    omega.add_argument("--worder", type=int, required=True)
    omega.add_argument("--zorder", type=int, required=True)

    for name, help_text in (("verlinde", "Série de Verlinde I^V"), ("hilbk", "Série K-théorique I")):
        command = subparsers.add_parser(name, parents=[parent], help=help_text)
        command.add_argument("--surface", required=True, help=f"Parmi {', '.join(BUILTIN_SURFACES)}")
        command.add_argument("--bundle", required=True, help='Classe α, par exemple "O(1)+O(0,1)-O"')
        command.add_argument("--worder", type=int, required=True)
        if name == "hilbk":
            command.add_argument("--zorder", type=int, required=True)

    g_series = subparsers.add_parser("g-series", parents=[parent], help="Séries universelles G, A ou B")
    g_series.add_argument("--k", type=int, required=True)
    g_series.add_argument("--which", type=int, action="append", choices=range(5))
    g_series.add_argument("--flavour", choices=UNIVERSAL_FLAVOURS, default="full")
    g_series.add_argument("--source", choices=G_SOURCES, default="closed")
    g_series.add_argument("--worder", type=int, required=True)
    g_series.add_argument("--zorder", type=int)
    g_series.add_argument("--log", action="store_true", help="Émet log G_i plutôt que G_i")
    g_series.add_argument("--quick", action="store_true")

    b4 = subparsers.add_parser("b4", parents=[parent], help="B4 par sommes binomiales, conjecture ou localisation")
    b4.add_argument("--r", type=int, required=True)
    b4.add_argument("--order", type=int, required=True)
    b4.add_argument("--method", action="append", choices=B4_PIPELINES)
    b4.add_argument("--symbolic", action="store_true", help="Ajoute les polynômes en r de log B4")
    b4.add_argument("--quick", action="store_true")


def _add_verify_parsers(subparsers, parent: argparse.ArgumentParser) -> None:
    subparsers.add_parser("macdonald", parents=[parent], help="Cauchy, Garsia-Tesler, Koornwinder")

    omega = subparsers.add_parser("omega-identity", parents=[parent], help="Équation fonctionnelle de Ω")
    omega.add_argument("--k", type=int, required=True)
    omega.add_argument("--worder", type=int)
    omega.add_argument("--zorder", type=int)

    symmetry = subparsers.add_parser("symmetry", parents=[parent], help="Palindromie de H~_{d1,d2}")
    symmetry.add_argument("--d1", type=int, required=True)
    symmetry.add_argument("--d2", type=int, required=True)
    symmetry.add_argument("--k", type=int, required=True)
    symmetry.add_argument("--worder", type=int, default=4)
    symmetry.add_argument("--zorder", type=int, default=4)
    symmetry.add_argument("--slopes", action="store_true", help="Compare aussi aux droites numériques")

    localization = subparsers.add_parser("localization", parents=[parent], help="Contrôles de localisation")
    localization.add_argument("--surface")

    for name, help_text in (("regularity", "Régularité et séries C, D, E, F"),
                            ("main-theorem", "Extraction de G0..G4 contre les formes closes")):
        command = subparsers.add_parser(name, parents=[parent], help=help_text)
        command.add_argument("--k", type=int, required=True)
        command.add_argument("--worder", type=int, default=4 if name == "main-theorem" else 3)
        command.add_argument("--zorder", type=int)
        if name == "main-theorem":
            command.add_argument("--source", choices=MAIN_THEOREM_SOURCES, default="localization")
            command.add_argument("--quick", action="store_true")

    segre = subparsers.add_parser("segre-verlinde", parents=[parent], help="Correspondance Segre-Verlinde")
    segre.add_argument("--k", type=int, required=True)
    segre.add_argument("--order", type=int, default=4)
    segre.add_argument("--localization", action="store_true")
    segre.add_argument("--quick", action="store_true")

    bconj = subparsers.add_parser("bconj", parents=[parent], help=f"Conjecture B4 ({', '.join(B4_METHODS)})")
    bconj.add_argument("--r", type=int, action="append")
    bconj.add_argument("--order", type=int, default=6)
    bconj.add_argument("--localization", action="store_true")
    bconj.add_argument("--quick", action="store_true")

    closed = subparsers.add_parser("closed-forms", parents=[parent], help="Lagrange, B3 et B4 sans localisation")
    closed.add_argument("--order", type=int, default=6)
    closed.add_argument("--quick", action="store_true")

    everything = subparsers.add_parser("all", parents=[parent], help="Suite d'acceptation")
    everything.add_argument("--quick", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parent = global_options()
    parser = argparse.ArgumentParser(
        prog="hilbseries", parents=[parent],
        description="Séries génératrices des schémas de Hilbert de points: calcul exact et vérifications")
    parser.add_argument("--version", action="version", version=f"%(prog)s {ENGINE_VERSION}")
    groups = parser.add_subparsers(dest="group", required=True)

    compute = groups.add_parser("compute", parents=[parent], help="Calcule une série")
    _add_compute_parsers(compute.add_subparsers(dest="command", required=True), parent)

    verify = groups.add_parser("verify", parents=[parent], help="Vérifie une famille d'identités")
    _add_verify_parsers(verify.add_subparsers(dest="command", required=True), parent)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Code de sortie: 0 si tous les contrôles passent, 1 en cas d'échec, 2 pour un usage invalide"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else 2

    registry = COMPUTE_COMMANDS if args.group == "compute" else VERIFY_COMMANDS
    command = registry[args.command](args)
    problem = command.validate()
    if problem is not None:
        try:
            parser.error(problem)
        except SystemExit as exit_request:
            return exit_request.code

    settings = ConfigManager.setup_environment()
    settings = ConfigManager.apply_overrides(
        jobs=getattr(args, "jobs", None),
        max_weight=getattr(args, "max_weight", None),
        log_level=getattr(args, "log_level", None),
    )
    setup_logging(settings.log_level)
    logger.info(f"{command.name} (jobs={settings.jobs}, max_weight={settings.max_weight})")

    start = perf_counter()
    manifest = command.render()
    manifest.elapsed = perf_counter() - start

    output_format = getattr(args, "format", "json")
    print(render(manifest, output_format, timing=getattr(args, "timing", False)))
    return 0 if manifest.passed else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
