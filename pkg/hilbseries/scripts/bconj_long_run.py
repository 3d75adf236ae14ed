#!/usr/bin/env python3
"""
Contrôle long de la conjecture B4: sommes binomiales contre produit des branches.
Hors de la suite de tests, compter plusieurs heures à l'ordre 50.

Usage:
    python scripts/bconj_long_run.py [--r R ...] [--order N] [--report-dir DIR]

Exemples :

Rang 2 jusqu'à y^50 :
    python scripts/bconj_long_run.py --r 2 --order 50

Rangs 2 à 4 jusqu'à y^12, rapport JSON dans ./reports :
    python scripts/bconj_long_run.py --r 2 --r 3 --r 4 --order 12 --report-dir reports
"""

import argparse
import os
import sys
from datetime import datetime
from time import perf_counter
from typing import List

from dotenv import load_dotenv

from backend.closedform.bseries import b4_binomial, b4_conjecture
from backend.types.report_types import CheckReport, RunManifest, compare_series
from backend.utils.config import ENGINE_VERSION
from backend.utils.exceptions import HilbSeriesError
from backend.utils.logger import setup_logging
from backend.utils.serialization import to_canonical_json


def setup_argparse() -> argparse.ArgumentParser:
    """Configure le parser d'arguments en ligne de commande"""
    parser = argparse.ArgumentParser(
        description="Compare B4 par sommes binomiales et par produit des branches à grand ordre"
    )

    parser.add_argument(
        "--r",
        type=int,
        action="append",
        help="Rang r >= 2 (répétable, défaut: 2)"
    )

    parser.add_argument(
        "--order",
        type=int,
        default=50,
        help="Ordre en y (défaut: 50)"
    )

    parser.add_argument(
        "--report-dir",
        type=str,
        help="Dossier où écrire le rapport JSON"
    )

    return parser


def check_rank(r: int, order: int) -> CheckReport:
    """Une comparaison complète pour un rang"""
    parameters = {"r": r, "order": order}
    start = perf_counter()
    try:
        report = compare_series("bconj", parameters, b4_binomial(r, order), b4_conjecture(r, order))
    except HilbSeriesError as error:
        report = CheckReport.from_error("bconj", parameters, error)
    status = "✅" if report.passed else "❌"
    print(f"{status} r={r} jusqu'à y^{order} ({perf_counter() - start:.1f} s)")
    return report


def save_report(manifest: RunManifest, report_dir: str) -> str:
    """Sauvegarde le manifeste au format JSON canonique"""
    os.makedirs(report_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    report_path = os.path.join(report_dir, f"bconj_report_{timestamp}.json")
    with open(report_path, "w", encoding="utf-8") as f:
        f.write(to_canonical_json(manifest.to_dict(include_timing=True)))
    return report_path


def main() -> int:
    """Point d'entrée principal du script"""
    parser = setup_argparse()
    args = parser.parse_args()
    ranks: List[int] = sorted(set(args.r or [2]))
    if any(r < 2 for r in ranks):
        parser.error("Conjecture testée pour r >= 2")

    setup_logging(os.getenv("HILBSERIES_LOG_LEVEL", "INFO"))
    manifest = RunManifest("bconj long run", {"ranks": ranks}, ENGINE_VERSION, {"y": args.order})

    start = perf_counter()
    for idx, r in enumerate(ranks, 1):
        print(f"\n[{idx}/{len(ranks)}] Rang {r}")
        manifest.reports.append(check_rank(r, args.order))
    manifest.elapsed = perf_counter() - start

    if args.report_dir:
        print(f"\n📝 Rapport sauvegardé: {save_report(manifest, args.report_dir)}")

    summary = manifest.summary
    print(f"\n{summary['pass']}/{len(ranks)} rangs vérifiés")
    return 0 if manifest.passed else 1


if __name__ == "__main__":
    try:
        load_dotenv()
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n❌ Opération annulée par l'utilisateur")
        sys.exit(1)
