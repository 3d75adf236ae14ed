#frontend/utils/rendering.py

from typing import Any, Dict, List, Sequence

from backend.types.report_types import RunManifest
from backend.utils.serialization import to_canonical_json

OUTPUT_FORMATS = ("json", "table")


def render_json(manifest: RunManifest, timing: bool = False) -> str:
    return to_canonical_json(manifest.to_dict(include_timing=timing))


def _fraction(cell: Dict[str, str]) -> str:
    return cell["num"] if cell["den"] == "1" else f"{cell['num']}/{cell['den']}"


def _is_series(value: Any) -> bool:
    return isinstance(value, dict) and {"vars", "orders", "terms"} <= set(value)


def _is_coefficient_list(value: Any) -> bool:
    return isinstance(value, list) and all(isinstance(c, dict) and {"num", "den"} <= set(c) for c in value)


def align(rows: Sequence[Sequence[str]]) -> List[str]:
    """Colonnes alignées: texte à gauche, dernière colonne (fractions) à droite"""
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [cell.ljust(width) for cell, width in zip(row[:-1], widths)]
        cells.append(row[-1].rjust(widths[-1]))
        lines.append("  ".join(cells).rstrip())
    return lines


def _series_rows(value: Dict[str, Any]) -> List[List[str]]:
    rows = []
    for term in value["terms"]:
        exponent = "*".join(f"{name}^{power}" for name, power in zip(value["vars"], term["exp"]) if power)
        rows.append([exponent or "1", _fraction(term)])
    return rows


def _result_lines(name: str, value: Any) -> List[str]:
    if _is_series(value):
        header = f"{name}  (ordres {', '.join(f'{v}<={o}' for v, o in zip(value['vars'], value['orders']))})"
        return [header] + ["  " + line for line in align(_series_rows(value))]
    if _is_coefficient_list(value):
        return [name] + ["  " + line for line in align([[str(i), _fraction(c)] for i, c in enumerate(value)])]
    if isinstance(value, dict) and value and all(isinstance(v, (dict, list)) for v in value.values()):
        lines = [name]
        for key in sorted(value):
            lines.extend("  " + line for line in _result_lines(str(key), value[key]))
        return lines
    return [f"{name}: {to_canonical_json(value)}"]


def render_table(manifest: RunManifest, timing: bool = False) -> str:
    lines = [f"{manifest.command}  (version {manifest.engine_version})"]
    if manifest.parameters:
        lines.append("paramètres: " + to_canonical_json(manifest.parameters))
    if manifest.reports:
        rows = [["identité", "paramètres", "écart", "statut"]]
        for report in manifest.reports:
            discrepancy = report.first_discrepancy
            where = ""
            if discrepancy is not None:
                where = f"{discrepancy.location}: attendu {discrepancy.expected}, obtenu {discrepancy.actual}"
            rows.append([report.identity, to_canonical_json(report.parameters), where, report.status.value])
        lines.extend(align(rows))
        summary = manifest.summary
        lines.append(", ".join(f"{key}={summary[key]}" for key in sorted(summary)))
    for name in sorted(manifest.results):
        lines.extend(_result_lines(name, manifest.results[name]))
    if timing and manifest.elapsed is not None:
        lines.append(f"durée: {manifest.elapsed:.3f} s")
    return "\n".join(lines)


def render(manifest: RunManifest, output_format: str = "json", timing: bool = False) -> str:
    if output_format == "table":
        return render_table(manifest, timing)
    return render_json(manifest, timing)
