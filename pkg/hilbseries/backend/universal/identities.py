"""
Identity checks for the universal series

Created: 2024-11-04
"""
# backend/universal/identities.py
import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from backend.core.series import SeriesRing, TruncatedSeries
from backend.partfun.extraction import HSeriesFamily, extract_h
from backend.partfun.slope import evaluate_polynomial, interpolate_polynomial
from backend.types.report_types import CheckReport, compare_series
from backend.universal.cdef import CDEFSeries, build_cdef, dw, dz, k_operator
from backend.universal.closed_forms import (
    chern_x,
    closed_form_g,
    exp_k_closed,
    f_minus_two_e_closed,
    g3_h_series,
    known_a_series,
    known_b_series,
    verlinde_t,
)
from backend.universal.product_formula import UniversalSeriesBundle, extract_universal, gcef_from_family
from backend.universal.symreg import (
    SymRegSeries,
    chern_variable,
    h_order,
    h_to_f_coefficient,
    limit_pullback,
    verlinde_limit,
    verlinde_variable,
)
from backend.universal.uvchart import UVChart, uv_dw, uv_dz
from backend.utils.exceptions import HilbSeriesError, ValidationFailure

logger = logging.getLogger(__name__)

# log(G0 G1), log G3, log G4 et leurs analogues A et B
LIMIT_COMBINATIONS: Dict[str, Tuple[int, ...]] = {"01": (0, 1), "3": (3,), "4": (4,)}
MAIN_THEOREM_SOURCES = ("localization", "family")


def signed_argument(series: TruncatedSeries, sign: int) -> TruncatedSeries:
    """f(sign * w) pour une série en une variable"""
    if sign == 1:
        return series
    return TruncatedSeries(series.ring, {e: (-c if e[0] % 2 else c) for e, c in series.terms.items()})


def _zero_w_slice(series: TruncatedSeries) -> bool:
    return all(exp[0] > 0 for exp in series.terms)


def verify_main_theorem(k: int, w_order: int, z_order: int, source: str = "localization",
                        quick: bool = False, jobs: Optional[int] = None,
                        bundle: Optional[UniversalSeriesBundle] = None) -> List[CheckReport]:
    """log G_i extraites = log des formes closes (i = 0..3), G_i(0, z) = 1, symétrie et régularité"""
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order, "source": source}
    try:
        if bundle is None:
            if source == "family":
                bundle = gcef_from_family(k, w_order, z_order)
            else:
                bundle = extract_universal("full", k, w_order, z_order, quick=quick, jobs=jobs)
    except HilbSeriesError as error:
        return [CheckReport.from_error("main-theorem", parameters, error)]
    chart = UVChart(k, w_order, z_order)
    reports = []
    for index in range(4):
        params = dict(parameters, index=index)
        closed = closed_form_g(index, k, w_order, z_order, chart).log()
        reports.append(compare_series("main-theorem", params, closed, bundle.log_g[index]))
        if _zero_w_slice(bundle.log_g[index]):
            reports.append(CheckReport.success("g-at-w-zero", params))
        else:
            reports.append(CheckReport.failure("g-at-w-zero", params, "w^0", 0, "terme non nul"))
    if k >= 3 and z_order >= 2 * w_order:
        for label, indices in LIMIT_COMBINATIONS.items():
            params = dict(parameters, series=f"log G{label}")
            try:
                SymRegSeries(k, bundle.combined(*indices)).certify(0)
                reports.append(CheckReport.success("symmetric-regular", params))
            except HilbSeriesError as error:
                reports.append(CheckReport.from_error("symmetric-regular", params, error))
    logger.info(f"Théorème principal vérifié pour k={k} ({sum(r.passed for r in reports)}/{len(reports)})")
    return reports


def verify_uv_operators(k: int, w_order: int, z_order: int,
                        chart: Optional[UVChart] = None) -> List[CheckReport]:
    """D_w, D_z en coordonnées (u, v): D_w log(1-v) = (k-1) uv / Δ et règle de dérivation en chaîne"""
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    chart = chart or UVChart(k, w_order, z_order)
    reports = []
    uv = chart.uv_ring()
    one_uv, gu, gv = uv.one(), uv.gen("u"), uv.gen("v")
    delta_uv = one_uv - gu - gv - (gu * gv).scale(k * k - 2 * k)
    expected = (gu * gv).scale(k - 1) * delta_uv.invert()
    reports.append(compare_series("uv-operator", dict(parameters, case="D_w log(1-v)"),
                                  expected, uv_dw((one_uv - gv).log(), k)))
    for name, sample in (("log(1-u)", (one_uv - gu).log()), ("log(1-v)", (one_uv - gv).log())):
        pulled = chart.pull(sample)
        reports.append(compare_series("chain-rule", dict(parameters, case=f"D_w {name}"),
                                      pulled.euler("w"), chart.pull(uv_dw(sample, k))))
        reports.append(compare_series("chain-rule", dict(parameters, case=f"D_z {name}"),
                                      pulled.euler("z"), chart.pull(uv_dz(sample, k))))
    return reports


def verify_h_to_f_pipelines(seed: int = 0, count: int = 200, ks: Sequence[int] = (2, 3, 4, 5),
                            w_order: int = 4, z_order: int = 8) -> CheckReport:
    """[w^m z^n] y^a par la carte (u, v) et par la formule binomiale, sur des cellules (m, n, a, k) tirées au hasard"""
    rng = random.Random(seed)
    parameters = {"seed": seed, "count": count, "wOrder": w_order, "zOrder": z_order}
    top = h_order(w_order, z_order)
    powers: Dict[int, List[TruncatedSeries]] = {}
    for _ in range(count):
        k = rng.choice(ks)
        m, n, a = rng.randint(0, w_order), rng.randint(0, z_order), rng.randint(1, top)
        if k not in powers:
            y = UVChart(k, w_order, z_order).y
            powers[k] = [y]
            while len(powers[k]) < top:
                powers[k].append(powers[k][-1] * y)
        by_uv = powers[k][a - 1].coefficient((m, n))
        by_binomial = h_to_f_coefficient(a, m, n, k)
        if by_uv != by_binomial:
            return CheckReport.failure("h-to-f-pipelines", dict(parameters, k=k, a=a),
                                       f"w^{m}*z^{n}", str(by_uv), str(by_binomial))
    return CheckReport.success("h-to-f-pipelines", parameters)


def verify_differential_identities(k: int, w_order: int, z_order: int,
                                   family: Optional[HSeriesFamily] = None) -> List[CheckReport]:
    """Opérateurs D_w, D_z en coordonnées (u, v) et dérivées secondes de H_{-1,-1}"""
    parameters = {"k": k, "wOrder": w_order, "zOrder": z_order}
    chart = UVChart(k, w_order, z_order)
    one, u, v = chart.one, chart.u, chart.v
    reports = verify_uv_operators(k, w_order, z_order, chart)

    h = family.h_mm if family is not None else extract_h(-1, -1, k, w_order, z_order).series
    log_1mu, log_1mv = (one - u).log(), (one - v).log()
    log_mixed = ((one - u) ** (k - 1) - v).log()
    cases = [
        ("D_w D_z H", log_1mu.scale(-k), dw(dz(h))),
        ("D_z^2 H", (log_mixed - log_1mu.scale(k) - log_1mv).scale(k), dz(dz(h))),
        ("D_w^2 H", (one - chart.rho).log() - log_1mu, dw(dw(h))),
        ("K", exp_k_closed(chart).log(), k_operator(h)),
    ]
    for label, closed, computed in cases:
        reports.append(compare_series("differential-identity", dict(parameters, case=label), closed, computed))
    if k >= 2:
        cdef = build_cdef(k, w_order, z_order, family)
        reports.append(compare_series(
            "differential-identity", dict(parameters, case="24(F-2E)"),
            f_minus_two_e_closed(chart), (cdef.f - cdef.e.scale(2)).scale(24)))
        taylor = cdef.family.log_g()
        for label, expected, actual in (
            ("log G0G1", taylor[0] + taylor[1], cdef.log_g0g1()),
            ("log G3", taylor[3], cdef.log_g3()),
            ("log G4", taylor[4], cdef.log_g4()),
        ):
            reports.append(compare_series("cdef-relation", dict(parameters, case=label), expected, actual))
    return reports


def _pullback_report(identity: str, parameters: Dict, series: TruncatedSeries, variable: TruncatedSeries,
                     expected: TruncatedSeries) -> CheckReport:
    return compare_series(identity, parameters, expected, limit_pullback(series, variable))


def verify_known_series(k: int, w_order: int, chern: Optional[UniversalSeriesBundle] = None,
                        verlinde: Optional[UniversalSeriesBundle] = None, quick: bool = False,
                        jobs: Optional[int] = None) -> List[CheckReport]:
    """A_0, A_1, A_2 sous x = -y(1-ry)^{r-1}, B_0, B_1, B_2 sous t = -y(1-y)^{r²-1}, r = k - 1"""
    r = k - 1
    parameters = {"k": k, "r": r, "wOrder": w_order}
    reports = []
    try:
        chern = chern or extract_universal("chern", k, w_order, quick=quick, jobs=jobs)
        verlinde = verlinde or extract_universal("verlinde", k, w_order, quick=quick, jobs=jobs)
    except HilbSeriesError as error:
        return [CheckReport.from_error("known-series", parameters, error)]
    x, t = chern_x(r, w_order), verlinde_t(r, w_order)
    for index in range(3):
        reports.append(_pullback_report("known-series", dict(parameters, series=f"A{index}"),
                                        chern.log_g[index], x, known_a_series(index, r, w_order).log()))
        reports.append(_pullback_report("known-series", dict(parameters, series=f"B{index}"),
                                        verlinde.log_g[index], t, known_b_series(index, r, w_order).log()))
    if r in (0, 1):
        for index in (3, 4):
            reports.append(compare_series("known-series", dict(parameters, series=f"B{index}"),
                                          verlinde.log_g[index].ring.zero(), verlinde.log_g[index]))
    elif r >= 2:
        reports.append(_pullback_report("known-series", dict(parameters, series="B3"),
                                        verlinde.log_g[3], t, g3_h_series(k, w_order)))
    return reports


def verify_segre_verlinde(k: int, w_order: int, bundle: Optional[UniversalSeriesBundle] = None,
                          chern: Optional[UniversalSeriesBundle] = None,
                          verlinde: Optional[UniversalSeriesBundle] = None) -> List[CheckReport]:
    """Limites de Chern et de Verlinde de log(G0G1), log G3, log G4 ramenées à la même h(y).

    Avec les séries A et B extraites, log A(x) = f_chern(-x) et log B(t) = f_verlinde((-1)^{k-1} t).
    """
    z_order = k * w_order
    parameters = {"k": k, "wOrder": w_order}
    try:
        bundle = bundle or gcef_from_family(k, w_order, z_order)
    except HilbSeriesError as error:
        return [CheckReport.from_error("segre-verlinde", parameters, error)]
    reports = []
    for label, indices in LIMIT_COMBINATIONS.items():
        params = dict(parameters, series=f"log G{label}")
        try:
            series = SymRegSeries(k, bundle.combined(*indices)).certify(0)
            h = series.h()
            chern_limit, verl_limit = series.chern_limit(), series.verlinde_limit()
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("segre-verlinde", params, error))
            continue
        reports.append(_pullback_report("chern-limit", params, chern_limit, chern_variable(k, w_order), h))
        reports.append(_pullback_report("verlinde-limit", params, verl_limit, verlinde_variable(k, w_order), h))
        if chern is not None:
            reports.append(compare_series("chern-limit-localization", params,
                                          signed_argument(chern_limit, -1), chern.combined(*indices)))
        if verlinde is not None:
            sign = -1 if (k - 1) % 2 else 1
            reports.append(compare_series("verlinde-limit-localization", params,
                                          signed_argument(verl_limit, sign), verlinde.combined(*indices)))
    return reports


def verlinde_taylor_data(verlinde: UniversalSeriesBundle) -> Dict[str, TruncatedSeries]:
    """C11^V, D1^V, E^V, F^V de rang k - 1 à partir de log B_1..log B_4"""
    log_b = verlinde.log_g
    c11 = log_b[1].scale(QQ(1, 2))
    d1 = c11 - log_b[3]
    p = (log_b[2] + c11.scale(4)).scale(QQ(1, 24))
    q = log_b[4] - (c11 - d1).scale(QQ(1, 2))
    e = p + q
    return {"C11": c11, "D1": d1, "E": e, "F": p.scale(3) + q.scale(2)}


def verify_verlinde_limit_relation(k: int, w_order: int, cdef: Optional[CDEFSeries] = None,
                                   verlinde: Optional[UniversalSeriesBundle] = None,
                                   quick: bool = False, jobs: Optional[int] = None) -> List[CheckReport]:
    """Limites de Verlinde de C, D, E, F contre les données de Taylor de Verlinde de rang k - 1"""
    parameters = {"k": k, "wOrder": w_order}
    try:
        cdef = cdef or build_cdef(k, w_order, k * w_order)
        verlinde = verlinde or extract_universal("verlinde", k, w_order, quick=quick, jobs=jobs)
    except HilbSeriesError as error:
        return [CheckReport.from_error("verlinde-limit-relation", parameters, error)]
    sign = -1 if (k - 1) % 2 else 1
    data = {name: signed_argument(series, sign) for name, series in verlinde_taylor_data(verlinde).items()}
    c11 = data["C11"]
    weight = QQ(k * k - k + 1)
    expected = {
        "C": c11.euler("w").scale(2 * k * (k - 1)),
        "D": data["D1"].scale(-k) + c11.scale(k * k),
        "E": data["E"] - c11.scale(weight / 6),
        "F": data["F"] - c11.scale(weight / 2),
    }
    reports = []
    for name, target in expected.items():
        params = dict(parameters, series=name)
        try:
            actual = verlinde_limit(cdef.as_dict()[name], k)
        except HilbSeriesError as error:
            reports.append(CheckReport.from_error("verlinde-limit-relation", params, error))
            continue
        reports.append(compare_series("verlinde-limit-relation", params, target, actual))
    return reports


def _log_g_at_rank(index: int, k: int, w_order: int, z_order: int) -> TruncatedSeries:
    if index <= 3:
        return closed_form_g(index, k, w_order, z_order).log()
    return gcef_from_family(k, w_order, z_order).log_g[index]


def rank_polynomial(index: int, w_order: int, z_order: int,
                    ranks: Optional[Sequence[int]] = None) -> Dict[Tuple[int, int], List]:
    """Coefficients de log G_index comme polynômes en k (degré <= m + n), un rang de validation"""
    degree = w_order + z_order
    ranks = list(ranks or range(3, degree + 5))
    if len(ranks) < degree + 2:
        raise ValueError(f"{degree + 2} rangs nécessaires, {len(ranks)} fournis")
    samples = {k: _log_g_at_rank(index, k, w_order, z_order) for k in ranks}
    ring = SeriesRing(("w", "z"), (w_order, z_order), QQ)
    result = {}
    for m, n in ring.box_exponents():
        nodes = ranks[:m + n + 1]
        values = [samples[k].coefficient((m, n)) for k in nodes]
        coeffs = interpolate_polynomial(nodes, values)
        for k in ranks[m + n + 1:]:
            actual = samples[k].coefficient((m, n))
            if evaluate_polynomial(coeffs, QQ(k)) != actual:
                raise ValidationFailure(
                    f"Coefficient de log G_{index} non polynomial de degré <= {m + n} en k", m, n,
                    {"k": k, "actual": str(actual)})
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if coeffs:
            result[(m, n)] = coeffs
    logger.info(f"log G_{index} interpolée en k sur {len(ranks)} rangs")
    return result
