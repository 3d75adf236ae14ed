from sympy.polys.domains import QQ

from backend.core.series import SeriesRing, series_ring
from backend.types.report_types import CheckReport, CheckStatus, RunManifest, compare_series
from backend.utils.exceptions import NonUnitConstantTerm
from backend.utils.serialization import (
    scalar_from_json,
    scalar_to_json,
    series_from_json,
    series_to_json,
    to_canonical_json,
    univariate_coefficients,
)
from frontend.utils.rendering import render


def test_scalar_encoding():
    cases = [
        (QQ(3, 4), {"num": "3", "den": "4"}),
        (QQ(-2, 6), {"num": "-1", "den": "3"}),
        (QQ(0), {"num": "0", "den": "1"}),
        (5, {"num": "5", "den": "1"}),
    ]
    for value, expected in cases:
        assert scalar_to_json(value) == expected
        assert scalar_from_json(expected) == QQ(value)


def test_series_encoding():
    ring, w, z = series_ring("w,z", (2, 1))
    series = z.scale(QQ(1, 2)) - w ** 2 + 3
    payload = series_to_json(series)
    assert payload == {
        "vars": ["w", "z"],
        "orders": [2, 1],
        "terms": [
            {"exp": [0, 0], "num": "3", "den": "1"},
            {"exp": [0, 1], "num": "1", "den": "2"},
            {"exp": [2, 0], "num": "-1", "den": "1"},
        ],
    }
    assert series_from_json(payload) == series

    ring = SeriesRing(("w",), (3,))
    coefficients = univariate_coefficients((ring.one() - ring.gen("w")).invert())
    assert coefficients == [{"num": "1", "den": "1"}] * 4


def test_canonical_json():
    assert to_canonical_json({"b": [1, 2], "a": {"y": "é", "x": None}}) == '{"a":{"x":null,"y":"é"},"b":[1,2]}'


def test_reports():
    ring, w = series_ring("w", (3,))
    passed = compare_series("geometric", {"order": 3}, (1 - w).invert(), 1 + w + w ** 2 + w ** 3)
    failed = compare_series("geometric", {"order": 3}, (1 - w).invert(), 1 + w)
    assert passed.passed
    assert failed.status is CheckStatus.FAIL
    assert failed.first_discrepancy.to_dict() == {"location": "w^2", "expected": "1", "actual": "0"}

    error = CheckReport.from_error("inverse", {}, NonUnitConstantTerm("Terme constant nul", {"order": 3}))
    assert not error.passed
    assert error.first_discrepancy.location == "NonUnitConstantTerm"
    assert error.details == {"order": "3"}


def test_manifest_rendering():
    ring, w = series_ring("w", (2,))
    manifest = RunManifest("compute test", {"k": 3}, "0.1.0", {"w": 2}, elapsed=1.25)
    manifest.reports = [CheckReport.success("identity", {"k": 3}), CheckReport.skipped("other", {}, "trop long")]
    manifest.results = {"series": series_to_json(w.scale(QQ(1, 2)) - 1)}
    assert manifest.passed
    assert manifest.summary == {"pass": 1, "fail": 0, "skipped": 1}

    output = render(manifest)
    assert output == render(manifest)
    assert '"elapsed"' not in output
    assert '"elapsed":1.25' in render(manifest, timing=True)

    table = render(manifest, "table").splitlines()
    assert table[0] == "compute test  (version 0.1.0)"
    assert "pass=1" in table[-4]
    assert table[-2:] == ["  1     -1", "  w^1  1/2"]
