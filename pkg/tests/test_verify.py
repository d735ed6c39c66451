import io
import math
import dataclasses

import numpy as np
import pytest

from chamberflow.rootsys import get, instantiated
from chamberflow.types import CatalogError, DomainError
from chamberflow.verify import (
    KNOWN,
    MATCH,
    MISMATCH,
    Allowlist,
    consistency_sweep,
    convexity_sweep,
    cot_series_check,
    envelope,
    fd_gradient,
    fd_gradient_check,
    gradient_sweep,
    load_allowlist,
    load_transcriptions,
    multiplicity_audit,
    row_rng,
    table3_crosscheck,
    tangency_check,
    transcriptions,
)

from conftest import MINIMUM, RHO1

EMPTY = Allowlist()

TABLE3_KNOWN = {
    "rho2-SU6-Sp3",
    "SOq2-SUq2-SU2Uq",
    "SO4SO4-SO8-U4",
    "Spj1Spqj1-Spq2-Sp2Spq",
}
MULTIPLICITY_KNOWN = {"Sp4-E6-Spin10U1", "Spj1Spqj1-Spq2-Sp2Spq"}


def test_cot_series_exact_zero_at_pi():
    for J in (0, 1, 10, 1000):
        check = cot_series_check(math.pi, J)
        assert check.partial == 0.0
        assert check.exact == 0.0


def test_cot_series_first_term():
    check = cot_series_check(math.pi / 2, 0)
    assert math.isclose(check.partial, 4 / math.pi, rel_tol=1e-15)
    assert math.isclose(check.exact, 1.0, rel_tol=1e-15)


@pytest.mark.parametrize("theta", [0.3, math.pi / 2, 2.7])
def test_cot_series_error_decreases(theta):
    truncations = [10, 100, 1000, 10000]
    errors = [cot_series_check(theta, J).error for J in truncations]
    constant, decreasing = envelope(truncations, errors)

    assert decreasing
    assert constant < 2.0
    assert errors[-1] < 1e-3


def test_cot_series_domain():
    for theta in (0.0, 2 * math.pi, -1.0, 7.0):
        with pytest.raises(DomainError):
            cot_series_check(theta, 10)


def test_envelope():
    constant, decreasing = envelope([1, 2, 4], [1.0, 0.4, 0.5])
    assert constant == 2.0
    assert not decreasing


def test_fd_gradient(rho1):
    point = np.array([0.4, 0.1])
    assert fd_gradient(rho1, point).shape == (2,)
    assert fd_gradient_check(rho1, point) < 1e-6


def test_fd_gradient_near_a_wall(rho1):
    with pytest.raises(DomainError):
        fd_gradient_check(rho1, (1e-6, 0.0))


def test_table3_matches_rho1(rho1, rng):
    report = table3_crosscheck(rho1, n_points=50, rng=rng)

    assert report.verdict == MATCH
    assert report.ok
    assert len(report.points) == 50
    assert report.max_deviation <= 1e-12
    assert report.to_record()["check"] == "table3"


def test_table3_known_discrepancy(rng):
    report = table3_crosscheck(get("SOq2-SUq2-SU2Uq"), n_points=20, rng=rng)

    assert report.verdict == KNOWN
    assert report.ok
    assert report.max_deviation > 1e-3
    assert report.note


def test_table3_without_allowlist(rng):
    report = table3_crosscheck(get("SOq2-SUq2-SU2Uq"), n_points=20, allowed=EMPTY, rng=rng)

    assert report.verdict == MISMATCH
    assert not report.ok


def test_table3_without_points():
    assert table3_crosscheck(get("SOq2-SUq2-SU2Uq"), n_points=0).verdict == KNOWN
    assert table3_crosscheck(get(RHO1), n_points=0).verdict == MATCH


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_table3_every_row(spec):
    report = table3_crosscheck(spec, n_points=20, rng=row_rng(None, 0))

    assert report.verdict in (MATCH, KNOWN)
    assert (report.verdict == KNOWN) == (spec.name in TABLE3_KNOWN)


def test_every_row_is_transcribed():
    assert {spec.name for spec in instantiated()} <= set(transcriptions())


def test_missing_transcription(rho1):
    with pytest.raises(CatalogError):
        table3_crosscheck(dataclasses.replace(rho1, name="unlisted"), n_points=1)


def test_malformed_transcriptions():
    with pytest.raises(CatalogError):
        load_transcriptions({"rows": {"broken": {"Y": []}}})

    with pytest.raises(CatalogError):
        load_transcriptions({"X": []})


def test_transcription_evaluates(rho1):
    transcription = transcriptions()[RHO1]
    assert np.allclose(transcription((math.pi / 4, 0.0)), [2.0, 0.0])
    assert np.allclose(transcription(MINIMUM), [0.0, 0.0], atol=1e-14)


def test_load_allowlist():
    allowed = load_allowlist(
        io.StringIO("row:\n  - check: tangency\n    note: skewed\n")
    )
    assert len(allowed) == 1
    assert allowed.allows("row", "tangency")
    assert not allowed.allows("row", "table3")
    assert allowed.note("row", "tangency") == "skewed"

    assert len(load_allowlist({})) == 0

    with pytest.raises(CatalogError):
        load_allowlist({"row": [{"check": "speed"}]})


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_multiplicity_audit(spec):
    report = multiplicity_audit(spec)

    if spec.name in MULTIPLICITY_KNOWN:
        assert report.failures
        assert report.verdict == KNOWN
    else:
        assert report.failures == []
        assert report.verdict == MATCH


def test_multiplicity_audit_without_allowlist():
    report = multiplicity_audit(get("Sp4-E6-Spin10U1"), allowed=EMPTY)

    assert report.verdict == MISMATCH
    assert report.to_record()["check"] == "multiplicity"


def test_tangency_rho1(rho1, rng):
    report = tangency_check(rho1, rng=rng)
    assert report.verdict == MATCH
    assert report.worst <= 1e-10


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_tangency_every_row(spec):
    report = tangency_check(spec, n_points=20, rng=row_rng(None, 0))
    assert report.verdict in (MATCH, KNOWN)


def test_sweeps_on_rho1(rho1):
    consistency = consistency_sweep([rho1], n_points=20, seed=1)
    gradient = gradient_sweep([rho1], n_points=20, seed=1)
    convexity = convexity_sweep([rho1], n_points=20, seed=1)

    assert consistency.ok and consistency.worst <= 1e-11
    assert gradient.ok and gradient.worst <= 1e-5
    assert convexity.ok and convexity[RHO1].worst > 0
    assert [record["verdict"] for record in gradient.to_records()] == ["match"]


@pytest.mark.slow
def test_sweeps_over_the_catalog():
    for sweep in (consistency_sweep, gradient_sweep, convexity_sweep):
        summary = sweep(n_points=100, workers=2)
        assert len(summary.rows) == 35
        assert summary.ok, [row.name for row in summary.failures]
        assert [row.name for row in summary] == sorted(row.name for row in summary)


def test_row_rng_is_reproducible():
    assert np.array_equal(row_rng(7, 3).random(4), row_rng(7, 3).random(4))
    assert not np.array_equal(row_rng(7, 3).random(4), row_rng(7, 4).random(4))
