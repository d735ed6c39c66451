import math
import dataclasses

import numpy as np
import pytest

from chamberflow.meanfield import (
    family_from_entries,
    root_arrays,
    gradient_rho,
    hessian_rho,
    lift_family,
    lift_mean_curvature,
    lift_principal_curvatures,
    lifted_hessian,
    lifted_potential,
    lifted_spectrum_arctan,
    min_hessian_eigenvalue,
    orbit_shape_spectrum,
    potential_rho,
    regularized_trace,
    shape_sup_norm,
    spectrum_trace,
    vector_field_X,
)
from chamberflow.rootsys import chamber, get, instantiated
from chamberflow.types import DomainError

from conftest import MINIMUM

SQRT3 = math.sqrt(3)


def test_field_at_known_points(rho1):
    assert np.allclose(vector_field_X(rho1, (math.pi / 4, 0.0)), [2.0, 0.0], atol=1e-14)
    assert np.allclose(vector_field_X(rho1, MINIMUM), [0.0, 0.0], atol=1e-14)


def test_gradient_is_the_field(rho1_chamber):
    point = (0.4, -0.1)
    assert np.array_equal(gradient_rho(rho1_chamber, point), vector_field_X(rho1_chamber, point))


def test_potential_at_known_points(rho1):
    assert math.isclose(potential_rho(rho1, MINIMUM), 1.5 * math.log(4 / 3), rel_tol=1e-14)
    assert math.isclose(potential_rho(rho1, (math.pi / 4, 0.0)), math.log(2), rel_tol=1e-14)


def test_hessian_at_the_minimum(rho1):
    assert np.allclose(hessian_rho(rho1, MINIMUM), 8 * np.eye(2), atol=1e-12)
    assert math.isclose(min_hessian_eigenvalue(rho1, MINIMUM), 8.0, rel_tol=1e-12)


def test_field_outside_the_chamber(rho1):
    with pytest.raises(DomainError):
        vector_field_X(rho1, (0.0, 0.1))

    with pytest.raises(DomainError):
        potential_rho(rho1, (1.0, 1.0))


def test_orbit_spectrum(rho1):
    entries = orbit_shape_spectrum(rho1, MINIMUM, (1.0, 0.0))
    got = {(e.label, e.block): (e.eigenvalue, e.multiplicity) for e in entries}

    assert got.keys() == {("alpha", "vertical"), ("beta", "horizontal"), ("alpha+beta", "horizontal")}
    assert math.isclose(got["alpha", "vertical"][0], -2 / SQRT3, rel_tol=1e-14)
    assert math.isclose(got["beta", "horizontal"][0], 1 / SQRT3, rel_tol=1e-14)
    assert math.isclose(got["alpha+beta", "horizontal"][0], 1 / SQRT3, rel_tol=1e-14)
    assert abs(spectrum_trace(entries)) < 1e-14


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_spectrum_trace_is_the_mean_curvature(spec, rng):
    cham = chamber(spec)
    for point in cham.sample(20, rng):
        v = rng.normal(size=2)
        v /= np.linalg.norm(v)
        field = vector_field_X(cham, point)
        trace = spectrum_trace(orbit_shape_spectrum(cham, point, v))
        assert abs(trace - field @ v) <= 1e-11 * max(1.0, np.linalg.norm(field))


def test_sup_norm_bounds_the_spectrum(rho1_chamber, rng):
    point = rho1_chamber.sample(1, rng)[0]
    sup = shape_sup_norm(rho1_chamber, point)
    for angle in np.linspace(0, 2 * math.pi, 17):
        v = (math.cos(angle), math.sin(angle))
        assert all(abs(e.eigenvalue) <= sup + 1e-12 for e in orbit_shape_spectrum(rho1_chamber, point, v))


def test_lift_family(rho1):
    family = lift_family(rho1, MINIMUM)
    assert np.allclose(family.b, [3.0, 3.0, 1.5])
    assert list(family.m_e) == [1, 1, 1]
    assert np.allclose(family.normals[0], [-6 / math.pi, 0.0])


def test_lift_principal_curvature_at_the_base(rho1):
    family = lift_family(rho1, MINIMUM)
    curvatures = lift_principal_curvatures(family, (0.0, 0.0), (1.0, 0.0), J=0)

    alpha = [c for c in curvatures if c.entry == 0 and c.k == 0]
    assert len(alpha) == 1
    assert math.isclose(alpha[0].value, -6 / math.pi, rel_tol=1e-14)


def test_lift_reproduces_the_field(rho1_chamber):
    base = np.array([0.5, 0.1])
    family = lift_family(rho1_chamber, base)
    for w in [(0.0, 0.0), (0.05, 0.02), (-0.1, 0.05)]:
        assert np.allclose(lift_mean_curvature(family, w), vector_field_X(rho1_chamber, base + w), atol=1e-12)
        assert math.isclose(
            lifted_potential(family, w) - lifted_potential(family, (0.0, 0.0)),
            potential_rho(rho1_chamber, base + w) - potential_rho(rho1_chamber, base),
            abs_tol=1e-12,
        )
        assert np.allclose(lifted_hessian(family, w), hessian_rho(rho1_chamber, base + w), atol=1e-10)


def test_lift_outside_its_chamber(rho1):
    family = lift_family(rho1, MINIMUM)
    with pytest.raises(DomainError):
        lift_mean_curvature(family, (-math.pi / 6, 0.0))


def test_regularized_trace_converges(rho1):
    family = lift_family(rho1, (0.4, 0.1))
    v = np.array([0.6, 0.8])
    errors = [regularized_trace(family, (0.0, 0.0), v, J).error for J in (10, 100, 1000)]

    assert errors[0] > errors[2]
    assert errors[2] < 1e-2


def test_regularized_trace_window_is_symmetric():
    family = family_from_entries([((1.0, 0.0), 1.0, 1, 0)])
    trace = regularized_trace(family, (0.0, 0.0), (1.0, 0.0), J=0)

    # x = 1/2 keeps j = -1 and j = 0, whose terms cancel
    assert trace.partial == 0.0
    assert abs(trace.closed) < 1e-15


def test_regularized_trace_odd_window():
    family = family_from_entries([((1.0, 0.0), 2.0, 0, 1)])

    # offset 3/4 keeps j = -J - 1 .. J - 1
    assert regularized_trace(family, (0.0, 0.0), (1.0, 0.0), J=0).partial == -1.0
    assert math.isclose(regularized_trace(family, (0.0, 0.0), (1.0, 0.0), J=1).partial, -13 / 15, rel_tol=1e-15)


def test_regularized_trace_negative_truncation(rho1):
    family = lift_family(rho1, MINIMUM)
    with pytest.raises(DomainError):
        regularized_trace(family, (0.0, 0.0), (1.0, 0.0), -1)


def test_arctan_spectrum():
    model = lifted_spectrum_arctan(1.0, 1.0, 3)
    expected = [1 / (math.pi / 4 + k * math.pi) for k in range(-3, 4)]

    assert np.allclose(model.values, expected, rtol=1e-15)
    assert math.isclose(model.sup_norm, 4 / math.pi, rel_tol=1e-15)
    assert max(abs(x) for x in model.values) <= model.sup_norm


def test_arctan_spectrum_degenerate():
    assert lifted_spectrum_arctan(-2.0, 0.0, 5).values == (-2.0,)

    with pytest.raises(DomainError):
        lifted_spectrum_arctan(1.0, -1.0, 5)


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_field_ignores_root_signs(spec, rng):
    cham = chamber(spec)
    arrays = root_arrays(cham)
    flipped = dataclasses.replace(arrays, vectors=-arrays.vectors)

    for point in cham.sample(10, rng):
        field = arrays.field(point)
        scale = max(1.0, float(np.linalg.norm(field)))

        assert np.max(np.abs(flipped.field(point) - field)) <= 1e-14 * scale
        assert abs(flipped.potential(point) - arrays.potential(point)) <= 1e-14 * max(1.0, abs(arrays.potential(point)))


@pytest.mark.parametrize("name", ["SO4SO4-SO8-U4", "rho3-SO8-U4"])
def test_witness_rows_restore_orientation(name, rng):
    spec = get(name)
    negated = dataclasses.replace(spec, roots=tuple(root.negated() for root in spec.roots))
    cham, other = chamber(spec), chamber(negated)

    for point in cham.sample(10, rng):
        assert other.contains(point)

        field = vector_field_X(cham, point)
        scale = max(1.0, float(np.linalg.norm(field)))
        assert np.max(np.abs(vector_field_X(other, point) - field)) <= 1e-14 * scale


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_lift_translates_the_potential(spec, rng):
    cham = chamber(spec)
    base = np.asarray(cham.reference_point)
    family = lift_family(cham, base)
    origin = lifted_potential(family, np.zeros(2))

    for _ in range(10):
        direction = rng.normal(size=2)
        w = 0.5 * cham.radius * rng.random() * direction / np.linalg.norm(direction)

        field = vector_field_X(cham, base + w)
        scale = max(1.0, float(np.linalg.norm(field)))
        assert np.max(np.abs(lift_mean_curvature(family, w) - field)) <= 1e-10 * scale

        shift = lifted_potential(family, w) - origin
        assert math.isclose(
            shift,
            potential_rho(cham, base + w) - potential_rho(cham, base),
            rel_tol=1e-10,
            abs_tol=1e-10,
        )


def test_regularized_trace_error_is_first_order(rho1):
    family = lift_family(rho1, (0.4, 0.1))
    v = np.array([0.6, 0.8])
    truncations = [10, 100, 1000, 10000]
    errors = [regularized_trace(family, (0.0, 0.0), v, J).error for J in truncations]

    slope = np.polyfit(np.log(truncations), np.log(errors), 1)[0]
    assert -1.15 < slope < -0.85
    assert math.isclose(errors[-1] * truncations[-1], errors[-2] * truncations[-2], rel_tol=0.05)


def test_arctan_spectrum_large_eigenvalue():
    ratios = [lifted_spectrum_arctan(lam, 1.0, 10).sup_norm / lam for lam in (10.0, 1e3, 1e6)]

    assert all(ratio > 1 for ratio in ratios)
    assert ratios[0] > ratios[1] > ratios[2]
    assert abs(ratios[-1] - 1) < 1e-9
    assert math.isclose(ratios[1], 1 + 1 / 3e6, rel_tol=1e-9)
