import math

import numpy as np
import pytest

from chamberflow.rootsys import (
    ConstraintKind,
    catalog,
    chamber,
    facets,
    get,
    instantiated,
    load_catalog,
    locate,
    names,
    strata,
    vertices,
)
from chamberflow.rootsys.expr import Expression
from chamberflow.types import CatalogError, DomainError

from conftest import APEX, RHO1


def test_catalog_has_every_row():
    rows = catalog()
    assert len(rows) == 35
    assert len(set(names())) == 35
    assert all(spec.rank == 2 for spec in rows)


def test_lookup_by_label(rho1):
    assert get(rho1.label) is rho1


def test_unknown_row():
    with pytest.raises(CatalogError):
        get("no-such-row")


def test_concrete_row_takes_no_params():
    with pytest.raises(CatalogError):
        get(RHO1, q=3)


def test_rho1_constraints(rho1_chamber):
    kinds = [(c.label, c.kind) for c in rho1_chamber.constraints]
    assert kinds == [
        ("alpha", ConstraintKind.V_LOWER),
        ("alpha", ConstraintKind.V_UPPER),
        ("beta", ConstraintKind.H_LOWER),
        ("beta", ConstraintKind.H_UPPER),
        ("alpha+beta", ConstraintKind.H_LOWER),
        ("alpha+beta", ConstraintKind.H_UPPER),
    ]
    assert np.allclose(rho1_chamber.A[0], [-2, 0])
    assert rho1_chamber.b[0] == 0
    assert math.isclose(rho1_chamber.b[2], math.pi / 2)


def test_rho1_faces(rho1_chamber):
    assert len(facets(rho1_chamber)) == 3
    assert len(vertices(rho1_chamber)) == 3
    assert len(strata(rho1_chamber)) == 6

    corners = sorted(tuple(np.round(v.affine_point, 12)) for v in vertices(rho1_chamber))
    expected = sorted(
        tuple(np.round(p, 12)) for p in [(0, APEX[1]), (0, -APEX[1]), (math.pi / 2, 0)]
    )
    assert corners == expected


def test_vertex_tight_set(rho1_chamber):
    stratum = locate(rho1_chamber, APEX)
    assert stratum.is_vertex
    assert stratum.active == {
        (0, ConstraintKind.V_LOWER.value),
        (1, ConstraintKind.H_UPPER.value),
        (2, ConstraintKind.H_UPPER.value),
    }


def test_locate(rho1_chamber):
    assert locate(rho1_chamber, (0.3, 0.1)).is_interior

    facet = locate(rho1_chamber, (0.0, 0.3))
    assert facet.dim == 1
    assert [c.kind for c in facet.active_constraints] == [ConstraintKind.V_LOWER]

    with pytest.raises(DomainError):
        locate(rho1_chamber, (-0.1, 0.0))


def test_require_interior_reports_the_wall(rho1_chamber):
    with pytest.raises(DomainError) as error:
        rho1_chamber.require_interior((0.0, 0.1))

    assert error.value.constraint.kind == ConstraintKind.V_LOWER
    assert error.value.margin == 0


def test_reference_point_inside(rho1_chamber):
    assert rho1_chamber.contains(rho1_chamber.reference_point)
    assert rho1_chamber.radius > 0


def test_sample_keeps_margin(rho1_chamber, rng):
    points = rho1_chamber.sample(50, rng, margin=0.05)
    assert points.shape == (50, 2)
    assert all(rho1_chamber.min_margin(p) >= 0.05 for p in points)


def test_parametrized_row_at_given_params():
    spec = get("SOj1SOqj1-SOq2-SO2SOq", q=4, j=2)
    multiplicities = {root.label: (root.m_V, root.m_H) for root in spec.roots}
    assert multiplicities == {
        "alpha": (1, 1),
        "beta": (0, 1),
        "alpha+beta": (1, 1),
        "2*alpha+beta": (0, 1),
    }


def test_negative_multiplicity_rejected():
    with pytest.raises(CatalogError):
        get("Spj1Spqj1-Spq2-Sp2Spq", q=3, j=1)


def test_unknown_param_rejected():
    with pytest.raises(CatalogError):
        get("SOj1SOqj1-SOq2-SO2SOq", r=2)


def test_witness_is_inside():
    for spec in instantiated():
        if spec.witness is not None:
            assert chamber(spec).contains(spec.witness), spec.name


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_every_chamber_is_bounded(spec):
    cham = chamber(spec)
    assert cham.radius > 0
    assert cham.contains(cham.reference_point)
    assert len(vertices(cham)) >= 3


@pytest.mark.parametrize("spec", instantiated(), ids=lambda spec: spec.name)
def test_face_lattice(spec):
    cham = chamber(spec)
    faces, edges, corners = strata(cham), facets(cham), vertices(cham)

    assert len({stratum.indices for stratum in faces}) == len(faces)
    assert sorted(map(id, edges + corners)) == sorted(map(id, faces))
    assert len(edges) == len(corners)

    for stratum in faces:
        assert locate(cham, stratum.affine_point).indices == stratum.indices

    for edge in edges:
        ends = [corner for corner in corners if edge.indices <= corner.indices]
        assert len(ends) == 2

        middle = (ends[0].affine_point + ends[1].affine_point) / 2
        assert locate(cham, middle).indices == edge.indices

    for corner in corners:
        assert sum(edge.indices <= corner.indices for edge in edges) == 2

    assert locate(cham, cham.reference_point).is_interior


def test_expression_integer():
    assert Expression("4*q-2*j-4").integer(q=4, j=1) == 10
    assert Expression(0).integer() == 0
    assert Expression("q/2").integer(q=6) == 3
    assert math.isclose(Expression("sqrt(3)").real(), math.sqrt(3))

    with pytest.raises(CatalogError):
        Expression("q/2").integer(q=3)

    with pytest.raises(CatalogError):
        Expression("2*q-j").integer(q=3)


def test_expression_root_label():
    label = Expression("2*alpha+beta")
    assert label.names == {"alpha", "beta"}

    vector = label(alpha=np.array([2.0, 0.0]), beta=np.array([-1.0, math.sqrt(3)]))
    assert np.allclose(vector, [3.0, math.sqrt(3)])


def test_expression_closed_form():
    component = Expression("tan(x1+s*x2) - 2*cot(2*x1) + tan(x1-s*x2)")
    assert component.names == {"x1", "x2"}
    assert math.isclose(component.real(x1=math.pi / 4, x2=0.0), 2.0)
    assert abs(component.real(x1=math.pi / 6, x2=0.0)) < 1e-14


@pytest.mark.parametrize("text", ["open(x)", "True", "2*", "'q'"])
def test_expression_rejects(text):
    with pytest.raises(CatalogError):
        Expression(text)


def test_load_catalog_from_mapping():
    rows = load_catalog(
        {
            "cartan": {"a2": {"alpha": ["2", "0"], "beta": ["-1", "sqrt(3)"]}},
            "rows": [
                {
                    "name": "tiny",
                    "label": "tiny",
                    "cartan": "a2",
                    "roots": {"alpha": {"V": 1}, "beta": {"H": 2}},
                }
            ],
        }
    )
    assert [spec.name for spec in rows] == ["tiny"]
    assert rows[0].root("beta").m_H == 2
