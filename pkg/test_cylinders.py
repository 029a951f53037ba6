import random

import pytest

from cylinders import (A3Verdict, ChartDisjointError, ChartKind, NewtonPolygon, NotQuasiSmoothMemberError,
                       UNKNOWN, UnsupportedFamilyError, a2_cylinder, all_of, analyze_chart, contains_a3,
                       count_interior_points, curve_report, hyperbolic_split, is_affine_line, newton_genus,
                       places_at_infinity)
from exactalg import parse_poly
from famenum import family_by_number, instantiate, spade_families
from wps import CyclicQuotient, WeightSystem

PLANE = (("u", 1), ("v", 1))
GRAPH_CHARTS = {104: "x", 105: "t", 111: "z", 113: "y", 118: "y", 119: "x", 123: "x", 126: "x"}


def plane(text):
    return parse_poly(text, PLANE)


def default_member(no):
    record = family_by_number(no)
    return record.ws, instantiate(record)


def test_graph_chart():
    ws, F = default_member(105)
    analysis = analyze_chart(ws, F, "t")
    assert analysis.kind == ChartKind.GRAPH_A3
    assert analysis.eliminated == "w"
    assert analysis.coordinates == ("x", "y", "z")


def test_quotient_chart_of_no_127():
    ws, F = default_member(127)
    analysis = analyze_chart(ws, F, "w")
    assert analysis.kind == ChartKind.QUOTIENT
    assert analysis.quotient == CyclicQuotient(7, [2, 3, 4])
    coordinates, form = analysis.unit_weight_form()
    assert form.weights == (1, 5, 2)
    assert coordinates == ("x", "y", "z")
    assert form.is_equivalent(analysis.quotient)


def test_quotient_chart_of_no_114():
    ws, F = default_member(114)
    analysis = analyze_chart(ws, F, "w")
    assert analysis.eliminated == "z"
    assert str(analysis.quotient) == "1/4(1,1,3)"


def test_hypersurface_chart():
    ws, F = default_member(130)
    analysis = analyze_chart(ws, F, "x")
    assert analysis.kind == ChartKind.HYPERSURFACE
    assert analysis.unit_weight_form() is None
    assert analysis.residual == parse_poly("z*w + t^2 + y^3 + 1", ws.variables())


def test_disjoint_chart():
    ws = WeightSystem((1, 1, 1, 1, 1), 2)
    with pytest.raises(ChartDisjointError):
        analyze_chart(ws, parse_poly("x^2", ws.variables()), "x")


def test_every_default_has_an_a2_cylinder():
    for record in spade_families():
        witness = a2_cylinder(record.ws, instantiate(record))
        assert witness is not None, record
        assert witness.quotient.order == 1 or witness.quotient.weights[0] == 1


@pytest.mark.parametrize("no,chart,quotient", [(130, "z", "1/5(3,4,1)"), (120, "y", "1/2(1,1,1)")])
def test_a2_cylinder_witness(no, chart, quotient):
    ws, F = default_member(no)
    witness = a2_cylinder(ws, F)
    assert witness.chart.name == chart
    assert str(witness.chart.quotient) == quotient


def test_a2_cylinder_base_coordinates():
    ws, F = default_member(130)
    witness = a2_cylinder(ws, F)
    assert witness.coordinates == ("x", "y", "t")
    assert witness.quotient.weights == (1, 3, 2)
    assert witness.hyperplane == "V_+(x)"
    assert witness.base_coordinates() == ["y/x^3", "t/x^2"]


def test_a3_column():
    for record in spade_families():
        report = contains_a3(record.ws, instantiate(record))
        assert report.a3 != A3Verdict.UNKNOWN, (record, report.reason)
        assert (report.a3 == A3Verdict.YES) == record.expected.contains_a3, record


def test_a3_graph_witnesses():
    for no, chart in GRAPH_CHARTS.items():
        ws, F = default_member(no)
        report = contains_a3(ws, F)
        assert report.a3 == A3Verdict.YES
        assert report.a3_chart == chart


def test_a3_obstructions_by_weight():
    for no in (127, 129, 130):
        ws, F = default_member(no)
        report = contains_a3(ws, F)
        assert report.a3 == A3Verdict.NO
        assert "a_0 = {}".format(ws.weights[0]) in report.reason
        assert report.curves == []


def test_a3_obstructions_by_curve_genus():
    for record in spade_families():
        if record.expected.contains_a3 or record.ws.weights[0] > 1:
            continue
        report = contains_a3(record.ws, instantiate(record))
        assert report.curves, record
        assert all(curve.genus == record.expected.curve_genus for curve in report.curves), record
        assert all(curve.is_affine_line is False for curve in report.curves), record


@pytest.mark.parametrize("no,genus", [(106, 3), (112, 4), (114, 2), (115, 1), (125, 3)])
def test_residual_curve_genera(no, genus):
    ws, F = default_member(no)
    assert contains_a3(ws, F).curves[0].genus == genus


def test_no_120_is_blocked_by_two_places():
    ws, F = default_member(120)
    curve = contains_a3(ws, F).curves[0]
    assert curve.genus == 0
    assert curve.places_at_infinity == 2


def test_hyperbolic_split():
    ws, F = default_member(120)
    s, t, f, pair = hyperbolic_split(F, "x")
    assert (s, t, pair) == ("y", "w", ("z", "t"))
    assert f == parse_poly("z*t + 1", ws.variables())
    ws, F = default_member(130)
    assert hyperbolic_split(F, "x") is None


def test_newton_genus_examples():
    assert newton_genus(plane("v^2 + u^6 + 1")) == 2
    assert newton_genus(plane("1 + u^4 + v^4")) == 3
    assert newton_genus(plane("v^3 + u^4*v + u^6 + 1")) == 4
    assert newton_genus(plane("u + v + 1")) == 0
    assert newton_genus(plane("u - v^2")) == 0


def test_newton_genus_refuses_degenerate_sides():
    assert newton_genus(plane("u^2 + 2*u*v + v^2 + 1")) == UNKNOWN


def test_pick_agrees_with_enumeration():
    rng = random.Random(3)
    for _ in range(300):
        points = [(rng.randint(0, 12), rng.randint(0, 12)) for _ in range(rng.randint(1, 7))]
        polygon = NewtonPolygon(points)
        assert polygon.interior_points() == count_interior_points(polygon.vertices())


def test_newton_polygon_drops_interior_and_collinear_points():
    polygon = NewtonPolygon([(1, 1), (2, 0), (0, 0), (0, 2), (2, 2), (1, 0), (0, 1)])
    assert polygon.vertices() == [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert (polygon.twice_area(), polygon.boundary_points(), polygon.interior_points()) == (8, 8, 1)
    assert NewtonPolygon([(3, 1), (3, 1)]).vertices() == [(3, 1)]


def test_newton_polygon_of_a_segment():
    polygon = NewtonPolygon([(0, 0), (2, 2), (1, 1)])
    assert polygon.vertices() == [(0, 0), (2, 2)]
    assert len(polygon.sides()) == 2
    assert polygon.interior_points() == 0


@pytest.mark.parametrize("text,places", [("u*v + 1", 2), ("u", 1), ("u + v^2", 1), ("v^2 + u^4 + 1", 2),
                                         ("u^2 + v^2 + 1", 2)])
def test_places_at_infinity(text, places):
    assert places_at_infinity(plane(text)) == places


@pytest.mark.parametrize("text,expected", [("u", True), ("u - v^2", True), ("u*v + 1", False),
                                           ("v^2 + u^6 + 1", False), ("v^2 - u^2*(u + 1)", False),
                                           ("u*v", False), ("u^2", False)])
def test_is_affine_line(text, expected):
    assert is_affine_line(plane(text)) is expected


def test_affine_lines_have_genus_zero_and_one_place():
    for text in ("u", "u - v^2", "v - u^3 + 2*u", "u + v"):
        report = curve_report(plane(text))
        assert report.is_affine_line is True
        assert report.genus == 0 and report.places_at_infinity == 1


def test_all_of():
    assert all_of([True, True]) is True
    assert all_of([True, UNKNOWN]) == UNKNOWN
    assert all_of([UNKNOWN, False]) is False


def test_unsupported_family():
    ws = WeightSystem((1, 1, 1, 1, 1), 3)
    with pytest.raises(UnsupportedFamilyError):
        contains_a3(ws, parse_poly("x^3 + y^3 + z^3 + t^3 + w^3", ws.variables()))


def test_singular_member():
    record = family_by_number(112)
    F = instantiate(record, poly="t*w + x^6 + y^6")
    with pytest.raises(NotQuasiSmoothMemberError):
        contains_a3(record.ws, F)
