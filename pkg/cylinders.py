"""
Cylinders in the cylindrical hypersurfaces X = (F = 0) in P(a_0, ..., a_4).

A chart D_+(x_j) in which F is linear in some x_m with constant coefficient
is the quotient of affine 3-space by mu_{a_j}; when one of the residual
weights is a unit mod a_j the quotient contains A^2 x (A^1 - {o}). Whether X
contains A^3 is read off the charts of weight one: there X - V_+(x) is
st + f(u, v) = 0 in A^4, which is A^3 exactly when f = 0 is a coordinate line
of the plane.
"""

import logging
from math import gcd

from sympy.geometry import Point, Segment
from sympy.geometry import convex_hull as hull_of_points
from sympy.polys.domains import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring as polynomial_ring

from exactalg import QPoly, is_squarefree_binary
from famenum import family_by_weights
from quasismooth import DEFAULT_SEED, member_quasismooth
from wps import CyclicQuotient

logger = logging.getLogger(__name__)

UNKNOWN = "UNKNOWN"
RATIONAL_POINT_SEARCH = 4


class ChartKind:
    GRAPH_A3 = "GRAPH_A3"
    QUOTIENT = "QUOTIENT"
    HYPERSURFACE = "HYPERSURFACE"


class A3Verdict:
    YES = "YES"
    NO = "NO"
    UNKNOWN = UNKNOWN


class CylinderError(Exception):
    pass


class ChartDisjointError(CylinderError):
    pass


class NotPlaneCurveError(CylinderError):
    pass


class UnsupportedFamilyError(CylinderError):
    pass


class NotQuasiSmoothMemberError(CylinderError):
    pass


def all_of(values):
    """Three-valued conjunction: False wins over UNKNOWN, UNKNOWN over True."""
    values = list(values)
    if any(value is False for value in values):
        return False
    if any(value == UNKNOWN for value in values):
        return UNKNOWN
    return True


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Vertices of the convex hull, counterclockwise from the least point, without collinear points."""
    hull = hull_of_points(*(Point(p) for p in set(tuple(p) for p in points)))
    if isinstance(hull, Point):
        vertices = [hull]
    elif isinstance(hull, Segment):
        vertices = sorted(hull.points, key=lambda p: p.args)
    else:
        vertices = hull.vertices
    return [(int(p.x), int(p.y)) for p in vertices]


def count_interior_points(vertices):
    """Lattice points strictly inside a counterclockwise convex polygon, by enumeration."""
    if len(vertices) < 3:
        return 0
    sides = list(zip(vertices, vertices[1:] + vertices[:1]))
    xs = [p[0] for p in vertices]
    ys = [p[1] for p in vertices]
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(_cross(a, b, (x, y)) > 0 for a, b in sides):
                count += 1
    return count


class NewtonPolygon:
    """
    The Newton polygon of a plane curve, given by the exponent vectors of its
    monomials. A polygon with two vertices is a segment and has two sides,
    one for each orientation.
    """

    def __init__(self, points):
        points = [tuple(p) for p in points]
        if not points:
            raise NotPlaneCurveError("The Newton polygon of the zero polynomial is empty.")
        self._vertices = convex_hull(points)

    def vertices(self):
        return list(self._vertices)

    def sides(self):
        v = self._vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            return [(v[0], v[1]), (v[1], v[0])]
        return list(zip(v, v[1:] + v[:1]))

    def twice_area(self):
        v = self._vertices
        if len(v) < 3:
            return 0
        return abs(sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(v, v[1:] + v[:1])))

    def boundary_points(self):
        v = self._vertices
        if len(v) == 1:
            return 1
        if len(v) == 2:
            return lattice_length(v[0], v[1]) + 1
        return sum(lattice_length(p, q) for p, q in self.sides())

    def interior_points(self):
        """Pick's formula."""
        if len(self._vertices) < 3:
            return 0
        return (self.twice_area() - self.boundary_points() + 2) // 2

    def __str__(self):
        return "Newton polygon with vertices {}".format(self._vertices)

    __repr__ = __str__


def lattice_length(p, q):
    return gcd(abs(q[0] - p[0]), abs(q[1] - p[1]))


def faces_infinity(side):
    """True when the outward normal of the side has a positive coordinate."""
    (px, py), (qx, qy) = side
    return max(qy - py, px - qx) > 0


_EDGE_RING, _ = polynomial_ring("s", QQ)


def edge_polynomial(terms, side):
    """Coefficients along a side as a polynomial in s, from the first endpoint."""
    p, q = side
    g = lattice_length(p, q)
    step = ((q[0] - p[0]) // g, (q[1] - p[1]) // g)
    coefficients = {}
    for k in range(g + 1):
        c = terms.get((p[0] + k * step[0], p[1] + k * step[1]))
        if c:
            coefficients[(k,)] = c
    return _EDGE_RING.from_dict(coefficients)


def is_squarefree_univariate(e):
    return e.gcd(e.diff(_EDGE_RING.gens[0])).is_ground


class PlaneCurve:
    """f(u, v) = 0 in the affine plane, taken from a QPoly in at most two of its variables."""

    def __init__(self, f, pair=None):
        used = sorted(f.support())
        if f.is_zero() or not used:
            raise NotPlaneCurveError("{} does not define a curve.".format(f))
        if pair is None:
            if len(used) > 2:
                raise NotPlaneCurveError("{} involves more than two variables.".format(f))
            if len(used) == 1:
                used.append(next(k for k in range(len(f.variables)) if k != used[0]))
            pair = tuple(sorted(used))
        else:
            pair = tuple(f.index(k) for k in pair)
            if not set(used) <= set(pair):
                raise NotPlaneCurveError("{} is not a polynomial in {}.".format(
                    f, ", ".join(f.names[k] for k in pair)))
        self.poly = f
        self.pair = pair
        self.names = tuple(f.names[k] for k in pair)
        self.terms = {(monom[pair[0]], monom[pair[1]]): c for monom, c in f.terms().items()}
        self.ring, self.u, self.v = polynomial_ring(",".join(self.names), QQ, grevlex)
        self.element = self.ring.from_dict(self.terms)

    def degree(self):
        return max(a + b for a, b in self.terms)

    def newton_polygon(self):
        return NewtonPolygon(self.terms)

    def top_form(self):
        n = self.degree()
        binary = ((self.names[0], 1), (self.names[1], 1))
        return QPoly(binary, {monom: c for monom, c in self.terms.items() if sum(monom) == n})

    def side_is_nondegenerate(self, side):
        return is_squarefree_univariate(edge_polynomial(self.terms, side))

    def monomial_content(self):
        return min(a for a, _ in self.terms), min(b for _, b in self.terms)

    def _singular_ideal_is_unit(self, torus):
        names = self.names + ("aux",) if torus else self.names
        R = polynomial_ring(",".join(names), QQ, grevlex)[0]
        pad = (0,) if torus else ()
        f = R.from_dict({monom + pad: c for monom, c in self.terms.items()})
        system = [f, f.diff(R.gens[0]), f.diff(R.gens[1])]
        if torus:
            system.append(R.one - R.gens[0] * R.gens[1] * R.gens[2])
        return any(g.is_ground for g in groebner([g for g in system if g], R))

    def is_smooth(self):
        """No point of the affine plane where f and both partials vanish."""
        return self._singular_ideal_is_unit(torus=False)

    def is_torus_smooth(self):
        return self._singular_ideal_is_unit(torus=True)

    def is_squarefree(self):
        _, factors = self.element.sqf_list()
        return all(k == 1 for _, k in factors)

    def is_irreducible(self):
        _, factors = self.element.factor_list()
        return len(factors) == 1 and factors[0][1] == 1

    def has_smooth_rational_point(self):
        """A simple rational root of f(c, v) or f(u, c) for a small integer c."""
        for k, gen in enumerate((self.u, self.v)):
            for c in range(-RATIONAL_POINT_SEARCH, RATIONAL_POINT_SEARCH + 1):
                section = self.element.evaluate(gen, c)
                if section.is_ground:
                    continue
                _, factors = section.factor_list()
                if any(g.degree() == 1 and m == 1 for g, m in factors):
                    logger.debug("{}: smooth rational point with {} = {}".format(self, self.names[k], c))
                    return True
        return False

    def __str__(self):
        return "{} = 0".format(self.poly)

    __repr__ = __str__


def _curve(f, pair):
    return f if isinstance(f, PlaneCurve) else PlaneCurve(f, pair)


def newton_genus(f, pair=None):
    """Interior lattice points of the Newton polygon of f.

    This is the geometric genus of f = 0 when f is nondegenerate: every edge
    polynomial squarefree and the curve smooth on the torus. Otherwise UNKNOWN.
    """
    curve = _curve(f, pair)
    polygon = curve.newton_polygon()
    for side in polygon.sides():
        if not curve.side_is_nondegenerate(side):
            logger.debug("{}: degenerate side {}".format(curve, side))
            return UNKNOWN
    if not curve.is_torus_smooth():
        logger.debug("{}: singular on the torus".format(curve))
        return UNKNOWN
    return polygon.interior_points()


def places_at_infinity(f, pair=None):
    """Branches of the projective closure of f = 0 along the line at infinity.

    A squarefree top form gives one branch per root. Otherwise each axis
    dividing f contributes one branch, and the rest is counted on the sides
    of the Newton polygon facing infinity, provided their edge polynomials
    are squarefree.
    """
    curve = _curve(f, pair)
    if curve.degree() == 0:
        raise NotPlaneCurveError("{} is constant.".format(curve))
    if is_squarefree_binary(curve.top_form()):
        return curve.degree()
    a0, b0 = curve.monomial_content()
    places = (1 if a0 else 0) + (1 if b0 else 0)
    for side in curve.newton_polygon().sides():
        if not faces_infinity(side):
            continue
        p, q = side
        if not is_squarefree_univariate(edge_polynomial(curve.terms, side)):
            logger.debug("{}: degenerate side {} at infinity".format(curve, side))
            return UNKNOWN
        places += lattice_length(p, q)
    return places


def absolutely_irreducible(curve, places=None):
    """True, False or UNKNOWN.

    Irreducible over QQ and either a smooth rational point or a single place
    at infinity: a Galois orbit of two or more geometric components would
    have no rational smooth point and at least one place per component.
    """
    if not curve.is_irreducible():
        return False
    if curve.degree() == 1 or curve.has_smooth_rational_point():
        return True
    if places is None:
        places = places_at_infinity(curve)
    if places == 1:
        return True
    return UNKNOWN


class CurveReport:
    def __init__(self, curve, genus, places, smooth, squarefree, absolutely_irreducible):
        self.curve = curve
        self.newton_interior_points = genus
        self.places_at_infinity = places
        self.smooth = smooth
        self.squarefree = squarefree
        self.absolutely_irreducible = absolutely_irreducible

    @property
    def genus(self):
        return self.newton_interior_points

    @property
    def is_affine_line(self):
        genus_zero = UNKNOWN if self.genus == UNKNOWN else self.genus == 0
        one_place = UNKNOWN if self.places_at_infinity == UNKNOWN else self.places_at_infinity == 1
        return all_of([self.squarefree, self.absolutely_irreducible, self.smooth, genus_zero, one_place])

    def to_json(self):
        return {"curve": str(self.curve.poly), "variables": list(self.curve.names), "genus": self.genus,
                "places_at_infinity": self.places_at_infinity, "smooth": self.smooth,
                "squarefree": self.squarefree, "absolutely_irreducible": self.absolutely_irreducible,
                "affine_line": self.is_affine_line}

    def __str__(self):
        return "{}: genus {}, {} place(s) at infinity, {}".format(
            self.curve, self.genus, self.places_at_infinity, "smooth" if self.smooth else "singular")

    __repr__ = __str__


def curve_report(f, pair=None):
    curve = _curve(f, pair)
    places = places_at_infinity(curve)
    return CurveReport(curve, newton_genus(curve), places, curve.is_smooth(), curve.is_squarefree(),
                       absolutely_irreducible(curve, places))


def is_affine_line(f, pair=None):
    """Whether f = 0 is scheme-theoretically an affine line in the plane; True, False or UNKNOWN.

    Reduced, absolutely irreducible, smooth, of genus 0 and with one place at
    infinity; by Abhyankar-Moh-Suzuki such a curve is a coordinate line.
    """
    return curve_report(f, pair).is_affine_line


class ChartAnalysis:
    """X restricted to D_+(x_j)."""

    def __init__(self, index, name, kind, eliminated=None, quotient=None, coordinates=(), residual=None):
        self.index = index
        self.name = name
        self.kind = kind
        self.eliminated = eliminated
        self.quotient = quotient
        self.coordinates = tuple(coordinates)
        self.residual = residual

    def unit_weight_form(self):
        """(coordinates, quotient) reordered and rescaled so the first weight is 1, or None."""
        if self.kind == ChartKind.HYPERSURFACE:
            return None
        q = self.quotient
        if q.order == 1:
            return self.coordinates, q
        for k, w in enumerate(q.weights):
            if gcd(w, q.order) == 1:
                order = [k] + [i for i in range(len(q.weights)) if i != k]
                unit = pow(w, -1, q.order)
                return (tuple(self.coordinates[i] for i in order),
                        CyclicQuotient(q.order, [unit * q.weights[i] for i in order]))
        return None

    def to_json(self):
        data = {"chart": self.name, "kind": self.kind}
        if self.kind == ChartKind.HYPERSURFACE:
            data["residual"] = str(self.residual)
        else:
            data.update({"eliminated": self.eliminated, "coordinates": list(self.coordinates),
                         "quotient": str(self.quotient)})
        return data

    def __str__(self):
        if self.kind == ChartKind.GRAPH_A3:
            return "D_+({}) = A^3({})".format(self.name, ",".join(self.coordinates))
        if self.kind == ChartKind.QUOTIENT:
            q = self.quotient
            return "D_+({}) = A^3({}) // mu_{}({})".format(self.name, ",".join(self.coordinates), q.order,
                                                          ",".join(str(w) for w in q.weights))
        return "D_+({}): {} = 0".format(self.name, self.residual)

    __repr__ = __str__


def _eliminates(monom, j, m):
    return monom[m] == 1 and all(e == 0 for k, e in enumerate(monom) if k not in (j, m))


def analyze_chart(ws, F, j):
    j = F.index(j)
    names = F.names
    residual = F.set_variable(j, 1)
    if not residual.support():
        raise ChartDisjointError("X = ({} = 0) does not meet D_+({}).".format(F, names[j]))
    for m in sorted(range(5), key=lambda k: (-ws.weights[k], -k)):
        if m == j:
            continue
        occurrences = [monom for monom in F.terms() if monom[m]]
        if len(occurrences) == 1 and _eliminates(occurrences[0], j, m):
            others = [k for k in range(5) if k not in (j, m)]
            quotient = CyclicQuotient(ws.weights[j], [ws.weights[k] for k in others])
            kind = ChartKind.GRAPH_A3 if ws.weights[j] == 1 else ChartKind.QUOTIENT
            analysis = ChartAnalysis(j, names[j], kind, names[m], quotient, [names[k] for k in others])
            logger.debug("{}: {}".format(F, analysis))
            return analysis
    return ChartAnalysis(j, names[j], ChartKind.HYPERSURFACE, residual=residual)


class CylinderWitness:
    """An open subset A^2 x (A^1 - {o}) inside a quotient chart.

    In coordinates (x_1, x_2, x_3) with weights (1, b, c) mod d, the weighted
    blow-up with weights (1, b, c)/d at the origin is a P^1-bundle over
    P(1, b, c); away from H = V_+(x_1) it is trivial over the affine plane with
    coordinates x_2/x_1^b and x_3/x_1^c.
    """

    def __init__(self, chart, coordinates, quotient):
        self.chart = chart
        self.coordinates = coordinates
        self.quotient = quotient

    @property
    def hyperplane(self):
        return "V_+({})".format(self.coordinates[0])

    def blowup_weights(self):
        if self.quotient.order == 1:
            return (1, 0, 0)
        return self.quotient.weights

    def base_coordinates(self):
        first = self.coordinates[0]
        parts = []
        for name, w in zip(self.coordinates[1:], self.blowup_weights()[1:]):
            parts.append(name if w == 0 else "{}/{}".format(name, first if w == 1 else "{}^{}".format(first, w)))
        return parts

    def to_json(self):
        return {"chart": self.chart.name, "quotient": str(self.chart.quotient), "unit_coordinate": self.coordinates[0],
                "normal_form": str(self.quotient), "hyperplane": self.hyperplane,
                "base_coordinates": self.base_coordinates(), "statement": str(self)}

    def __str__(self):
        return "{} contains A^2({}) x (A^1 - {{o}}), the complement of {}".format(
            self.chart, ", ".join(self.base_coordinates()), self.hyperplane)

    __repr__ = __str__


class CylinderReport:
    def __init__(self, family_no, a2_cylinder, a3, reason, a3_chart=None, curves=()):
        self.family_no = family_no
        self.a2_cylinder = a2_cylinder
        self.a3 = a3
        self.reason = reason
        self.a3_chart = a3_chart
        self.curves = list(curves)

    def to_json(self):
        return {"family_no": self.family_no,
                "a2_cylinder": self.a2_cylinder.to_json() if self.a2_cylinder else None,
                "a3": self.a3, "a3_chart": self.a3_chart, "reason": self.reason,
                "curves": [report.to_json() for report in self.curves]}

    def __str__(self):
        lines = ["A2-cylinder: {}".format(self.a2_cylinder or UNKNOWN),
                 "A3: {} ({})".format(self.a3, self.reason)]
        lines.extend("  {}".format(report) for report in self.curves)
        return "\n".join(lines)


def _check_member(ws, F, seed):
    record = family_by_weights(ws)
    if record is None:
        raise UnsupportedFamilyError("{} is not one of the cylindrical families.".format(ws))
    verdict = member_quasismooth(ws, F, seed=seed)
    if not verdict.is_quasi_smooth:
        raise NotQuasiSmoothMemberError("{} is not a quasi-smooth member: {}.".format(F, verdict))
    return record


def _charts(ws, F):
    for j in range(5):
        try:
            yield analyze_chart(ws, F, j)
        except ChartDisjointError:
            continue


def find_a2_cylinder(ws, F):
    """The first chart, by weight, whose quotient has a unit weight; None if there is none."""
    for analysis in _charts(ws, F):
        form = analysis.unit_weight_form()
        if form is not None:
            return CylinderWitness(analysis, *form)
    return None


def a2_cylinder(ws, F, seed=DEFAULT_SEED):
    _check_member(ws, F, seed)
    witness = find_a2_cylinder(ws, F)
    if witness is None:
        logger.warning("{}: no chart is a quotient of A^3 with a unit weight".format(F))
    return witness


def hyperbolic_split(F, j):
    """Writes F(x_j = 1) as c*(s*t + f(u, v)) with s, t absent from f.

    Returns (s, t, f, (u, v)) by name, or None. Only a coordinate of weight one has the
    affine 4-space as its chart, so any other coordinate gives None.
    """
    j = F.index(j)
    if F.weights[j] != 1:
        return None
    g = F.set_variable(j, 1)
    others = [k for k in range(5) if k != j]
    terms = g.terms()
    for a in others:
        for b in others:
            if b <= a:
                continue
            monom = tuple(1 if k in (a, b) else 0 for k in range(5))
            c = terms.get(monom)
            if not c:
                continue
            if any(m != monom and (m[a] or m[b]) for m in terms):
                continue
            u, v = [k for k in others if k not in (a, b)]
            f = (g - QPoly(g.variables, {monom: c})) * (1 / c)
            return F.names[a], F.names[b], f, (F.names[u], F.names[v])
    return None


def contains_a3(ws, F, seed=DEFAULT_SEED):
    record = _check_member(ws, F, seed)
    witness = find_a2_cylinder(ws, F)
    names = F.names
    if ws.weights[0] > 1:
        reason = ("no coordinate has degree one (a_0 = {}), while the complement of an affine 3-space in X "
                  "is cut out by a section of degree one".format(ws.weights[0]))
        return CylinderReport(record.family_no, witness, A3Verdict.NO, reason)

    degree_one = [j for j in range(5) if ws.weights[j] == 1]
    for j in degree_one:
        analysis = analyze_chart(ws, F, j)
        if analysis.kind == ChartKind.GRAPH_A3:
            reason = "{} is the graph of {} over affine 3-space".format(analysis, analysis.eliminated)
            return CylinderReport(record.family_no, witness, A3Verdict.YES, reason, analysis.name)

    curves = []
    undecided = []
    for j in degree_one:
        split = hyperbolic_split(F, j)
        if split is None or not split[2].support():
            undecided.append(names[j])
            continue
        s, t, f, pair = split
        report = curve_report(f, pair)
        curves.append(report)
        logger.debug("X - V_+({}): {}*{} + ({}) = 0; {}".format(names[j], s, t, f, report))
        line = report.is_affine_line
        if line is True:
            reason = "X - V_+({}) is {}*{} + f = 0 with f = 0 a coordinate line".format(names[j], s, t)
            return CylinderReport(record.family_no, witness, A3Verdict.YES, reason, names[j], curves)
        if line == UNKNOWN:
            undecided.append(names[j])
    if undecided or not curves:
        reason = "could not decide the complements of V_+({})".format(", ".join(undecided))
        return CylinderReport(record.family_no, witness, A3Verdict.UNKNOWN, reason, curves=curves)
    reason = ("for each coordinate x of degree one, X - V_+(x) is st + f = 0 and f = 0 is not an affine line; "
              "other sections of degree one reduce to these by a change of coordinates")
    return CylinderReport(record.family_no, witness, A3Verdict.NO, reason, curves=curves)
