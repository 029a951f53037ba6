"""
Automorphism groups of the cylindrical hypersurfaces X = (F = 0) in
P(a_0, ..., a_4) given in projection normal form F = x_i*x_4 + f.

The connected component comes from graded derivations v with v(F) = c*F,
a linear problem solved exactly over QQ. The component group is assembled
from a table-driven shape: the torsion of the exponent lattice of f, the
involution swapping x_i and x_4 when they have equal weight, permutations
of equal-weight variables, and stabilizers in PGL_2 of binary forms
computed numerically from their roots.
"""

import logging
from itertools import combinations, permutations

import mpmath
import numpy
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from exactalg import QPoly, monomials_of_degree, partial_derivative, substitute
from famenum import family_by_weights
from intlattice import AbelianGroup, quotient_group
from quasismooth import DEFAULT_SEED, member_quasismooth

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-9
DEFAULT_PRECISION = 60


class AutomorphismError(Exception):
    pass


class NoPivotError(AutomorphismError):
    pass


class DegenerateCurveError(AutomorphismError):
    pass


class UnsupportedFamilyError(AutomorphismError):
    pass


class NotQuasiSmoothMemberError(AutomorphismError):
    pass


class NotSquarefreeError(AutomorphismError):
    pass


class RootClusteringError(AutomorphismError):
    pass


class InfiniteStabilizerError(AutomorphismError):
    pass


class ProjectionData:
    """F = x_pivot*x_4 + f, with f free of x_4, after scaling the pivot monomial to 1."""

    def __init__(self, ws, F, pivot, f):
        self.ws = ws
        self.F = F
        self.pivot = pivot
        self.f = f
        self.swap_case = ws.weights[pivot] == ws.weights[4]

    @property
    def pivot_name(self):
        return self.F.names[self.pivot]

    def quotient_weights(self):
        return self.ws.weights[:4]

    def __str__(self):
        return "{}*{} + ({})".format(self.pivot_name, self.F.names[4], self.f)


def project(ws, F):
    if ws.degree > 2 * ws.weights[4]:
        raise NoPivotError("Degree {} exceeds twice the top weight of {}.".format(ws.degree, ws))
    pivot = None
    for i in range(3, -1, -1):
        if ws.weights[i] + ws.weights[4] != ws.degree:
            continue
        monom = tuple(1 if k in (i, 4) else 0 for k in range(5))
        if F.coefficient(monom):
            pivot = i
            break
    if pivot is None:
        raise NoPivotError("{} has no monomial x_i*{} of degree {}.".format(F, F.names[4], ws.degree))
    monom = tuple(1 if k in (pivot, 4) else 0 for k in range(5))
    F = F * (1 / F.coefficient(monom))
    f = F - QPoly.gen(F.variables, pivot) * QPoly.gen(F.variables, 4)
    if 4 in f.support():
        raise NoPivotError("{} is not in projection normal form: {} appears outside {}*{}.".format(
            F, F.names[4], F.names[pivot], F.names[4]))
    logger.debug("Projection of {}: pivot {}".format(F, F.names[pivot]))
    return ProjectionData(ws, F, pivot, f)


class Derivation:
    """v = sum_j g_j d/dx_j with g_j of weighted degree a_j, and v(F) = scalar*F."""

    def __init__(self, components, scalar=QQ.zero):
        self.components = tuple(components)
        self.scalar = scalar

    @property
    def variables(self):
        return self.components[0].variables

    def apply(self, p):
        result = QPoly(p.variables)
        for k, g in enumerate(self.components):
            if g:
                result = result + g * partial_derivative(p, k)
        return result

    def bracket(self, other):
        return Derivation([self.apply(b) - other.apply(a) for a, b in zip(self.components, other.components)])

    def is_zero(self):
        return all(g.is_zero() for g in self.components)

    def is_diagonal(self):
        for j, g in enumerate(self.components):
            unit = tuple(1 if k == j else 0 for k in range(len(self.components)))
            if any(monom != unit for monom in g.terms()):
                return False
        return True

    def coordinates(self, keys):
        return [self.components[j].coefficient(monom) for j, monom in keys]

    def __str__(self):
        names = [name for name, _ in self.variables]
        parts = ["({})*d{}".format(g, name) for g, name in zip(self.components, names) if g]
        return " + ".join(parts) or "0"

    __repr__ = __str__


def euler_derivation(ws, variables):
    return Derivation([QPoly.gen(variables, j) * a for j, a in enumerate(ws.weights)], QQ(ws.degree))


def _unknowns(ws, diagonal_only=False):
    keys = []
    for j, a in enumerate(ws.weights):
        for monom in monomials_of_degree(ws.weights, a):
            if not diagonal_only or monom == tuple(1 if k == j else 0 for k in range(5)):
                keys.append((j, monom))
    return keys


def _nullspace(rows, ncols):
    if not rows:
        return [[QQ.one if i == k else QQ.zero for i in range(ncols)] for k in range(ncols)]
    matrix = DomainMatrix([list(row) for row in rows], (len(rows), ncols), QQ)
    return matrix.nullspace().to_list()


def _row_basis(vectors, ncols):
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    matrix = DomainMatrix([list(v) for v in vectors], (len(vectors), ncols), QQ)
    reduced, pivots = matrix.rref()
    return reduced.to_list()[:len(pivots)]


def _solve(ws, F, keys):
    """Basis of {(g, c) : sum_j g_j dF/dx_j = c*F} over the unknowns `keys`."""
    partials = [partial_derivative(F, j) for j in range(5)]
    columns = []
    for j, monom in keys:
        columns.append((QPoly(F.variables, {monom: QQ.one}) * partials[j]).terms())
    columns.append((-F).terms())
    targets = sorted({monom for column in columns for monom in column})
    rows = [[column.get(target, QQ.zero) for column in columns] for target in targets]
    basis = []
    for vector in _nullspace(rows, len(columns)):
        components = [QPoly(F.variables) for _ in range(5)]
        for (j, monom), value in zip(keys, vector):
            if value:
                components[j] = components[j] + QPoly(F.variables, {monom: value})
        basis.append(Derivation(components, vector[-1]))
    return basis


def derivation_space(ws, F):
    """A basis of the graded derivations preserving F up to a scalar; the Euler derivation is in its span."""
    basis = _solve(ws, F, _unknowns(ws))
    logger.debug("{}: derivation space of dimension {}".format(F, len(basis)))
    return basis


def torus_derivations(ws, F):
    return _solve(ws, F, _unknowns(ws, diagonal_only=True))


def span_contains(basis, vectors, keys):
    base = _row_basis([d.coordinates(keys) for d in basis], len(keys))
    extended = _row_basis(base + [v.coordinates(keys) for v in vectors], len(keys))
    return len(extended) == len(base)


def derived_series(basis, keys):
    """Dimensions of the derived series L, [L, L], ... until it stabilises."""
    current = _row_basis([d.coordinates(keys) for d in basis], len(keys))
    dims = [len(current)]
    elements = [d for d in basis]
    while True:
        brackets = [a.bracket(b) for a, b in combinations(elements, 2)]
        vectors = _row_basis([d.coordinates(keys) for d in brackets], len(keys))
        dims.append(len(vectors))
        if len(vectors) == 0 or len(vectors) == dims[-2]:
            return dims
        elements = _from_coordinates(vectors, keys, basis[0].variables)


def _from_coordinates(vectors, keys, variables):
    result = []
    for vector in vectors:
        components = [QPoly(variables) for _ in range(5)]
        for (j, monom), value in zip(keys, vector):
            if value:
                components[j] = components[j] + QPoly(variables, {monom: value})
        result.append(Derivation(components))
    return result


class ConnectedStructure:
    def __init__(self, dim_aut, unipotent_dim, torus_rank, nonsolvable, semidirect_nontrivial, reductive):
        self.dim_aut = dim_aut
        self.unipotent_dim = unipotent_dim
        self.torus_rank = torus_rank
        self.nonsolvable = nonsolvable
        self.semidirect_nontrivial = semidirect_nontrivial
        self.reductive = reductive

    def __str__(self):
        if self.nonsolvable:
            return "non-solvable of dimension {}".format(self.dim_aut)
        join = " x| " if self.semidirect_nontrivial else " x "
        parts = []
        if self.unipotent_dim:
            parts.append("G_a^{}".format(self.unipotent_dim))
        if self.torus_rank:
            parts.append("G_m^{}".format(self.torus_rank))
        return join.join(parts) or "1"


def connected_structure(ws, F):
    keys = _unknowns(ws)
    basis = derivation_space(ws, F)
    dim_aut = len(basis) - 1
    torus = torus_derivations(ws, F)
    torus_rank = len(torus) - 1
    series = derived_series(basis, keys)
    nonsolvable = series[-1] != 0
    semidirect = any(not t.bracket(v).is_zero() for t in torus for v in basis)
    if nonsolvable:
        # the Euler derivation is central, so a perfect quotient of codimension one is semisimple
        unipotent_dim = None
        reductive = series[1] == dim_aut and series[-1] == series[1]
    else:
        unipotent_dim = dim_aut - torus_rank
        reductive = unipotent_dim == 0
    logger.debug("{}: derived series {}, torus rank {}".format(F, series, torus_rank))
    return ConnectedStructure(dim_aut, unipotent_dim, torus_rank, nonsolvable, semidirect, reductive)


def diagonal_finite_part(pd, lattice=None):
    """Torsion of Z^L modulo the exponent vectors of f restricted to the coordinates L.

    L defaults to every coordinate except the pivot and x_4.
    """
    if len(pd.f) < 2:
        raise DegenerateCurveError("The curve {} = 0 needs at least two monomials.".format(pd.f))
    names = pd.F.names
    if lattice is None:
        indices = [k for k in range(4) if k != pd.pivot]
    else:
        indices = [names.index(name) for name in lattice]
    rows = [tuple(monom[k] for k in indices) for monom in pd.f.terms()]
    group = quotient_group(rows, len(indices))
    return AbelianGroup(group.invariant_factors)


class FiniteGroupDescription:
    """An abelian group times named non-abelian factors, compared up to isomorphism."""

    def __init__(self, abelian=None, named_factors=(), notes=()):
        self.abelian = abelian if abelian is not None else AbelianGroup()
        self.named_factors = tuple(sorted(named_factors))
        self.notes = tuple(notes)

    def __mul__(self, other):
        return FiniteGroupDescription(self.abelian * other.abelian, self.named_factors + other.named_factors,
                                      self.notes + other.notes)

    def order(self):
        sizes = {"S3": 6, "S4": 24, "A4": 12, "A5": 60}
        total = self.abelian.order()
        for name in self.named_factors:
            total *= sizes[name] if name in sizes else int(name[1:])
        return total

    def matches(self, expected):
        return self.abelian == expected.abelian and self.named_factors == tuple(expected.named_factors)

    def to_json(self):
        return {"invariant_factors": list(self.abelian.invariant_factors),
                "named_factors": list(self.named_factors)}

    def __eq__(self, other):
        return isinstance(other, FiniteGroupDescription) and (self.abelian, self.named_factors) == (
            other.abelian, other.named_factors)

    def __hash__(self):
        return hash((self.abelian, self.named_factors))

    def __str__(self):
        parts = [] if self.abelian.is_trivial() and self.named_factors else [str(self.abelian)]
        return " x ".join(parts + list(self.named_factors))

    __repr__ = __str__


def _dihedral_description(order):
    n = order // 2
    if n == 2:
        return FiniteGroupDescription(AbelianGroup([2, 2]))
    if n % 2 == 1:
        return FiniteGroupDescription(named_factors=["S3" if n == 3 else "D{}".format(order)])
    if n % 4 == 2:
        return _dihedral_description(n) * FiniteGroupDescription(AbelianGroup([2]))
    return FiniteGroupDescription(named_factors=["D{}".format(order)])


class MobiusMap:
    """A 2x2 complex matrix of determinant 1 acting on homogeneous points of P^1, up to sign."""

    def __init__(self, matrix, eps=DEFAULT_EPSILON):
        matrix = numpy.array(matrix, dtype=complex)
        matrix = matrix / numpy.sqrt(numpy.linalg.det(matrix))
        for value in matrix.flat:
            if abs(value) > eps:
                if value.real < -eps or (abs(value.real) <= eps and value.imag < 0):
                    matrix = -matrix
                break
        self.matrix = matrix
        self.eps = eps

    @classmethod
    def from_triples(cls, source, target, eps=DEFAULT_EPSILON):
        return cls(_frame(target).dot(numpy.linalg.inv(_frame(source))), eps)

    def apply(self, point):
        return _normalize(self.matrix.dot(point))

    def __matmul__(self, other):
        return MobiusMap(self.matrix.dot(other.matrix), self.eps)

    def is_close(self, other, eps=None):
        eps = eps or self.eps
        return (numpy.allclose(self.matrix, other.matrix, atol=eps * 1e3)
                or numpy.allclose(self.matrix, -other.matrix, atol=eps * 1e3))

    def __str__(self):
        return str(numpy.round(self.matrix, 6).tolist())

    __repr__ = __str__


def _normalize(point):
    point = numpy.asarray(point, dtype=complex)
    return point / numpy.linalg.norm(point)


def _frame(triple):
    """Matrix sending [1:0], [0:1], [1:1] to the three points of `triple`."""
    p, q, r = triple
    alpha, beta = numpy.linalg.solve(numpy.column_stack([p, q]), r)
    return numpy.column_stack([alpha * p, beta * q])


def chordal_distance(p, q):
    return abs(p[0] * q[1] - p[1] * q[0]) / (numpy.linalg.norm(p) * numpy.linalg.norm(q))


def _binary_pair(p, pair):
    if pair is not None:
        return tuple(p.index(name) for name in pair)
    used = sorted(p.support())
    if len(used) != 2:
        raise NotSquarefreeError("{} is not a form in two variables.".format(p))
    return tuple(used)


def _dehomogenized(p, pair):
    """Coefficients of p(s, 1) from the top power of s down, and the total degree n."""
    i, j = pair
    degree = {monom[i] + monom[j] for monom in p.terms()}
    if len(degree) != 1:
        raise AutomorphismError("{} is not homogeneous in {}.".format(p, [p.names[k] for k in pair]))
    n = degree.pop()
    coefficients = [QQ.zero] * (n + 1)
    for monom, c in p.terms().items():
        coefficients[n - monom[i]] += c
    return coefficients, n


def separation(points):
    """Smallest chordal distance between two of `points`."""
    return min((chordal_distance(a, b) for a, b in combinations(points, 2)), default=1.0)


def _distinct(points, eps):
    kept = []
    for point in points:
        if all(chordal_distance(point, q) >= eps for q in kept):
            kept.append(point)
    return kept


def _root_key(point, eps):
    """Finite zeros by real then imaginary part, the point at infinity last."""
    if abs(point[1]) < eps:
        return 1, 0.0, 0.0
    s = point[0] / point[1]
    return 0, round(s.real, 6), round(s.imag, 6)


def _refined_roots(coefficients, precision):
    """Zeros of a dense polynomial with rational coefficients, top degree first, found to `precision` digits."""
    if len(coefficients) < 2:
        return []
    with mpmath.workdps(precision):
        exact = [mpmath.mpf(int(QQ.numer(c))) / int(QQ.denom(c)) for c in coefficients]
        roots = mpmath.polyroots(exact, maxsteps=200, extraprec=4 * precision)
        return [complex(r) for r in roots]


def binary_roots(p, pair=None, eps=DEFAULT_EPSILON, precision=DEFAULT_PRECISION):
    """Distinct zeros of the binary form p on P^1, as unit vectors in C^2, in a canonical order."""
    pair = _binary_pair(p, pair)
    coefficients, n = _dehomogenized(p, pair)
    top = next(k for k, c in enumerate(coefficients) if c)
    logger.debug("Roots of {} to {} digits".format(p, precision))
    points = [_normalize((r, 1)) for r in _refined_roots(coefficients[top:], precision)]
    if top > 0:
        points.append(_normalize((1, 0)))
    if separation(points) < eps:
        raise RootClusteringError("The zeros of {} are closer than {}.".format(p, eps))
    return sorted(points, key=lambda q: _root_key(q, eps))


def _best_triple(points):
    """The three points whose closest pair is farthest apart."""
    return max(combinations(points, 3),
               key=lambda triple: min(chordal_distance(a, b) for a, b in combinations(triple, 2)))


def _induced_permutation(mobius, points, tolerance):
    """Indices of the images of `points` under mobius, or None when it does not permute them."""
    images = []
    for point in points:
        image = mobius.apply(point)
        distances = [chordal_distance(image, other) for other in points]
        k = int(numpy.argmin(distances))
        if distances[k] > tolerance:
            return None
        images.append(k)
    if len(set(images)) != len(images):
        return None
    return images


def _stabilizer_of_points(points, constraints, eps):
    """Pairs (MobiusMap, Permutation of `points`) for every map permuting `points` and each constraint class."""
    if len(points) < 3:
        raise InfiniteStabilizerError("Fewer than three points have an infinite stabilizer.")
    # a quarter of the closest pair: no image lies within tolerance of two points
    tolerance = separation(_distinct(list(points) + [q for cls in constraints for q in cls], eps)) / 4
    source = _best_triple(points)
    found = []
    for target in permutations(points, 3):
        mobius = MobiusMap.from_triples(source, target, eps)
        images = _induced_permutation(mobius, points, tolerance)
        if images is None:
            continue
        if any(_induced_permutation(mobius, cls, tolerance) is None for cls in constraints):
            continue
        found.append((mobius, Permutation(images)))
    return found


class Stabilizer:
    """A finite subgroup of PGL_2, held as Mobius maps and the permutations they induce on the stabilized points.

    A Mobius map fixing three points is the identity, so the permutations determine the group.
    """

    def __init__(self, elements):
        self.elements = [mobius for mobius, _ in elements]
        self.permutations = [perm for _, perm in elements]
        self.group = PermutationGroup(self.permutations)

    def order(self):
        return len(self.elements)

    def element_orders(self):
        return sorted(perm.order() for perm in self.permutations)

    def is_closed(self):
        return self.group.order() == self.order()

    @property
    def kind(self):
        order = self.order()
        highest = max(self.element_orders())
        if highest == order:
            return "cyclic"
        if order == 12 and highest == 3:
            return "A4"
        if order == 24 and highest == 4:
            return "S4"
        if order == 60 and highest == 5:
            return "A5"
        return "dihedral"

    @property
    def name(self):
        kind = self.kind
        if kind == "cyclic":
            return "1" if self.order() == 1 else "Z{}".format(self.order())
        if kind == "dihedral":
            return "D{}".format(self.order())
        return kind

    def description(self):
        kind = self.kind
        if kind == "cyclic":
            return FiniteGroupDescription(AbelianGroup([self.order()] if self.order() > 1 else []))
        if kind == "dihedral":
            return _dihedral_description(self.order())
        return FiniteGroupDescription(named_factors=[kind])

    def __str__(self):
        return self.name


def _root_classes(p, pair, eps, precision):
    """The zeros of p grouped by multiplicity."""
    _, factors = p.element.sqf_list()
    classes = []
    for factor, _ in factors:
        q = QPoly.from_element(p.variables, factor)
        if q.support():
            classes.append(binary_roots(q, pair, eps, precision))
    return classes


def binary_form_stabilizer(p, pair=None, eps=DEFAULT_EPSILON, precision=DEFAULT_PRECISION):
    """The subgroup of PGL_2 permuting the zeros of a squarefree binary form of degree >= 3."""
    pair = _binary_pair(p, pair)
    _, n = _dehomogenized(p, pair)
    if n < 3:
        raise InfiniteStabilizerError("{} has degree {} < 3.".format(p, n))
    _, factors = p.element.sqf_list()
    if any(k > 1 for _, k in factors):
        raise NotSquarefreeError("{} has a repeated factor.".format(p))
    points = binary_roots(p, pair, eps, precision)
    stabilizer = Stabilizer(_stabilizer_of_points(points, [], eps))
    logger.debug("Stabilizer of {}: {}".format(p, stabilizer))
    return stabilizer


def joint_stabilizer(forms, pair, eps=DEFAULT_EPSILON, precision=DEFAULT_PRECISION):
    """Elements of PGL_2 preserving the zero divisor of every form in `forms`."""
    classes = []
    for p in forms:
        classes.extend(_root_classes(p, pair, eps, precision))
    if not classes:
        raise InfiniteStabilizerError("No binary form to stabilize.")
    base = max(classes, key=len)
    if len(base) < 3:
        base = _distinct([point for cls in classes for point in cls], eps)
    return Stabilizer(_stabilizer_of_points(base, classes, eps))


def binary_coefficients(f, pair):
    """The forms in `pair` multiplying each monomial of the remaining variables in f."""
    indices = [f.index(name) for name in pair]
    grouped = {}
    for monom, c in f.terms().items():
        rest = tuple(0 if k in indices else e for k, e in enumerate(monom))
        inner = tuple(e if k in indices else 0 for k, e in enumerate(monom))
        grouped.setdefault(rest, {})[inner] = c
    forms = []
    for rest in sorted(grouped):
        form = QPoly(f.variables, grouped[rest])
        if form.support():
            forms.append(form)
    return forms


def name_permutation_group(group):
    """Names a small permutation group by its abelian invariants, or by its order and element orders."""
    if group.is_abelian:
        return FiniteGroupDescription(AbelianGroup.from_cyclic_orders(group.abelian_invariants()))
    order = group.order()
    highest = max(g.order() for g in group.elements)
    if highest == order // 2:
        return _dihedral_description(order)
    names = {12: "A4", 24: "S4", 60: "A5", 120: "S5"}
    if order not in names:
        raise AutomorphismError("No name for the permutation group of order {}.".format(order))
    return FiniteGroupDescription(named_factors=[names[order]])


def permutation_group(f, block):
    """Permutations of the variables in `block` fixing f, as a FiniteGroupDescription."""
    kept = []
    for image in permutations(range(len(block))):
        assignment = {name: QPoly.gen(f.variables, block[k]) for name, k in zip(block, image)}
        if substitute(f, assignment) == f:
            kept.append(Permutation(list(image)))
    return name_permutation_group(PermutationGroup(kept))


class AutDescription:
    def __init__(self, structure, finite_part, notes=()):
        self.structure = structure
        self.finite_part = finite_part
        self.notes = tuple(notes)

    @property
    def dim_aut(self):
        return self.structure.dim_aut

    def to_json(self):
        s = self.structure
        return {"dim_aut": s.dim_aut, "unipotent_dim": s.unipotent_dim, "torus_rank": s.torus_rank,
                "nonsolvable": s.nonsolvable, "semidirect_nontrivial": s.semidirect_nontrivial,
                "reductive": s.reductive, "finite_part": self.finite_part.to_json(),
                "finite_part_text": str(self.finite_part), "notes": list(self.notes)}

    def __str__(self):
        if self.finite_part.order() == 1:
            return str(self.structure)
        return "({}) x| ({})".format(self.structure, self.finite_part)


def finite_part(ws, F, shape, eps=DEFAULT_EPSILON, precision=DEFAULT_PRECISION):
    """The component group described by `shape`, a dict with optional keys
    trivial, swap, lattice, permute and binary. Its `argument` text is not read."""
    if shape.get("trivial"):
        return FiniteGroupDescription(notes=["no projection; component group taken trivial"])
    pd = project(ws, F)
    group = FiniteGroupDescription()
    notes = []
    if shape.get("swap"):
        if not pd.swap_case:
            raise AutomorphismError("{} and {} have different weights; there is no swap.".format(
                pd.pivot_name, F.names[4]))
        group = group * FiniteGroupDescription(AbelianGroup([2]))
        notes.append("swap {} <-> {}".format(pd.pivot_name, F.names[4]))
    if "lattice" in shape:
        group = group * FiniteGroupDescription(diagonal_finite_part(pd, shape["lattice"]))
        notes.append("diagonal torsion on {}".format(",".join(shape["lattice"])))
    if "permute" in shape:
        group = group * permutation_group(pd.f, shape["permute"])
        notes.append("permutations of {}".format(",".join(shape["permute"])))
    if "binary" in shape:
        forms = binary_coefficients(pd.f, shape["binary"])
        pair = tuple(F.index(name) for name in shape["binary"])
        stabilizer = joint_stabilizer(forms, pair, eps, precision)
        group = group * stabilizer.description()
        notes.append("PGL_2 stabilizer {} of {}".format(stabilizer, ", ".join(str(p) for p in forms)))
    return FiniteGroupDescription(group.abelian, group.named_factors, notes)


def full_aut(ws, F, shape=None, seed=DEFAULT_SEED, eps=DEFAULT_EPSILON, precision=DEFAULT_PRECISION):
    """Aut0 and the component group of a member. Without `shape`, the family record picks one for F."""
    record = family_by_weights(ws)
    if record is None:
        raise UnsupportedFamilyError("{} is not one of the cylindrical families.".format(ws))
    verdict = member_quasismooth(ws, F, seed=seed)
    if not verdict.is_quasi_smooth:
        raise NotQuasiSmoothMemberError("{} is not a quasi-smooth member: {}.".format(F, verdict))
    structure = connected_structure(ws, F)
    group = finite_part(ws, F, shape if shape is not None else record.shape_for(F), eps, precision)
    logger.info("No.{}: Aut0 {}, W = {}".format(record.family_no, structure, group))
    return AutDescription(structure, group, group.notes)
