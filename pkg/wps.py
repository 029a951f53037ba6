"""
Weighted projective spaces P(a_0, ..., a_4) and their hypersurfaces of degree d.
"""

import logging
from itertools import combinations
from math import gcd

from exactalg import default_variables, monomials_of_degree

logger = logging.getLogger(__name__)


class WpsError(Exception):
    pass


class NotFanoError(WpsError):
    pass


class InvalidWeightsError(WpsError):
    pass


class NonIsolatedQuotientError(WpsError):
    pass


class NoEliminatingMonomialError(WpsError):
    def __init__(self, index, name):
        super().__init__("No monomial {}^k*x_m with nonzero coefficient eliminates a variable at the point p_{}; "
                         "the hypersurface is not quasi-smooth there.".format(name, name))
        self.index = index


class UnsupportedStratumError(WpsError):
    pass


def gcd_all(values):
    result = 0
    for value in values:
        result = gcd(result, value)
    return result


class WeightSystem:
    def __init__(self, weights, degree):
        weights = tuple(sorted(int(a) for a in weights))
        if len(weights) != 5:
            raise InvalidWeightsError("A weight system needs 5 weights, got {}.".format(len(weights)))
        if weights[0] <= 0 or int(degree) <= 0:
            raise InvalidWeightsError("Weights and degree must be positive: {}; {}.".format(weights, degree))
        self.weights = weights
        self.degree = int(degree)

    @classmethod
    def parse(cls, text):
        """Reads `a0,a1,a2,a3,a4;d` or `a0 a1 a2 a3 a4 d`."""
        cleaned = text.replace("(", " ").replace(")", " ").replace(",", " ").replace(";", " ")
        try:
            numbers = [int(piece) for piece in cleaned.split()]
        except ValueError:
            raise InvalidWeightsError("Malformed weight system `{}`.".format(text))
        if len(numbers) != 6:
            raise InvalidWeightsError("Expected five weights and a degree in `{}`.".format(text))
        return cls(numbers[:5], numbers[5])

    def variables(self, names=None):
        if names is None:
            return default_variables(self.weights)
        return default_variables(self.weights, names)

    def names(self):
        return tuple(name for name, _ in self.variables())

    def monomials(self, degree=None):
        return monomials_of_degree(self.weights, self.degree if degree is None else degree)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, index):
        return self.weights[index]

    def __eq__(self, other):
        return isinstance(other, WeightSystem) and (self.weights, self.degree) == (other.weights, other.degree)

    def __lt__(self, other):
        return (self.weights, self.degree) < (other.weights, other.degree)

    def __hash__(self):
        return hash((self.weights, self.degree))

    def __str__(self):
        return "P({}; {})".format(", ".join(str(a) for a in self.weights), self.degree)

    def __repr__(self):
        return "WeightSystem({}, {})".format(list(self.weights), self.degree)


def is_well_formed(ws):
    return all(gcd_all(four) == 1 for four in combinations(ws.weights, 4))


def is_hypersurface_well_formed(ws):
    return all(ws.degree % gcd_all(three) == 0 for three in combinations(ws.weights, 3))


def fano_index(ws):
    total = sum(ws.weights)
    if total <= ws.degree:
        raise NotFanoError("{} is not Fano: the weights sum to {} <= {}.".format(ws, total, ws.degree))
    return total - ws.degree


class CyclicQuotient:
    """The quotient singularity 1/r(w_1, w_2, w_3)."""

    def __init__(self, order, weights):
        self.order = int(order)
        if self.order <= 0:
            raise WpsError("Quotient order must be positive, got {}.".format(order))
        self.weights = tuple(int(w) % self.order for w in weights)

    def is_isolated(self):
        return all(gcd(w, self.order) == 1 for w in self.weights)

    def rescaled(self, unit):
        return CyclicQuotient(self.order, [unit * w for w in self.weights])

    def normalized(self):
        if self.order == 1 or gcd(self.weights[0], self.order) != 1:
            return self
        return self.rescaled(pow(self.weights[0], -1, self.order))

    def units(self):
        return [u for u in range(1, self.order) if gcd(u, self.order) == 1] or [1]

    def is_equivalent(self, other):
        """Equal up to permuting the weights and rescaling them by a unit mod r."""
        if self.order != other.order:
            return False
        target = sorted(other.weights)
        return any(sorted(self.rescaled(u).weights) == target for u in self.units())

    def __eq__(self, other):
        return isinstance(other, CyclicQuotient) and (self.order, self.weights) == (other.order, other.weights)

    def __hash__(self):
        return hash((self.order, self.weights))

    def __str__(self):
        return "1/{}({})".format(self.order, ",".join(str(w) for w in self.weights))

    __repr__ = __str__


def is_terminal_cyclic(q):
    """Reid-Tai: every nontrivial element has age sum(k*w_i mod r)/r above 1."""
    if q.order == 1:
        return True
    if not q.is_isolated():
        raise NonIsolatedQuotientError("{} is not an isolated quotient singularity.".format(q))
    return all(sum((k * w) % q.order for w in q.weights) > q.order for k in range(1, q.order))


def is_terminal_type(q):
    """True iff q is 1/r(1, a, r-a) up to order and unit rescaling."""
    if q.order == 1:
        return True
    for u in q.units():
        ws = sorted(q.rescaled(u).weights)
        for i in range(3):
            if ws[i] == 1:
                rest = ws[:i] + ws[i + 1:]
                if (rest[0] + rest[1]) % q.order == 0 and gcd(rest[0], q.order) == 1:
                    return True
    return False


class StratumPoint:
    def __init__(self, index, name, lies_on_x, quotient=None, eliminated=None):
        self.index = index
        self.name = name
        self.lies_on_x = lies_on_x
        self.quotient = quotient
        self.eliminated = eliminated

    def __str__(self):
        if not self.lies_on_x:
            return "p_{}: not on X".format(self.name)
        return "p_{}: {}".format(self.name, self.quotient)

    __repr__ = __str__


def _pure_power(ws, i):
    if ws.degree % ws.weights[i]:
        return None
    return tuple(ws.degree // ws.weights[i] if j == i else 0 for j in range(5))


def _eliminating_monomials(ws, i):
    """(m, exponent vector) for every monomial x_i^k*x_m of degree d."""
    found = []
    for m in range(5):
        if m == i:
            continue
        rest = ws.degree - ws.weights[m]
        if rest > 0 and rest % ws.weights[i] == 0:
            monom = [0] * 5
            monom[i] = rest // ws.weights[i]
            monom[m] += 1
            found.append((m, tuple(monom)))
    return found


def _residual_quotient(ws, i, m):
    residual = [ws.weights[j] for j in range(5) if j not in (i, m)]
    return CyclicQuotient(ws.weights[i], residual)


def singular_points(ws, F):
    """Coordinate points p_i with a_i > 1, with the local quotient type when p_i lies on X."""
    names = F.names
    points = []
    for i, a in enumerate(ws.weights):
        if a == 1:
            continue
        power = _pure_power(ws, i)
        if power is not None and F.coefficient(power) != 0:
            points.append(StratumPoint(i, names[i], False))
            continue
        for m, monom in _eliminating_monomials(ws, i):
            if F.coefficient(monom) != 0:
                break
        else:
            raise NoEliminatingMonomialError(i, names[i])
        quotient = _residual_quotient(ws, i, m)
        if not quotient.is_isolated():
            raise UnsupportedStratumError("The point p_{} of {} has non-isolated quotient {}.".format(
                names[i], ws, quotient))
        logger.debug("p_{} on X, eliminating {}: {}".format(names[i], names[m], quotient))
        points.append(StratumPoint(i, names[i], True, quotient, names[m]))
    return points


def family_singularities(ws):
    """The quotient singularities of a general member, as a list of CyclicQuotient.

    Coordinate points not cut out by a pure power, plus the points where a
    coordinate line with non-coprime weights meets X. Strata of dimension one
    inside X, and planes whose weights share a prime, raise UnsupportedStratumError.
    """
    basket = []
    names = ws.names()
    for i, a in enumerate(ws.weights):
        if a == 1 or _pure_power(ws, i) is not None:
            continue
        candidates = _eliminating_monomials(ws, i)
        if not candidates:
            raise NoEliminatingMonomialError(i, names[i])
        quotient = _residual_quotient(ws, i, candidates[0][0])
        if not quotient.is_isolated():
            raise UnsupportedStratumError("Non-isolated quotient {} at p_{}.".format(quotient, names[i]))
        basket.append(quotient)

    for i, j in combinations(range(5), 2):
        g = gcd(ws.weights[i], ws.weights[j])
        if g == 1:
            continue
        on_line = [monom for monom in ws.monomials()
                   if all(e == 0 for k, e in enumerate(monom) if k not in (i, j))]
        if not on_line:
            raise UnsupportedStratumError("The line p_{}p_{} lies in X with stabilizer of order {}.".format(
                names[i], names[j], g))
        # the binary form on the line has len(on_line) - 1 roots away from the coordinate points
        others = [ws.weights[k] for k in range(5) if k not in (i, j)]
        quotient = CyclicQuotient(g, others)
        if not quotient.is_isolated():
            raise UnsupportedStratumError("Non-isolated quotient {} along p_{}p_{}.".format(
                quotient, names[i], names[j]))
        basket.extend([quotient] * (len(on_line) - 1))

    for three in combinations(ws.weights, 3):
        if gcd_all(three) > 1:
            raise UnsupportedStratumError("The weights {} share a factor, so X is singular along a curve.".format(
                three))
    return basket
