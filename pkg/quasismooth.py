"""
Quasi-smoothness of weighted hypersurfaces.

A hypersurface X = (F = 0) in P(a_0, ..., a_4) is quasi-smooth when F and its
partial derivatives have no common zero on the punctured affine cone. The
cone is split into the 31 torus strata {x_i != 0 exactly for i in S}.
Coordinate points and coordinate lines are decided exactly, coordinate planes
by resultants. Every stratum left over is decided by a Groebner basis of
F and its partials, saturated by the stratum coordinates, over random prime
fields of about 31 bits; a basis other than {1} is confirmed over Q.
"""

import logging
from functools import lru_cache
from itertools import combinations

import backoff
import numpy
from sympy import nextprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.galoistools import gf_factor, gf_from_dict, gf_gcd
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import ring as polynomial_ring

from exactalg import jacobian

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_PRIMES = 2
DEFAULT_PRIME_BITS = 31
PRIME_ATTEMPTS = 24


class QsStatus:
    QUASI_SMOOTH = "QUASI_SMOOTH"
    NOT_QUASI_SMOOTH = "NOT_QUASI_SMOOTH"
    LINEAR_CONE = "LINEAR_CONE"
    UNSUPPORTED = "UNSUPPORTED"


class QuasiSmoothError(Exception):
    pass


class NotQuasiHomogeneousError(QuasiSmoothError):
    pass


class CharacteristicCollision(QuasiSmoothError):
    pass


class QsVerdict:
    """Outcome of a quasi-smoothness check.

    `witness` names the coordinates of the torus stratum where F and all its
    partials vanish; `confidence` is None for an exact verdict and names the
    primes a modular decision was made over otherwise.
    """

    def __init__(self, status, witness=None, confidence=None):
        self.status = status
        self.witness = tuple(witness) if witness is not None else None
        self.confidence = confidence

    @property
    def is_quasi_smooth(self):
        return self.status == QsStatus.QUASI_SMOOTH

    @property
    def is_exact(self):
        return self.confidence is None

    def witness_text(self):
        if self.witness is None:
            return ""
        if len(self.witness) == 1:
            return "p_{}".format(self.witness[0])
        return "{{{}}}".format(", ".join(self.witness))

    def __str__(self):
        text = self.status
        if self.witness is not None:
            text += " at {}".format(self.witness_text())
        if self.confidence is not None:
            text += " ({})".format(self.confidence)
        return text

    __repr__ = __str__


@lru_cache(maxsize=None)
def representable(d, weights):
    """True iff d is a non-negative integer combination of `weights`."""
    if d < 0:
        return False
    reachable = [True] + [False] * d
    for n in range(1, d + 1):
        reachable[n] = any(a <= n and reachable[n - a] for a in weights)
    return reachable[d]


def general_member_quasismooth(ws):
    """Combinatorial criterion for a general member of the family of degree d."""
    d = ws.degree
    names = ws.names()
    for i, a in enumerate(ws.weights):
        if a == d:
            return QsVerdict(QsStatus.LINEAR_CONE, (names[i],))
    for size in range(1, 6):
        for subset in combinations(range(5), size):
            weights = tuple(sorted(ws.weights[i] for i in subset))
            if representable(d, weights):
                continue
            normals = {e for e in range(5)
                       if e not in subset and representable(d - ws.weights[e], weights)}
            if len(normals) >= size:
                continue
            logger.debug("{}: no monomials cover the stratum {}".format(ws, [names[i] for i in subset]))
            return QsVerdict(QsStatus.NOT_QUASI_SMOOTH, [names[i] for i in subset])
    return QsVerdict(QsStatus.QUASI_SMOOTH)


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.domain = GF(p)

    def reduce(self, value):
        numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
        if denominator % self.p == 0:
            raise CharacteristicCollision("Denominator {} vanishes modulo {}.".format(denominator, self.p))
        return numerator * pow(denominator, -1, self.p) % self.p

    def reduce_terms(self, element):
        terms = {}
        for monom, coeff in element.items():
            value = self.reduce(coeff)
            if value:
                terms[monom] = value
        return terms

    def univariate(self, terms, point, index):
        """Dense coefficients of the polynomial in x_index, the other coordinates fixed at `point`."""
        if not terms:
            return []
        collected = {}
        for monom, coeff in terms.items():
            value = coeff
            for j, (x, e) in enumerate(zip(point, monom)):
                if e and j != index:
                    value = value * pow(x, e, self.p) % self.p
            collected[monom[index]] = (collected.get(monom[index], 0) + value) % self.p
        return gf_from_dict(collected, self.p, ZZ)

    def nonzero_roots(self, dense):
        if len(dense) < 2:
            return []
        _, factors = gf_factor(dense, self.p, ZZ)
        return [int(-factor[1]) % self.p for factor, _ in factors if len(factor) == 2 and factor[1]]

    def gcd(self, polys):
        result = []
        for dense in polys:
            result = gf_gcd(result, dense, self.p, ZZ)
        return result


def draw_prime(rng, bits):
    return int(nextprime(int(rng.integers(2 ** (bits - 1), 2 ** bits))))


@backoff.on_exception(backoff.constant, CharacteristicCollision, max_tries=4, interval=0, jitter=None)
def prime_field_for(polys, rng, bits):
    """A random prime field in which every coefficient of `polys` has a value."""
    field = PrimeField(draw_prime(rng, bits))
    for q in polys:
        field.reduce_terms(q.element)
    return field


def _strip_powers(terms):
    """Divides a univariate term dict by the largest power of its variable."""
    low = min(monom[0] for monom in terms)
    return {(monom[0] - low,): coeff for monom, coeff in terms.items()}


def _point_is_singular(polys, i):
    return all(not q.restrict([i]).set_variable(i, 1) for q in polys)


def _line_is_singular(polys, i, j):
    restricted = [q.restrict([i, j]).element for q in polys]
    restricted = [q for q in restricted if q]
    if not restricted:
        return True
    common = restricted[0]
    for q in restricted[1:]:
        common = common.gcd(q)
    # a quasi-homogeneous binary form vanishes on the torus of the line unless it is a monomial
    return len(common) > 1


_PLANE_RING = polynomial_ring("v,u", QQ, lex)[0]
_LINE_RING = polynomial_ring("u", QQ, lex)[0]


def _dehomogenize(element, plane):
    k, i, j = plane
    terms = {}
    for monom, coeff in element.items():
        key = (monom[j], monom[i])
        terms[key] = terms.get(key, QQ.zero) + coeff
    return _PLANE_RING.from_dict(terms)


def _as_line(element):
    return _LINE_RING.from_dict({(monom[-1],): coeff for monom, coeff in element.items()})


def _eliminant(a, b):
    """A polynomial in u vanishing at the u-coordinate of every common zero of a and b."""
    v = _PLANE_RING.gens[0]
    da, db = a.degree(v), b.degree(v)
    if da == 0 and db == 0:
        return _as_line(a.gcd(b))
    if db == 0:
        return _as_line(b)
    if da == 0:
        return _as_line(a)
    return _LINE_RING.from_dict({(monom[-1],): coeff for monom, coeff in a.resultant(b).items()})


class PlaneCheck:
    SMOOTH = "smooth"
    SINGULAR = "singular"
    UNDECIDED = "undecided"


def _plane_check(polys, plane, rng, bits):
    """Decides whether F and its partials share a zero on the torus of a coordinate plane.

    Returns (outcome, exact).
    """
    restricted = [q.restrict(plane).element for q in polys]
    restricted = [q for q in restricted if q]
    if not restricted:
        return PlaneCheck.SINGULAR, True
    common = restricted[0]
    for q in restricted[1:]:
        common = common.gcd(q)
    if len(common) > 1:
        return PlaneCheck.SINGULAR, True

    affine = [_dehomogenize(q, plane) for q in restricted]
    eliminants = []
    for a, b in combinations(affine, 2):
        e = _eliminant(a, b)
        if e:
            eliminants.append(e)
    if not eliminants:
        return PlaneCheck.UNDECIDED, False
    H = eliminants[0]
    for e in eliminants[1:]:
        H = H.gcd(e)
    H = _LINE_RING.from_dict(_strip_powers(dict(H.items())))
    if H.is_ground:
        return PlaneCheck.SMOOTH, True

    _, factors = H.factor_list()
    for h, _ in factors:
        decided = False
        for _ in range(PRIME_ATTEMPTS):
            try:
                field = PrimeField(draw_prime(rng, bits))
                h_dense = gf_from_dict({monom[0]: field.reduce(c) for monom, c in h.items()}, field.p, ZZ)
                reduced = [field.reduce_terms(q) for q in affine]
            except CharacteristicCollision:
                continue
            roots = field.nonzero_roots(h_dense)
            if not roots:
                continue
            for u0 in roots:
                in_v = [field.univariate(terms, (0, u0), 0) for terms in reduced]
                shared = field.gcd(in_v)
                if not shared:
                    return PlaneCheck.SINGULAR, False
                while len(shared) > 1 and shared[-1] == 0:
                    shared = shared[:-1]
                if len(shared) > 1:
                    return PlaneCheck.SINGULAR, False
            decided = True
            break
        if not decided:
            return PlaneCheck.UNDECIDED, False
    return PlaneCheck.SMOOTH, False


@lru_cache(maxsize=256)
def _stratum_ring(names, domain):
    return polynomial_ring(list(names) + ["unit_"], domain, grevlex)[0]


def stratum_is_smooth(polys, stratum, domain, convert):
    """True iff F and its partials have no common zero with x_i != 0 exactly for i in `stratum`.

    The stratum is dehomogenized at its first coordinate and saturated by the
    product of the others through the extra variable unit_; the common zeros
    are empty iff the reduced Groebner basis is {1}.
    """
    rest = stratum[1:]
    R = _stratum_ring(tuple(polys[0].names[i] for i in rest), domain)
    system = []
    for q in polys:
        terms = {}
        for monom, coeff in q.element.items():
            if all(e == 0 or i in stratum for i, e in enumerate(monom)):
                key = tuple(monom[i] for i in rest) + (0,)
                terms[key] = terms.get(key, domain.zero) + convert(coeff)
        g = R.from_dict(terms)
        if g:
            system.append(g)
    product = R.one
    for x in R.gens[:-1]:
        product *= x
    system.append(R.one - R.gens[-1] * product)
    return any(g.is_ground for g in groebner(system, R))


def member_quasismooth(ws, F, seed=DEFAULT_SEED, primes=DEFAULT_PRIMES, prime_bits=DEFAULT_PRIME_BITS):
    if F.weights != ws.weights or not F or not F.is_quasi_homogeneous(ws.degree):
        raise NotQuasiHomogeneousError("{} is not quasi-homogeneous of degree {} over weights {}.".format(
            F, ws.degree, ws.weights))
    names = F.names
    for i, a in enumerate(ws.weights):
        if a == ws.degree:
            return QsVerdict(QsStatus.LINEAR_CONE, (names[i],))

    polys = [F] + jacobian(F)
    for i in range(5):
        if _point_is_singular(polys, i):
            return QsVerdict(QsStatus.NOT_QUASI_SMOOTH, (names[i],))
    for i, j in combinations(range(5), 2):
        if _line_is_singular(polys, i, j):
            return QsVerdict(QsStatus.NOT_QUASI_SMOOTH, (names[i], names[j]))

    rng = numpy.random.default_rng(seed)
    strata = []
    for plane in combinations(range(5), 3):
        outcome, exact = _plane_check(polys, plane, rng, prime_bits)
        logger.debug("Plane {}: {} ({})".format([names[i] for i in plane], outcome, "exact" if exact else "modular"))
        if not exact:
            strata.append(plane)
        elif outcome == PlaneCheck.SINGULAR:
            return QsVerdict(QsStatus.NOT_QUASI_SMOOTH, [names[i] for i in plane])
    strata += [s for size in (4, 5) for s in combinations(range(5), size)]

    fields = [prime_field_for(polys, rng, prime_bits) for _ in range(primes)]
    for stratum in strata:
        if all(stratum_is_smooth(polys, stratum, field.domain, field.reduce) for field in fields):
            continue
        if stratum_is_smooth(polys, stratum, QQ, QQ.convert):
            logger.debug("Stratum {}: unit ideal over Q only, the prime was unlucky".format(stratum))
            continue
        return QsVerdict(QsStatus.NOT_QUASI_SMOOTH, [names[i] for i in stratum])
    confidence = "unit ideal on {} torus strata modulo {}".format(len(strata),
                                                                  ", ".join(str(f.p) for f in fields))
    return QsVerdict(QsStatus.QUASI_SMOOTH, confidence=confidence)
