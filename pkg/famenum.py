"""
Families of quasi-smooth, well-formed, terminal Fano hypersurface threefolds
X_d in P(a_0, ..., a_4), and the reference data for the cylindrical ones.
"""

import json
import logging
import os
from functools import lru_cache
from itertools import combinations_with_replacement

from exactalg import PolynomialError, parse_poly, parse_rational
from intlattice import AbelianGroup
from logging_pool import LoggingPool
from quasismooth import DEFAULT_SEED, QsStatus, general_member_quasismooth, member_quasismooth
from wps import (NoEliminatingMonomialError, UnsupportedStratumError, WeightSystem, family_singularities,
                 fano_index, is_hypersurface_well_formed, is_terminal_cyclic, is_well_formed)

logger = logging.getLogger(__name__)

DATASET_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "families.json")
DATASET_SCHEMA = 1
DEFAULT_MAX_WEIGHT = 35
DEFAULT_MAX_DEGREE = 100


class DatasetError(Exception):
    pass


class UnknownFamilyError(DatasetError):
    pass


class UnknownParameterError(DatasetError):
    pass


class WrongDegreeError(DatasetError):
    pass


class SingularCaseError(DatasetError):
    pass


class IrrationalTag:
    CLASSICAL = "classically-irrational"
    SOLID = "birationally-solid"
    IRRATIONAL = "irrational"
    OPEN = "open"


class ExpectedGroup:
    """A finite group as stored in the dataset: an abelian part and named factors."""

    def __init__(self, invariant_factors=(), named_factors=(), free_rank=0):
        self.abelian = AbelianGroup(invariant_factors, free_rank)
        self.named_factors = tuple(sorted(named_factors))

    @classmethod
    def from_json(cls, data):
        return cls(data.get("invariant_factors", ()), data.get("named_factors", ()), data.get("free_rank", 0))

    def to_json(self):
        data = {"invariant_factors": list(self.abelian.invariant_factors),
                "named_factors": list(self.named_factors)}
        if self.abelian.free_rank:
            data["free_rank"] = self.abelian.free_rank
        return data

    def __eq__(self, other):
        return (self.abelian, self.named_factors) == (other.abelian, other.named_factors)

    def __hash__(self):
        return hash((self.abelian, self.named_factors))

    def __str__(self):
        parts = [str(self.abelian)] if not self.abelian.is_trivial() or not self.named_factors else []
        return " x ".join(parts + list(self.named_factors))

    __repr__ = __str__


class ParameterCase:
    def __init__(self, description, group, params=None, poly=None, shape=None):
        self.description = description
        self.group = group
        self.params = dict(params or {})
        self.poly = poly
        self.shape = shape

    @classmethod
    def from_json(cls, data):
        return cls(data["case"], ExpectedGroup.from_json(data["group"]), data.get("params"), data.get("poly"),
                   data.get("shape"))


def same_member(F, G):
    """F and G define the same hypersurface: they agree up to a nonzero scalar."""
    if F.variables != G.variables or len(F) != len(G) or not G:
        return False
    monom, c = next(iter(G.terms().items()))
    return F.coefficient(monom) != 0 and F == G * (F.coefficient(monom) / c)


class ShapeRule:
    """Chooses the finite-part shape of a member from the form multiplying one variable in F."""

    ABSENT = "absent"
    MONOMIAL = "monomial"
    GENERAL = "general"

    def __init__(self, variable, form, shape):
        if form not in (self.ABSENT, self.MONOMIAL, self.GENERAL):
            raise DatasetError("Shape rules match an absent, monomial or general form, not `{}`.".format(form))
        self.variable = variable
        self.form = form
        self.shape = dict(shape)

    @classmethod
    def from_json(cls, data):
        return cls(data["coefficient_of"], data["form"], data["shape"])

    def applies_to(self, F):
        return coefficient_form(F, self.variable) == self.form


def coefficient_form(F, name):
    """Whether the part of F linear in `name` is absent, a single monomial or a longer form."""
    k = F.index(name)
    count = sum(1 for monom in F.terms() if monom[k] == 1)
    if count == 0:
        return ShapeRule.ABSENT
    return ShapeRule.MONOMIAL if count == 1 else ShapeRule.GENERAL


def same_params(a, b):
    """Parameter dicts with the same names and equal rational values."""
    return a.keys() == b.keys() and all(parse_rational(str(a[name])) == parse_rational(str(b[name])) for name in a)


class ExpectedClassification:
    def __init__(self, data):
        self.contains_a3 = data["contains_a3"]
        self.unipotent_dim = data.get("unipotent_dim")
        self.torus_rank = data.get("torus_rank")
        self.dim_aut = data["dim_aut"]
        self.nonsolvable = data["nonsolvable"]
        self.reductive = data["reductive"]
        self.ga3_structure = data["ga3_structure"]
        self.heisenberg_structure = data["heisenberg_structure"]
        self.curve_genus = data.get("curve_genus")
        self.finite_parts = [ParameterCase.from_json(case) for case in data["finite_parts"]]

    def default_case(self, defaults):
        for case in self.finite_parts:
            if case.poly is None and same_params(dict(defaults, **case.params), defaults):
                return case
        return self.finite_parts[0]


class FamilyRecord:
    def __init__(self, ws, family_no=None, template=None, defaults=None, shape=None, expected=None,
                 shape_rules=()):
        self.ws = ws
        self.family_no = family_no
        self.fano_index = fano_index(ws)
        self.template = template
        self.defaults = dict(defaults or {})
        self.shape = dict(shape or {})
        self.expected = expected
        self.shape_rules = list(shape_rules)

    @classmethod
    def from_json(cls, data):
        ws = WeightSystem(data["weights"], data["degree"])
        record = cls(ws, data["family_no"], data["normal_form"]["template"], data["normal_form"]["defaults"],
                     data["shape"], ExpectedClassification(data["expected"]),
                     [ShapeRule.from_json(rule) for rule in data.get("shape_rules", ())])
        if record.fano_index != data["fano_index"]:
            raise DatasetError("Family {} stores index {} but {} has index {}.".format(
                record.family_no, data["fano_index"], ws, record.fano_index))
        return record

    @property
    def is_spade(self):
        return self.template is not None

    def case_for(self, params=None):
        """The stored parameter case of the member at `params`, defaults filled in."""
        values = dict(self.defaults, **(params or {}))
        for case in self.expected.finite_parts:
            if case.poly is None and same_params(dict(self.defaults, **case.params), values):
                return case
        return None

    def shape_for(self, F):
        """The finite-part shape of the member F.

        A stored case with the same polynomial gives its own shape, then the first
        shape rule F satisfies, then the family shape.
        """
        for case in self.expected.finite_parts:
            if same_member(F, instantiate(self, case.params, case.poly)):
                return case.shape or self.shape
        for rule in self.shape_rules:
            if rule.applies_to(F):
                return rule.shape
        return self.shape

    def sort_key(self):
        return self.fano_index, self.ws.degree, self.ws.weights

    def to_json(self):
        data = {"weights": list(self.ws.weights), "degree": self.ws.degree, "fano_index": self.fano_index}
        if self.family_no is not None:
            data["family_no"] = self.family_no
        return data

    def __str__(self):
        label = "No.{} ".format(self.family_no) if self.family_no is not None else ""
        return "{}X_{} in P({}), index {}".format(label, self.ws.degree, ",".join(map(str, self.ws.weights)),
                                               self.fano_index)

    __repr__ = __str__


class IrrationalFamily:
    def __init__(self, family_no, tag, name=None):
        self.family_no = family_no
        self.tag = tag
        self.name = name

    def __str__(self):
        if self.name:
            return "No.{}: {} ({})".format(self.family_no, self.tag, self.name)
        return "No.{}: {}".format(self.family_no, self.tag)


_active_dataset = DATASET_PATH


def use_dataset(path):
    """Makes `path` the dataset that lookups read when no path is given.

    A dataset other than the shipped one is checked member by member first.
    """
    global _active_dataset
    load_dataset(path)
    if os.path.abspath(path) != DATASET_PATH:
        verify_dataset(path)
    _active_dataset = path


def load_dataset(path=None):
    return _read_dataset(path or _active_dataset)


@lru_cache(maxsize=None)
def _read_dataset(path):
    try:
        with open(path, encoding="utf-8") as stream:
            data = json.load(stream)
    except (OSError, ValueError) as e:
        raise DatasetError("Could not read the family dataset `{}`: {}".format(path, e))
    if data.get("schema") != DATASET_SCHEMA:
        raise DatasetError("Dataset `{}` has schema {}, expected {}.".format(path, data.get("schema"),
                                                                              DATASET_SCHEMA))
    spade = [FamilyRecord.from_json(entry) for entry in data["spade"]]
    irrational = [IrrationalFamily(entry["family_no"], entry["tag"], entry.get("name"))
                  for entry in data["irrational"]]
    logger.debug("Loaded {} cylindrical and {} irrational families from {}".format(len(spade), len(irrational),
                                                                                   path))
    return tuple(spade), tuple(irrational)


@lru_cache(maxsize=None)
def verify_dataset(path=None, seed=DEFAULT_SEED):
    """Raises SingularCaseError unless every stored member of every family is quasi-smooth."""
    path = path or _active_dataset
    for record in _read_dataset(path)[0]:
        members = [("default member", instantiate(record))]
        members += [(case.description, instantiate(record, case.params, case.poly))
                    for case in record.expected.finite_parts]
        for description, F in members:
            verdict = member_quasismooth(record.ws, F, seed)
            if verdict.status != QsStatus.QUASI_SMOOTH:
                raise SingularCaseError("{} case `{}` of dataset `{}` is {}: {}".format(
                    record, description, path, verdict, F))
    logger.debug("Every stored member of {} is quasi-smooth".format(path))


def spade_families(path=None):
    return list(load_dataset(path)[0])


def irrational_families(path=None):
    return list(load_dataset(path)[1])


def family_by_number(family_no, path=None):
    for record in spade_families(path):
        if record.family_no == family_no:
            return record
    raise UnknownFamilyError("No.{} is not one of the cylindrical families in the dataset.".format(family_no))


def family_by_weights(ws, path=None):
    for record in spade_families(path):
        if record.ws == ws:
            return record
    return None


def instantiate(record, params=None, poly=None):
    """The member of `record` given by a polynomial, or by the normal form at `params`.

    Parameters not given keep their default values.
    """
    variables = record.ws.variables()
    if poly is not None:
        F = parse_poly(poly, variables)
    else:
        if record.template is None:
            raise DatasetError("{} has no normal form; pass a polynomial.".format(record))
        values = dict(record.defaults)
        for name, value in (params or {}).items():
            if name not in values:
                raise UnknownParameterError("{} has no parameter `{}`; known: {}.".format(
                    record, name, ", ".join(sorted(values)) or "none"))
            values[name] = value
        F = parse_poly(record.template, variables, {name: parse_rational(str(value))
                                                    for name, value in values.items()})
    if F.is_zero() or not F.is_quasi_homogeneous(record.ws.degree):
        raise WrongDegreeError("{} is not quasi-homogeneous of degree {} for weights {}.".format(
            F, record.ws.degree, record.ws.weights))
    return F


def parse_params(pairs):
    """Reads `k=v` strings into a parameter dict."""
    params = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise UnknownParameterError("Parameters are given as name=value, got `{}`.".format(pair))
        try:
            parse_rational(value)
        except PolynomialError:
            raise UnknownParameterError("Parameter `{}` needs a rational value, got `{}`.".format(name, value))
        params[name.strip()] = value.strip()
    return params


def _points_are_covered(weights, d):
    """Each coordinate point is off X or a monomial x_i^k*x_m eliminates a variable there."""
    for a in weights:
        if d % a == 0:
            continue
        if not any(d - b > 0 and (d - b) % a == 0 for b in weights):
            return False
    return True


def _candidate_degrees(weights, max_degree):
    a4 = weights[-1]
    total = sum(weights)
    degrees = set()
    for k in range(1, total // a4 + 1):
        degrees.add(k * a4)
        degrees.update(k * a4 + b for b in weights[:-1])
    return sorted(d for d in degrees if a4 < d < total and d <= max_degree)


def classify_candidate(weights, d):
    """None when X_d in P(weights) is a family of the list, otherwise the reason it is not."""
    ws = WeightSystem(weights, d)
    if not is_well_formed(ws):
        return "ambient space not well-formed"
    if not is_hypersurface_well_formed(ws):
        return "hypersurface not well-formed"
    verdict = general_member_quasismooth(ws)
    if verdict.status != QsStatus.QUASI_SMOOTH:
        return "general member {}".format(verdict)
    try:
        basket = family_singularities(ws)
    except (UnsupportedStratumError, NoEliminatingMonomialError) as e:
        return str(e)
    for quotient in basket:
        if not is_terminal_cyclic(quotient):
            return "non-terminal point {}".format(quotient)
    return None


def search_partition(a4, max_degree):
    """Accepted (weights, degree) pairs whose largest weight is a4."""
    accepted = []
    for head in combinations_with_replacement(range(1, a4 + 1), 4):
        weights = head + (a4,)
        for d in _candidate_degrees(weights, max_degree):
            if not _points_are_covered(weights, d):
                continue
            reason = classify_candidate(weights, d)
            if reason is None:
                accepted.append((weights, d))
            else:
                logger.debug("Rejected X_{} in P{}: {}".format(d, weights, reason))
    return accepted


def search_families(max_weight=DEFAULT_MAX_WEIGHT, max_degree=DEFAULT_MAX_DEGREE, processes=1):
    """All families within the bounds, and the ones touching a bound.

    The search is split by the largest weight; with processes > 1 the pieces
    run on a LoggingPool. The result is sorted by (index, degree, weights).
    """
    if processes > 1:
        with LoggingPool(processes) as pool:
            parts = pool.starmap_ordered(search_partition, [(a4, max_degree) for a4 in range(1, max_weight + 1)])
            found = [pair for part in parts for pair in part]
    else:
        found = [pair for a4 in range(1, max_weight + 1) for pair in search_partition(a4, max_degree)]

    known = {record.ws: record for record in spade_families()}
    records = []
    for weights, d in set(found):
        ws = WeightSystem(weights, d)
        records.append(known.get(ws) or FamilyRecord(ws))
    records.sort(key=FamilyRecord.sort_key)
    hits = [record for record in records if record.ws.weights[-1] == max_weight or record.ws.degree == max_degree]
    return records, hits


def enumerate_families(max_weight=DEFAULT_MAX_WEIGHT, max_degree=DEFAULT_MAX_DEGREE, processes=1):
    records, hits = search_families(max_weight, max_degree, processes)
    if hits:
        logger.warning("Families on the search boundary (max weight {}, max degree {}): {}. "
                       "Raise the bounds.".format(max_weight, max_degree, ", ".join(str(r) for r in hits)))
    logger.info("Found {} families".format(len(records)))
    return records
