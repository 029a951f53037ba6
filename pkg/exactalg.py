"""
Exact polynomials over weighted variables.

A QPoly is a polynomial with rational coefficients whose variables carry
positive integer weights. Arithmetic is delegated to sympy's sparse
polynomial rings over QQ; this module adds the weighting, a canonical text
form and a small parser for that text form.

Grammar (whitespace ignored, implicit multiplication is an error):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := int ['/' uint] | var ['^' uint] | '(' expr ')'
"""

import logging
import re
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring as polynomial_ring

logger = logging.getLogger(__name__)

DEFAULT_NAMES = ("x", "y", "z", "t", "w")
MIXED = "MIXED"


class PolynomialError(Exception):
    pass


class PolynomialSyntaxError(PolynomialError):
    def __init__(self, message, position):
        super().__init__("{} at position {}".format(message, position))
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    def __init__(self, name, position):
        super().__init__("Unknown variable `{}`".format(name), position)
        self.name = name


class ZeroDenominatorError(PolynomialSyntaxError):
    def __init__(self, position):
        super().__init__("Division by zero in a rational literal", position)


class ZeroPolynomialError(PolynomialError):
    pass


class VariableTableMismatch(PolynomialError):
    pass


class NotBinaryError(PolynomialError):
    pass


def rational(value):
    if isinstance(value, str):
        return parse_rational(value)
    return QQ.convert(value)


def parse_rational(text):
    match = re.fullmatch(r"\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*", text)
    if match is None:
        raise PolynomialSyntaxError("Malformed rational `{}`".format(text), 0)
    sign, numerator, denominator = match.groups()
    denominator = int(denominator) if denominator is not None else 1
    if denominator == 0:
        raise ZeroDenominatorError(text.index("/"))
    value = QQ(int(numerator), denominator)
    return -value if sign == "-" else value


def format_rational(value):
    numerator, denominator = QQ.numer(value), QQ.denom(value)
    if denominator == 1:
        return str(numerator)
    return "{}/{}".format(numerator, denominator)


def default_variables(weights, names=DEFAULT_NAMES):
    if len(weights) > len(names):
        names = tuple("x{}".format(i) for i in range(len(weights)))
    return tuple(zip(names, weights))


@lru_cache(maxsize=None)
def _ring_for(names):
    return polynomial_ring(",".join(names), QQ, grlex)[0]


def format_monomial(monom, names):
    factors = []
    for name, exponent in zip(names, monom):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append("{}^{}".format(name, exponent))
    return "*".join(factors)


class QPoly:
    """A polynomial with exact rational coefficients over weighted variables.

    Instances are never mutated after construction; every operation returns
    a new QPoly sharing the variable table.
    """

    def __init__(self, variables, terms=None):
        self.variables = tuple((str(name), int(weight)) for name, weight in variables)
        self.ring = _ring_for(self.names)
        self.element = self.ring.from_dict(dict(terms or {}))

    @classmethod
    def from_element(cls, variables, element):
        poly = cls(variables)
        poly.element = poly.ring.ring_new(element)
        return poly

    @classmethod
    def gen(cls, variables, name):
        poly = cls(variables)
        return cls.from_element(variables, poly.ring.gens[poly.index(name)])

    @classmethod
    def constant(cls, variables, value):
        poly = cls(variables)
        return cls.from_element(variables, poly.ring.ground_new(rational(value)))

    @property
    def names(self):
        return tuple(name for name, _ in self.variables)

    @property
    def weights(self):
        return tuple(weight for _, weight in self.variables)

    def index(self, name):
        if isinstance(name, int):
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(name, 0)

    def terms(self):
        return dict(self.element.items())

    def coefficient(self, monom):
        return self.element.get(tuple(monom), QQ.zero)

    def monomial_degree(self, monom):
        return sum(a * e for a, e in zip(self.weights, monom))

    def is_zero(self):
        return not self.element

    def __bool__(self):
        return bool(self.element)

    def __len__(self):
        return len(self.element)

    def support(self):
        """Indices of the variables that occur in some term."""
        used = set()
        for monom in self.element:
            used.update(i for i, e in enumerate(monom) if e)
        return used

    def is_quasi_homogeneous(self, d):
        return all(self.monomial_degree(monom) == d for monom in self.element)

    def sorted_terms(self):
        return sorted(self.element.items(),
                      key=lambda item: (self.monomial_degree(item[0]), item[0]),
                      reverse=True)

    def restrict(self, keep):
        """Sets every variable outside `keep` to zero."""
        keep = {self.index(k) for k in keep}
        terms = {monom: coeff for monom, coeff in self.element.items()
                 if all(e == 0 or i in keep for i, e in enumerate(monom))}
        return QPoly(self.variables, terms)

    def set_variable(self, name, value):
        """Substitutes a constant for one variable, keeping the variable table."""
        i = self.index(name)
        return QPoly.from_element(self.variables,
                                  self.element.compose(self.ring.gens[i], self.ring.ground_new(rational(value))))

    def _coerce(self, other):
        if isinstance(other, QPoly):
            if other.variables != self.variables:
                raise VariableTableMismatch("Cannot combine polynomials over {} and {}.".format(
                    self.names, other.names))
            return other.element
        return self.ring.ground_new(rational(other))

    def __add__(self, other):
        return QPoly.from_element(self.variables, self.element + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return QPoly.from_element(self.variables, self.element - self._coerce(other))

    def __rsub__(self, other):
        return QPoly.from_element(self.variables, self._coerce(other) - self.element)

    def __mul__(self, other):
        return QPoly.from_element(self.variables, self.element * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return QPoly.from_element(self.variables, -self.element)

    def __pow__(self, exponent):
        return QPoly.from_element(self.variables, self.element ** int(exponent))

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.variables == other.variables and self.element == other.element
        if not self.support():
            return self.element == self._coerce(other)
        return False

    def __hash__(self):
        return hash((self.variables, frozenset(self.element.items())))

    def __str__(self):
        if not self.element:
            return "0"
        pieces = []
        for monom, coeff in self.sorted_terms():
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            body = format_monomial(monom, self.names)
            if not body:
                text = format_rational(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = "{}*{}".format(format_rational(magnitude), body)
            if not pieces:
                pieces.append("-" + text if negative else text)
            else:
                pieces.append(("- " if negative else "+ ") + text)
        return " ".join(pieces)

    def __repr__(self):
        return "QPoly({!r}, {})".format(str(self), dict(self.variables))


class Token:
    INTEGER = "integer"
    NAME = "name"
    OPERATOR = "operator"
    END = "end"

    PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")

    def __init__(self, kind, text, position):
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self):
        return "({}, {!r}, {})".format(self.kind, self.text, self.position)


def tokenize(text):
    tokens = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            tokens.append(Token(Token.END, "", position))
            return tokens
        match = Token.PATTERN.match(text, position)
        if match is None:
            raise PolynomialSyntaxError("Unexpected character `{}`".format(text[position]), position)
        integer, name, operator = match.groups()
        start = match.start(match.lastindex)
        if integer is not None:
            tokens.append(Token(Token.INTEGER, integer, start))
        elif name is not None:
            tokens.append(Token(Token.NAME, name, start))
        else:
            tokens.append(Token(Token.OPERATOR, operator, start))
        position = match.end()


class Parser:
    def __init__(self, text, variables, constants=None):
        self.tokens = tokenize(text)
        self.cursor = 0
        self.variables = tuple(variables)
        self.constants = {name: rational(value) for name, value in (constants or {}).items()}
        self.names = tuple(name for name, _ in self.variables)

    def peek(self):
        return self.tokens[self.cursor]

    def advance(self):
        token = self.tokens[self.cursor]
        self.cursor += 1
        return token

    def accept(self, operator):
        token = self.peek()
        if token.kind == Token.OPERATOR and token.text == operator:
            return self.advance()
        return None

    def expect(self, operator):
        token = self.accept(operator)
        if token is None:
            raise PolynomialSyntaxError("Expected `{}`".format(operator), self.peek().position)
        return token

    def parse(self):
        result = self.expr()
        token = self.peek()
        if token.kind != Token.END:
            raise PolynomialSyntaxError("Expected an operator, found `{}`".format(token.text), token.position)
        return result

    def expr(self):
        negative = False
        if self.accept("-"):
            negative = True
        else:
            self.accept("+")
        result = self.term()
        if negative:
            result = -result
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self):
        result = self.factor()
        while self.accept("*"):
            result = result * self.factor()
        return result

    def uint(self):
        token = self.peek()
        if token.kind != Token.INTEGER:
            raise PolynomialSyntaxError("Expected an unsigned integer", token.position)
        self.advance()
        return int(token.text)

    def factor(self):
        token = self.peek()
        if token.kind == Token.INTEGER:
            self.advance()
            numerator = int(token.text)
            if self.accept("/"):
                position = self.peek().position
                denominator = self.uint()
                if denominator == 0:
                    raise ZeroDenominatorError(position)
                return QPoly.constant(self.variables, QQ(numerator, denominator))
            return QPoly.constant(self.variables, numerator)
        if token.kind == Token.NAME:
            self.advance()
            if token.text in self.names:
                base = QPoly.gen(self.variables, token.text)
            elif token.text in self.constants:
                base = QPoly.constant(self.variables, self.constants[token.text])
            else:
                raise UnknownVariableError(token.text, token.position)
            if self.accept("^"):
                return base ** self.uint()
            return base
        if self.accept("("):
            result = self.expr()
            self.expect(")")
            return result
        if token.kind == Token.END:
            raise PolynomialSyntaxError("Unexpected end of input", token.position)
        raise PolynomialSyntaxError("Unexpected `{}`".format(token.text), token.position)


def parse_poly(text, variables, constants=None):
    """Parses `text` over the (name, weight) table `variables`.

    `constants` maps extra identifiers (normal-form parameters) to rational
    values; they behave like coefficients.
    """
    return Parser(text, variables, constants).parse()


@lru_cache(maxsize=None)
def _monomials_of_degree(weights, d):
    if not weights:
        return ((),) if d == 0 else ()
    found = []

    def extend(index, remaining, prefix):
        weight = weights[index]
        if index == len(weights) - 1:
            if remaining % weight == 0:
                found.append(prefix + (remaining // weight,))
            return
        for exponent in range(remaining // weight, -1, -1):
            extend(index + 1, remaining - exponent * weight, prefix + (exponent,))

    extend(0, d, ())
    return tuple(found)


def monomials_of_degree(weights, d):
    """All exponent vectors of weighted degree d, graded lex descending."""
    if d < 0:
        return []
    return list(_monomials_of_degree(tuple(weights), d))


def weighted_degree(p):
    if p.is_zero():
        raise ZeroPolynomialError("The zero polynomial has no weighted degree.")
    degrees = {p.monomial_degree(monom) for monom in p.element}
    if len(degrees) == 1:
        return degrees.pop()
    return MIXED


def partial_derivative(p, var):
    i = p.index(var)
    return QPoly.from_element(p.variables, p.element.diff(p.ring.gens[i]))


def substitute(p, assignments):
    """Simultaneous substitution of polynomials for variables."""
    if not assignments:
        return p
    replacements = []
    for var, value in assignments.items():
        if not isinstance(value, QPoly):
            value = QPoly.constant(p.variables, value)
        replacements.append((p.ring.gens[p.index(var)], p._coerce(value)))
    return QPoly.from_element(p.variables, p.element.compose(replacements))


def jacobian(p):
    return [partial_derivative(p, i) for i in range(len(p.variables))]


def _check_binary(*polys):
    used = set()
    for p in polys:
        if p.is_zero():
            raise ZeroPolynomialError("Binary form operations need nonzero input.")
        used |= p.support()
    if len(used) > 2:
        raise NotBinaryError("Expected forms in at most two variables, got {}.".format(
            sorted(polys[0].names[i] for i in used)))
    return sorted(used)


def binary_gcd(p, q):
    """Greatest common divisor, monic with respect to the graded lex order."""
    _check_binary(p, q)
    g = p.element.gcd(p._coerce(q))
    return QPoly.from_element(p.variables, g.monic())


def is_squarefree_binary(p):
    """True iff the form has no repeated factor.

    A repeated factor of a quasi-homogeneous binary form divides both partial
    derivatives, and a common factor of the form and both partials is
    repeated, so one gcd against each partial decides it.
    """
    used = _check_binary(p)
    common = p.element
    for i in used:
        common = common.gcd(p.element.diff(p.ring.gens[i]))
    return common.is_ground
