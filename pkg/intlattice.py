"""
Integer lattices: Smith normal form, kernels and finitely generated abelian groups.
"""

import logging
from functools import total_ordering

import numpy
from sympy import Matrix, factorint
from sympy.matrices.normalforms import hermite_normal_form as _sympy_hnf

logger = logging.getLogger(__name__)


class LatticeError(Exception):
    pass


def as_integer_matrix(rows, columns=None):
    rows = [[int(entry) for entry in row] for row in rows]
    if not rows:
        return numpy.zeros((0, columns or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise LatticeError("Ragged matrix rows: {}".format([len(row) for row in rows]))
    return numpy.array(rows, dtype=object).reshape(len(rows), width)


def identity(n):
    matrix = numpy.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def _determinant(matrix):
    if matrix.shape[0] == 0:
        return 1
    return Matrix(matrix.tolist()).det()


def _pivot(D, start):
    best = None
    rows, columns = D.shape
    for i in range(start, rows):
        for j in range(start, columns):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return best


def smith_normal_form(M):
    """Returns (U, D, V) with U*M*V == D diagonal, d_1 | d_2 | ... and U, V unimodular."""
    M = as_integer_matrix(M) if not isinstance(M, numpy.ndarray) else M.astype(object)
    rows, columns = M.shape
    D = M.copy()
    U = identity(rows)
    V = identity(columns)

    for start in range(min(rows, columns)):
        while True:
            pivot = _pivot(D, start)
            if pivot is None:
                break
            _, i, j = pivot
            D[[start, i], :] = D[[i, start], :]
            U[[start, i], :] = U[[i, start], :]
            D[:, [start, j]] = D[:, [j, start]]
            V[:, [start, j]] = V[:, [j, start]]

            p = D[start, start]
            dirty = False
            for i in range(start + 1, rows):
                q = D[i, start] // p
                if q:
                    D[i, :] -= q * D[start, :]
                    U[i, :] -= q * U[start, :]
                dirty |= D[i, start] != 0
            for j in range(start + 1, columns):
                q = D[start, j] // p
                if q:
                    D[:, j] -= q * D[:, start]
                    V[:, j] -= q * V[:, start]
                dirty |= D[start, j] != 0
            if dirty:
                continue

            offender = next(((i, j) for i in range(start + 1, rows) for j in range(start + 1, columns)
                             if D[i, j] % p), None)
            if offender is None:
                break
            D[start, :] += D[offender[0], :]
            U[start, :] += U[offender[0], :]

        if pivot is None:
            break
        if D[start, start] < 0:
            D[start, :] = -D[start, :]
            U[start, :] = -U[start, :]

    _verify(M, D, U, V)
    return U, D, V


def _verify(M, D, U, V):
    if not (U.dot(M).dot(V) == D).all():
        raise LatticeError("Smith decomposition does not reproduce the input matrix.")
    for name, matrix in (("U", U), ("V", V)):
        if abs(_determinant(matrix)) != 1:
            raise LatticeError("Transform {} is not unimodular.".format(name))
    rows, columns = D.shape
    for i in range(rows):
        for j in range(columns):
            if i != j and D[i, j]:
                raise LatticeError("Smith form is not diagonal at ({}, {}).".format(i, j))


def diagonal(D):
    return [D[i, i] for i in range(min(D.shape)) if D[i, i]]


def rank(M):
    _, D, _ = smith_normal_form(M)
    return len(diagonal(D))


def kernel_basis(M):
    """A basis of the integer kernel {v : M v = 0}, each vector with positive leading entry."""
    M = as_integer_matrix(M) if not isinstance(M, numpy.ndarray) else M
    _, D, V = smith_normal_form(M)
    r = len(diagonal(D))
    basis = []
    for j in range(r, V.shape[1]):
        vector = [int(v) for v in V[:, j]]
        leading = next(v for v in vector if v)
        if leading < 0:
            vector = [-v for v in vector]
        basis.append(tuple(vector))
    return basis


def hermite_normal_form(M):
    return _sympy_hnf(Matrix(as_integer_matrix(M).tolist()))


@total_ordering
class AbelianGroup:
    """A finitely generated abelian group Z^free x Z/d_1 x ... x Z/d_k with d_1 | ... | d_k."""

    def __init__(self, invariant_factors=(), free_rank=0):
        factors = [int(d) for d in invariant_factors if int(d) != 1]
        if any(d <= 0 for d in factors):
            raise LatticeError("Invariant factors must be positive: {}".format(factors))
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise LatticeError("Invariant factors must form a divisibility chain: {}".format(factors))
        self.invariant_factors = tuple(factors)
        self.free_rank = int(free_rank)

    @classmethod
    def from_cyclic_orders(cls, orders):
        """Canonical form of a product of cyclic groups of the given orders."""
        orders = [int(n) for n in orders]
        if not orders:
            return cls()
        _, D, _ = smith_normal_form(as_integer_matrix([[n if i == j else 0 for j in range(len(orders))]
                                                       for i, n in enumerate(orders)]))
        free = sum(1 for n in orders if n == 0)
        return cls(diagonal(D), free)

    @classmethod
    def trivial(cls):
        return cls()

    def primary_factors(self):
        """Prime power orders of the elementary divisors, sorted."""
        powers = []
        for d in self.invariant_factors:
            powers.extend(p ** e for p, e in factorint(d).items())
        return sorted(powers)

    def order(self):
        if self.free_rank:
            return 0
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    def is_trivial(self):
        return not self.invariant_factors and not self.free_rank

    def __mul__(self, other):
        return AbelianGroup.from_cyclic_orders(self.invariant_factors + other.invariant_factors
                                               + (0,) * (self.free_rank + other.free_rank))

    def _key(self):
        return self.free_rank, self.invariant_factors

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self._key() == other._key()

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if self.is_trivial():
            return "1"
        pieces = []
        counts = {}
        for d in self.primary_factors():
            counts[d] = counts.get(d, 0) + 1
        for d, count in sorted(counts.items()):
            pieces.append("Z{}".format(d) if count == 1 else "Z{}^{}".format(d, count))
        if self.free_rank:
            pieces.append("Z" if self.free_rank == 1 else "Z^{}".format(self.free_rank))
        return " x ".join(pieces)

    def __repr__(self):
        return "AbelianGroup({}, free_rank={})".format(list(self.invariant_factors), self.free_rank)


def quotient_group(generators, n):
    """The abelian group Z^n / <generators>."""
    relations = as_integer_matrix(generators, columns=n)
    if relations.shape[0] == 0:
        return AbelianGroup((), n)
    if relations.shape[1] != n:
        raise LatticeError("Generators live in Z^{}, expected Z^{}.".format(relations.shape[1], n))
    _, D, _ = smith_normal_form(relations)
    factors = diagonal(D)
    return AbelianGroup([d for d in factors if d > 1], n - len(factors))
