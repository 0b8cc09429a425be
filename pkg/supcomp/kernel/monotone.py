"""Order continuous increasing maps and their extension to the sup-completion.

A ``MonotoneMap`` is an expression tree. Leaves are positive linear maps,
band projections, conditional expectations and coordinatewise increasing
scalar functions; inner nodes are composition, sum, meet and join. The
extension f^s is evaluated structurally: leaves use extended arithmetic and
composite nodes recurse, since (f + g)^s = f^s + g^s and (g∘f)^s = g^s∘f^s.
``truncation_limit`` computes lim_k f(x ∧ k e) directly and serves as the
oracle for ``extend_map``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from supcomp.errors import DimensionError, DomainError, InvariantError
from supcomp.kernel.arithmetic import cap
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.scalars import INF, Backend, ExtScalar, coerce, is_finite, zero
from supcomp.kernel.vectors import ExtVec, LatVec, make_vector

logger = logging.getLogger(__name__)


class MonotoneMap:
    def evaluate(self, x: LatVec) -> LatVec:
        raise NotImplementedError

    def extend(self, x: ExtVec) -> ExtVec:
        raise NotImplementedError

    def constants(self) -> list:
        """Magnitudes of the thresholds inside the tree."""
        return []

    def __call__(self, x: ExtVec) -> ExtVec:
        if isinstance(x, LatVec):
            return self.evaluate(x)
        return self.extend(x)

    def __add__(self, other: "MonotoneMap") -> "MonotoneMap":
        return Sum(self, other)

    def __and__(self, other: "MonotoneMap") -> "MonotoneMap":
        return Meet(self, other)

    def __or__(self, other: "MonotoneMap") -> "MonotoneMap":
        return Join(self, other)

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        return Compose(self, other)


@dataclass(frozen=True)
class Linear(MonotoneMap):
    """x -> A x for a matrix with nonnegative entries."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(a) if not isinstance(a, float) else a for a in row) for row in self.matrix)
        if any(a < 0 for row in rows for a in row):
            raise DomainError("linear nodes need nonnegative coefficients")
        if len({len(row) for row in rows}) > 1:
            raise DimensionError("matrix rows have different lengths")
        object.__setattr__(self, "matrix", rows)

    def _check(self, x: ExtVec) -> None:
        if len(self.matrix) != x.space.atom_count or any(len(r) != x.space.atom_count for r in self.matrix):
            raise DimensionError("matrix does not match the atomic space")

    def evaluate(self, x: LatVec) -> LatVec:
        return self.extend(x).as_lat()

    def extend(self, x: ExtVec) -> ExtVec:
        self._check(x)
        nil = zero(x.space.backend)

        def row_value(row):
            total = nil
            for a, c in zip(row, x.coords):
                a = x.space.scalar(a)
                if a == 0:
                    continue
                total = total + (INF if c is INF else a * c)
            return total

        return make_vector(x.space, (row_value(row) for row in self.matrix))

    def __repr__(self):
        return f"Linear({[[str(a) for a in row] for row in self.matrix]})"


@dataclass(frozen=True)
class Projection(MonotoneMap):
    band: Band

    def evaluate(self, x: LatVec) -> LatVec:
        return self.band.project(x)

    def extend(self, x: ExtVec) -> ExtVec:
        return self.band.project(x)


@dataclass(frozen=True)
class Expectation(MonotoneMap):
    condexp: CondExp

    def evaluate(self, x: LatVec) -> LatVec:
        return self.condexp.apply(x)

    def extend(self, x: ExtVec) -> ExtVec:
        return self.condexp.extend(x)


@dataclass(frozen=True)
class ScalarFunction(MonotoneMap):
    """A continuous increasing function applied to every coordinate.

    ``limit`` is the value at +inf (a number or INF); None means the function
    has no declared limit and cannot be extended.
    """

    fn: Callable
    limit: Optional[ExtScalar]
    name: str
    threshold: Fraction = Fraction(0)

    def evaluate(self, x: LatVec) -> LatVec:
        return x.map(lambda c: x.space.scalar(self.fn(c)))

    def extend(self, x: ExtVec) -> ExtVec:
        if self.limit is None and not x.is_finite():
            raise DomainError(f"scalar function {self.name!r} has no limit at +inf")

        def value(c):
            if c is INF:
                return self.limit if self.limit is INF else x.space.scalar(self.limit)
            return x.space.scalar(self.fn(c))

        return x.map(value)

    def constants(self) -> list:
        return [abs(self.threshold)]

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Compose(MonotoneMap):
    outer: MonotoneMap
    inner: MonotoneMap

    def evaluate(self, x: LatVec) -> LatVec:
        return self.outer.evaluate(self.inner.evaluate(x))

    def extend(self, x: ExtVec) -> ExtVec:
        return self.outer.extend(self.inner.extend(x))

    def constants(self) -> list:
        return self.outer.constants() + self.inner.constants()


@dataclass(frozen=True)
class Sum(MonotoneMap):
    left: MonotoneMap
    right: MonotoneMap

    def evaluate(self, x: LatVec) -> LatVec:
        return self.left.evaluate(x) + self.right.evaluate(x)

    def extend(self, x: ExtVec) -> ExtVec:
        return self.left.extend(x) + self.right.extend(x)

    def constants(self) -> list:
        return self.left.constants() + self.right.constants()


@dataclass(frozen=True)
class Meet(MonotoneMap):
    left: MonotoneMap
    right: MonotoneMap

    def evaluate(self, x: LatVec) -> LatVec:
        return self.left.evaluate(x) & self.right.evaluate(x)

    def extend(self, x: ExtVec) -> ExtVec:
        return self.left.extend(x) & self.right.extend(x)

    def constants(self) -> list:
        return self.left.constants() + self.right.constants()


@dataclass(frozen=True)
class Join(MonotoneMap):
    left: MonotoneMap
    right: MonotoneMap

    def evaluate(self, x: LatVec) -> LatVec:
        return self.left.evaluate(x) | self.right.evaluate(x)

    def extend(self, x: ExtVec) -> ExtVec:
        return self.left.extend(x) | self.right.extend(x)

    def constants(self) -> list:
        return self.left.constants() + self.right.constants()


# -- built-in scalar functions ------------------------------------------------

def identity() -> ScalarFunction:
    return ScalarFunction(lambda c: c, INF, "id")


def positive_part() -> ScalarFunction:
    return ScalarFunction(lambda c: max(c, 0 * c), INF, "pos")


def clamp(level) -> ScalarFunction:
    """t -> min(t, level), with limit ``level`` at +inf."""
    level = Fraction(level)
    return ScalarFunction(lambda c: min(c, coerce(level, _backend_of(c))), level, f"clamp({level})", level)


def affine(slope, offset) -> ScalarFunction:
    """t -> slope * t + offset for slope >= 0."""
    slope, offset = Fraction(slope), Fraction(offset)
    if slope < 0:
        raise DomainError("affine nodes need a nonnegative slope")
    limit = INF if slope > 0 else offset

    def fn(c):
        backend = _backend_of(c)
        return coerce(slope, backend) * c + coerce(offset, backend)

    return ScalarFunction(fn, limit, f"affine({slope}, {offset})", offset)


def _backend_of(value) -> Backend:
    return Backend.FLOAT if isinstance(value, float) else Backend.RATIONAL


def extend_map(f: MonotoneMap, x: ExtVec) -> ExtVec:
    return f.extend(x)


# -- truncation oracle ----------------------------------------------------------

def _same(a, b, backend: Backend) -> bool:
    if backend is Backend.RATIONAL:
        return a == b
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)


def truncation_limit(f: MonotoneMap, x: ExtVec, max_doublings: int = 80, start: Optional[int] = None) -> ExtVec:
    """lim_k f(x ∧ k e), computed by doubling k.

    Once k exceeds every threshold in the tree and every finite coordinate of
    x, each output coordinate is affine in k. A coordinate is settled when
    three consecutive increments are all zero (finite limit) or double each
    time with a positive first increment (limit +inf).
    """
    space = x.space
    backend = space.backend
    finite = [abs(c) for c in x.coords if is_finite(c)]
    # crossings of affine pieces with slope gaps down to 1/64 lie below start
    if start is None:
        start = 64 * (1 + math.ceil(max(finite + f.constants() + [0])))
    k = 1 << max(0, math.ceil(math.log2(start)))
    values = [f.evaluate(cap(x, k * (2 ** i)).as_lat()) for i in range(4)]
    for _ in range(max_doublings):
        result = []
        for atom in range(space.atom_count):
            v = [vals.coords[atom] for vals in values]
            d1, d2, d3 = v[1] - v[0], v[2] - v[1], v[3] - v[2]
            if _same(d1, 0, backend) and _same(d2, 0, backend) and _same(d3, 0, backend):
                result.append(v[3])
            elif d1 > 0 and _same(d2, 2 * d1, backend) and _same(d3, 2 * d2, backend):
                result.append(INF)
            else:
                break
        else:
            return make_vector(space, result)
        k *= 2
        values = values[1:] + [f.evaluate(cap(x, k * 8).as_lat())]
    raise InvariantError("truncation limit did not settle")
