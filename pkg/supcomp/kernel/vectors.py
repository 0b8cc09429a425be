"""Finite atomic models of X and of its sup-completion X^s.

``AtomicSpace`` is the model of X = R^Omega with a strictly positive
probability weight per atom and the weak order unit e = (1, ..., 1).
``ExtVec`` is an element of X^s = (R ∪ {+inf})^Omega; ``LatVec`` is the
subclass of everywhere finite vectors, i.e. the elements of X itself.
Constructors normalize: building a vector whose coordinates are all finite
always yields a ``LatVec``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from supcomp.config import float_tolerance
from supcomp.errors import DimensionError, DomainError, ModelValidationError
from supcomp.kernel.scalars import (
    INF,
    Backend,
    ExtScalar,
    Scalar,
    coerce,
    format_scalar,
    is_finite,
    one,
    zero,
)


@dataclass(frozen=True)
class AtomicSpace:
    weights: tuple
    backend: Backend = Backend.RATIONAL
    names: Optional[tuple] = None

    def __post_init__(self):
        weights = tuple(coerce(w, self.backend) for w in self.weights)
        if not weights:
            raise ModelValidationError("weights", "an atomic space needs at least one atom")
        if any((not is_finite(w)) or w <= 0 for w in weights):
            raise ModelValidationError("weights", "every atom weight must be strictly positive")
        total = sum(weights)
        if self.backend is Backend.RATIONAL:
            if total != 1:
                raise ModelValidationError("weights", f"weights sum to {format_scalar(total)}, not 1")
        elif abs(total - 1.0) > float_tolerance():
            raise ModelValidationError("weights", f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", weights)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(weights):
                raise ModelValidationError("atoms", "one name per weight is required")
            if len(set(names)) != len(names):
                raise ModelValidationError("atoms", "atom names must be unique")
            object.__setattr__(self, "names", names)

    @classmethod
    def uniform(cls, atom_count: int, backend: Backend = Backend.RATIONAL) -> "AtomicSpace":
        return cls(tuple(Fraction(1, atom_count) for _ in range(atom_count)), backend)

    @property
    def atom_count(self) -> int:
        return len(self.weights)

    def __len__(self):
        return len(self.weights)

    def scalar(self, value) -> ExtScalar:
        return coerce(value, self.backend)

    def vector(self, values: Iterable) -> "ExtVec":
        coords = tuple(self.scalar(v) for v in values)
        if len(coords) != self.atom_count:
            raise DimensionError(
                f"expected {self.atom_count} coordinates, got {len(coords)}"
            )
        return make_vector(self, coords)

    def constant(self, value) -> "ExtVec":
        return self.vector([value] * self.atom_count)

    def unit(self) -> "LatVec":
        return self.constant(one(self.backend))

    def zero(self) -> "LatVec":
        return self.constant(zero(self.backend))

    def top(self) -> "ExtVec":
        return self.constant(INF)

    def indicator(self, atoms: Iterable[int]) -> "LatVec":
        chosen = set(atoms)
        return self.vector(1 if i in chosen else 0 for i in range(self.atom_count))

    def as_backend(self, backend: Backend) -> "AtomicSpace":
        if backend is self.backend:
            return self
        return AtomicSpace(tuple(float(w) if backend is Backend.FLOAT else Fraction(w) for w in self.weights),
                           backend, self.names)

    def require(self, other: "AtomicSpace") -> None:
        if other is not self and other != self:
            raise DimensionError("operands belong to different atomic spaces")


def make_vector(space: AtomicSpace, coords: Sequence[ExtScalar]) -> "ExtVec":
    coords = tuple(coords)
    if all(is_finite(c) for c in coords):
        return LatVec(space, coords)
    return ExtVec(space, coords)


@dataclass(frozen=True, eq=False)
class ExtVec:
    space: AtomicSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.atom_count:
            raise DimensionError(
                f"expected {self.space.atom_count} coordinates, got {len(self.coords)}"
            )

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExtVec):
            return NotImplemented
        return self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __le__(self, other: "ExtVec") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __ge__(self, other: "ExtVec") -> bool:
        self._check(other)
        return all(a >= b for a, b in zip(self.coords, other.coords))

    def close_to(self, other: "ExtVec", tolerance: Optional[float] = None) -> bool:
        """Exact equality in the rational backend, absolute tolerance in float."""
        self._check(other)
        if self.space.backend is Backend.RATIONAL:
            return self.coords == other.coords
        tol = float_tolerance() if tolerance is None else tolerance
        for a, b in zip(self.coords, other.coords):
            if is_finite(a) != is_finite(b):
                return False
            if is_finite(a) and abs(a - b) > tol:
                return False
        return True

    def dominated_by(self, other: "ExtVec", tolerance: Optional[float] = None) -> bool:
        """``self <= other`` up to the backend tolerance."""
        if self.space.backend is Backend.RATIONAL:
            return self <= other
        tol = float_tolerance() if tolerance is None else tolerance
        self._check(other)
        return all(b is INF or (a is not INF and a <= b + tol) for a, b in zip(self.coords, other.coords))

    # -- predicates -------------------------------------------------------
    def is_finite(self) -> bool:
        return all(is_finite(c) for c in self.coords)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def require_nonnegative(self, what: str = "argument") -> None:
        if not self.is_nonnegative():
            raise DomainError(f"{what} must lie in the positive cone")

    def as_lat(self) -> "LatVec":
        if not isinstance(self, LatVec):
            raise DomainError("vector has infinite coordinates")
        return self

    # -- lattice and cone operations --------------------------------------
    def _check(self, other: "ExtVec") -> None:
        if not isinstance(other, ExtVec):
            raise DimensionError(f"expected a vector, got {type(other).__name__}")
        self.space.require(other.space)

    def _with(self, coords) -> "ExtVec":
        return make_vector(self.space, coords)

    def __and__(self, other: "ExtVec") -> "ExtVec":
        self._check(other)
        return self._with(min(a, b) for a, b in zip(self.coords, other.coords))

    def __or__(self, other: "ExtVec") -> "ExtVec":
        self._check(other)
        return self._with(max(a, b) for a, b in zip(self.coords, other.coords))

    def __add__(self, other: "ExtVec") -> "ExtVec":
        if not isinstance(other, ExtVec):
            return NotImplemented
        self._check(other)
        return self._with(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "ExtVec") -> "ExtVec":
        if not isinstance(other, ExtVec):
            return NotImplemented
        self._check(other)
        if not isinstance(other, LatVec):
            raise DomainError("only finite vectors can be subtracted")
        return self._with(a - b for a, b in zip(self.coords, other.coords))

    def __rmul__(self, factor) -> "ExtVec":
        return self.scale(factor)

    def scale(self, factor) -> "ExtVec":
        lam = self.space.scalar(factor)
        if not is_finite(lam):
            raise DomainError("scalars must be finite")
        if lam < 0:
            if not self.is_finite():
                raise DomainError("negative multiples exist only for finite vectors")
            return self._with(lam * c for c in self.coords)
        if lam == 0:
            return self.space.zero()
        return self._with(c * lam if is_finite(c) else INF for c in self.coords)

    def pos_part(self) -> "ExtVec":
        z = zero(self.space.backend)
        return self._with(max(c, z) for c in self.coords)

    def neg_part(self) -> "LatVec":
        z = zero(self.space.backend)
        return self._with(z if c >= 0 else -c for c in self.coords)

    def map(self, fn) -> "ExtVec":
        return self._with(fn(c) for c in self.coords)

    def to_strings(self) -> list:
        return [format_scalar(c) for c in self.coords]

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index: int) -> ExtScalar:
        return self.coords[index]

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return f"{type(self).__name__}([{', '.join(self.to_strings())}])"


class LatVec(ExtVec):
    """An element of X: every coordinate finite."""

    def __post_init__(self):
        super().__post_init__()
        if not all(is_finite(c) for c in self.coords):
            raise DomainError("a lattice vector cannot have infinite coordinates")

    def __neg__(self) -> "LatVec":
        return self._with(-c for c in self.coords)

    def __abs__(self) -> "LatVec":
        return self._with(abs(c) for c in self.coords)

    def __mul__(self, other) -> "LatVec":
        """Pointwise product (the f-algebra product with unit e) or scaling."""
        if isinstance(other, ExtVec):
            self._check(other)
            if not isinstance(other, LatVec):
                return NotImplemented
            return self._with(a * b for a, b in zip(self.coords, other.coords))
        return self.scale(other)

    def total(self) -> Scalar:
        """Integral of the vector against the atom weights."""
        return sum((w * c for w, c in zip(self.space.weights, self.coords)), zero(self.space.backend))


def meet(x: ExtVec, y: ExtVec) -> ExtVec:
    return x & y


def join(x: ExtVec, y: ExtVec) -> ExtVec:
    return x | y


def add(x: ExtVec, y: ExtVec) -> ExtVec:
    return x + y


def scale(factor, x: ExtVec) -> ExtVec:
    return x.scale(factor)


def pos_part(x: ExtVec) -> ExtVec:
    return x.pos_part()


def neg_part(x: ExtVec) -> LatVec:
    return x.neg_part()


def sup_of(vectors: Iterable[ExtVec]) -> ExtVec:
    vectors = list(vectors)
    if not vectors:
        raise DomainError("the supremum of an empty family is not taken")
    result = vectors[0]
    for v in vectors[1:]:
        result = result | v
    return result


def inf_of(vectors: Iterable[ExtVec]) -> ExtVec:
    vectors = list(vectors)
    if not vectors:
        raise DomainError("the infimum of an empty family is not taken")
    result = vectors[0]
    for v in vectors[1:]:
        result = result & v
    return result


def sum_of(vectors: Iterable[ExtVec], space: AtomicSpace) -> ExtVec:
    result = space.zero()
    for v in vectors:
        result = result + v
    return result
