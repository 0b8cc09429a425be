"""Extended scalars: finite values of a backend plus a single +infinity.

Elements of the sup-completion take values in R ∪ {+inf}; -inf never occurs
because negative parts are always finite. The finite values are either exact
``Fraction`` objects (rational backend) or ``float`` (float backend).
"""
from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from numbers import Real
from typing import Union

from supcomp.errors import BackendError, DomainError


class Backend(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"


class PlusInfinity:
    """The top value of the extended scalars.

    Only one instance exists (``INF``). Arithmetic follows the cone
    conventions: ``a + inf = inf``, ``0 * inf = 0`` and ``t * inf = inf`` for
    ``t > 0``. Anything that would produce -inf raises ``DomainError``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (PlusInfinity, ())

    def __eq__(self, other):
        return other is self or (isinstance(other, float) and other == math.inf)

    def __hash__(self):
        return hash(math.inf)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return self == other

    def __gt__(self, other):
        return not self == other

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if other is self or isinstance(other, Real):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise DomainError("inf - inf is undefined in the sup-completion")
        if isinstance(other, Real):
            return self
        return NotImplemented

    def __rsub__(self, other):
        raise DomainError("finite - inf would be -inf, which is not representable")

    def __neg__(self):
        raise DomainError("-inf is not an element of the sup-completion")

    def __mul__(self, other):
        if other is self:
            return self
        if isinstance(other, Real):
            if other < 0:
                raise DomainError("negative multiple of inf")
            return other if other == 0 else self
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self):
        return math.inf

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = PlusInfinity()

Scalar = Union[Fraction, float]
ExtScalar = Union[Fraction, float, PlusInfinity]


def is_finite(value: ExtScalar) -> bool:
    return value is not INF


def coerce(value, backend: Backend) -> ExtScalar:
    """Convert ints, floats, Fractions and "p/q" / "inf" strings to a scalar."""
    if value is INF:
        return INF
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "∞"):
            return INF
        value = Fraction(text)
    if isinstance(value, float):
        if math.isnan(value):
            raise DomainError("NaN is not an extended scalar")
        if value == math.inf:
            return INF
        if value == -math.inf:
            raise DomainError("-inf is not an extended scalar")
    if backend is Backend.RATIONAL:
        return Fraction(value)
    return float(value)


def zero(backend: Backend) -> Scalar:
    return Fraction(0) if backend is Backend.RATIONAL else 0.0


def one(backend: Backend) -> Scalar:
    return Fraction(1) if backend is Backend.RATIONAL else 1.0


def format_scalar(value: ExtScalar) -> str:
    if value is INF:
        return "inf"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def ext_mul(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    """Product of two nonnegative extended scalars with ``0 * inf = 0``."""
    if a < 0 or b < 0:
        raise DomainError("extended product is only defined on the positive cone")
    if a is INF:
        return INF * b
    if b is INF:
        return INF * a
    return a * b


def exp(value: Scalar, backend: Backend) -> float:
    if backend is not Backend.FLOAT:
        raise BackendError("exp requires the float backend")
    return math.exp(value)
