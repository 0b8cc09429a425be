"""Extended arithmetic on the sup-completion.

Riesz decomposition, the product on the positive cone, truncation and the
exp functional calculus on the ideal of e. Products and exp follow the cone
conventions ``0 * inf = 0`` and ``exp(-inf) = 0``.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Tuple

from supcomp.errors import BackendError, ContractError, DomainError
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF, Backend, exp, ext_mul, is_finite, zero
from supcomp.kernel.vectors import ExtVec, LatVec, make_vector

logger = logging.getLogger(__name__)


def _decompose_coordinate(x, y, z, nil):
    if x is INF:
        if y is INF:
            return INF, (nil if z is INF else min(nil, z))
        return y, INF
    y1 = min(x, y)
    if z is not INF:
        y1 = max(y1, x - z)
    return y1, x - y1


def riesz_decompose(x: ExtVec, y: ExtVec, z: ExtVec) -> Tuple[ExtVec, ExtVec]:
    """Split ``x <= y + z`` as ``x = y1 + z1`` with ``y1 <= y`` and ``z1 <= z``.

    Greedy rule: y1 takes as much of x as y allows and z1 absorbs the rest.
    A finite x always splits into two finite parts.
    """
    x._check(y)
    x._check(z)
    if not x <= y + z:
        raise ContractError("riesz_decompose requires x <= y + z")
    nil = zero(x.space.backend)
    pairs = [_decompose_coordinate(a, b, c, nil) for a, b, c in zip(x.coords, y.coords, z.coords)]
    y1 = make_vector(x.space, (p[0] for p in pairs))
    z1 = make_vector(x.space, (p[1] for p in pairs))
    return y1, z1


def multiply(x: ExtVec, y: ExtVec) -> ExtVec:
    x._check(y)
    if not (x.is_nonnegative() and y.is_nonnegative()):
        raise DomainError("multiplication is defined on the positive cone only")
    return make_vector(x.space, (ext_mul(a, b) for a, b in zip(x.coords, y.coords)))


def mul_infinity_band(x: ExtVec, band: Band) -> ExtVec:
    """x . ∞_B, which equals ∞ on the part of B where x is positive."""
    x.require_nonnegative("mul_infinity_band argument")
    band.space.require(x.space)
    nil = zero(x.space.backend)
    return make_vector(x.space, (INF if m and c > 0 else nil for c, m in zip(x.coords, band.mask)))


def truncate(x: ExtVec, k) -> LatVec:
    """x ∧ k e for x >= 0."""
    x.require_nonnegative("truncated vector")
    level = x.space.scalar(k)
    if level is INF or level <= 0:
        raise DomainError("truncation level must be a positive number")
    return x & x.space.constant(level)


def cap(x: ExtVec, k) -> LatVec:
    """x ∧ k e without a sign requirement; finite whenever x^- is."""
    return x & x.space.constant(x.space.scalar(k))


def _require_float(x: ExtVec, what: str) -> None:
    if x.space.backend is not Backend.FLOAT:
        raise BackendError(f"{what} requires the float backend")


def exp_neg(x: ExtVec) -> LatVec:
    _require_float(x, "exp_neg")
    x.require_nonnegative("exp_neg argument")
    return make_vector(x.space, (0.0 if c is INF else exp(-c, Backend.FLOAT) for c in x.coords))


def exp_pos(x: LatVec) -> LatVec:
    _require_float(x, "exp")
    x = x.as_lat()
    return make_vector(x.space, (exp(c, Backend.FLOAT) for c in x.coords))


def power(x: ExtVec, r) -> ExtVec:
    """|x|^r for r > 0. Integer exponents stay exact in the rational backend."""
    if isinstance(r, Fraction) and r.denominator == 1:
        r = int(r)
    if isinstance(r, float) and r.is_integer():
        r = int(r)
    if r <= 0:
        raise DomainError("power requires a positive exponent")
    if not isinstance(r, int) and x.space.backend is not Backend.FLOAT:
        raise BackendError("non-integer powers require the float backend")

    def raise_to(c):
        if not is_finite(c):
            return INF
        return abs(c) ** r

    return make_vector(x.space, (raise_to(c) for c in x.coords))
