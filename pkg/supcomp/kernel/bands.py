"""Bands of a finite atomic space and the finite/infinite part decomposition.

In the atomic model every band is a projection band given by a set of atoms,
so a ``Band`` is a boolean mask. ``~B`` is the disjoint complement B^d, ``|``
and ``&`` are the band lattice operations.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from supcomp.errors import DimensionError, DomainError, InvariantError
from supcomp.kernel.scalars import INF, is_finite, zero
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, make_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Band:
    space: AtomicSpace
    mask: tuple

    def __post_init__(self):
        mask = tuple(bool(m) for m in self.mask)
        if len(mask) != self.space.atom_count:
            raise DimensionError(f"band mask has {len(mask)} entries for {self.space.atom_count} atoms")
        object.__setattr__(self, "mask", mask)

    @classmethod
    def of_atoms(cls, space: AtomicSpace, atoms: Iterable[int]) -> "Band":
        chosen = set(atoms)
        bad = [a for a in chosen if not 0 <= a < space.atom_count]
        if bad:
            raise DimensionError(f"atoms {sorted(bad)} are outside the space")
        return cls(space, tuple(i in chosen for i in range(space.atom_count)))

    @classmethod
    def full(cls, space: AtomicSpace) -> "Band":
        return cls(space, (True,) * space.atom_count)

    @classmethod
    def empty(cls, space: AtomicSpace) -> "Band":
        return cls(space, (False,) * space.atom_count)

    @property
    def atoms(self) -> tuple:
        return tuple(i for i, m in enumerate(self.mask) if m)

    def is_empty(self) -> bool:
        return not any(self.mask)

    def is_full(self) -> bool:
        return all(self.mask)

    def _check(self, other: "Band") -> None:
        if not isinstance(other, Band):
            raise DimensionError(f"expected a band, got {type(other).__name__}")
        self.space.require(other.space)

    def __or__(self, other: "Band") -> "Band":
        self._check(other)
        return Band(self.space, tuple(a or b for a, b in zip(self.mask, other.mask)))

    def __and__(self, other: "Band") -> "Band":
        self._check(other)
        return Band(self.space, tuple(a and b for a, b in zip(self.mask, other.mask)))

    def __invert__(self) -> "Band":
        return Band(self.space, tuple(not m for m in self.mask))

    def __le__(self, other: "Band") -> bool:
        self._check(other)
        return all(b or not a for a, b in zip(self.mask, other.mask))

    def __ge__(self, other: "Band") -> bool:
        return other <= self

    def __contains__(self, atom: int) -> bool:
        return self.mask[atom]

    def project(self, x: ExtVec) -> ExtVec:
        self.space.require(x.space)
        z = zero(self.space.backend)
        return make_vector(self.space, (c if m else z for c, m in zip(x.coords, self.mask)))

    def unit(self) -> LatVec:
        """P_B e, the indicator of the band."""
        return self.project(self.space.unit())

    def infinity(self) -> ExtVec:
        return infinity_of(self)

    def __repr__(self):
        return f"Band({list(self.atoms)})"


def project(band: Band, x: ExtVec) -> ExtVec:
    return band.project(x)


def infinity_of(band: Band) -> ExtVec:
    z = zero(band.space.backend)
    return make_vector(band.space, (INF if m else z for m in band.mask))


def support(x: ExtVec) -> Band:
    """The band generated by ``x``: atoms where x is nonzero."""
    return Band(x.space, tuple(c != 0 for c in x.coords))


def positive_band(x: ExtVec) -> Band:
    """Band of x^+: atoms where x > 0."""
    return Band(x.space, tuple(c > 0 for c in x.coords))


def split_parts(x: ExtVec) -> Tuple[Band, LatVec]:
    """Unique decomposition x = ∞_B + u with u ⊥ B for x >= 0."""
    x.require_nonnegative("split_parts argument")
    band = Band(x.space, tuple(not is_finite(c) for c in x.coords))
    return band, (~band).project(x)


def infinite_part(x: ExtVec) -> ExtVec:
    band, _ = split_parts(x)
    return infinity_of(band)


def finite_part(x: ExtVec) -> LatVec:
    _, u = split_parts(x)
    return u


def infinite_band_by_truncation(x: ExtVec, u: Optional[LatVec] = None) -> Band:
    """Infimum of the bands of (x - k u)^+ over k = 1, 2, ...

    The bands decrease in k and are constant from
    k* = 1 + ceil(max finite x / min positive u) on.
    """
    space = x.space
    x.require_nonnegative("truncated vector")
    if u is None:
        u = space.unit()
    space.require(u.space)
    u = u.as_lat()
    u.require_nonnegative("truncation unit")

    finite_values = [c for c in x.coords if is_finite(c)]
    positive_units = [c for c in u.coords if c > 0]
    top = max(finite_values, default=zero(space.backend))
    if positive_units:
        bound = 1 + math.ceil(top / min(positive_units))
    else:
        bound = 1

    def band_at(k: int) -> Band:
        return Band(space, tuple(c is INF or c > k * w for c, w in zip(x.coords, u.coords)))

    # the band at k only changes where k reaches some ceil(x_i / u_i)
    breakpoints = {1, bound}
    breakpoints.update(
        max(1, math.ceil(c / w)) for c, w in zip(x.coords, u.coords) if is_finite(c) and w > 0
    )
    result = Band.full(space)
    previous = None
    for k in sorted(breakpoints):
        current = band_at(k)
        if previous is not None and not current <= previous:
            raise InvariantError(f"truncation bands are not decreasing at k={k}")
        result = result & current
        previous = current
    if band_at(bound + 1) != band_at(bound):
        raise InvariantError(f"truncation bands did not stabilize by k={bound}")
    logger.debug("truncation bands stabilized at k=%d", bound)
    return result


def truncation_band_closed_form(x: ExtVec, u: Optional[LatVec] = None) -> Band:
    """P_u P_{x^∞} + P_u^d P_x, the closed form of the truncation infimum."""
    if u is None:
        u = x.space.unit()
    infinite_band, _ = split_parts(x)
    u_band = support(u)
    return (u_band & infinite_band) | (~u_band & support(x))
