"""Conditional expectations on a finite atomic space.

A ``CondExp`` is given by a partition of the atoms into blocks; it replaces
each coordinate by the weighted average of its block. Weights are the atom
weights of the space, so T is strictly positive and Te = e.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from supcomp.config import independence_limit
from supcomp.errors import InvariantError, ModelValidationError, SizeError
from supcomp.kernel.arithmetic import power
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF, Backend, zero
from supcomp.kernel.sequences import Geometric, VecSeq, Zero, liminf_seq, limit_points, limsup_seq
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, make_vector

logger = logging.getLogger(__name__)

EPSILON_GRID = tuple(2 ** -i for i in range(13))

# complement choices are enumerated alongside subsets up to this family size
COMPLEMENT_ENUMERATION_LIMIT = 8


@dataclass(frozen=True)
class CondExp:
    space: AtomicSpace
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(set(b))) for b in self.blocks)
        if any(not b for b in blocks):
            raise ModelValidationError("partition", "blocks must be nonempty")
        seen = [a for b in blocks for a in b]
        if len(seen) != len(set(seen)):
            raise ModelValidationError("partition", "blocks must be disjoint")
        if sorted(seen) != list(range(self.space.atom_count)):
            raise ModelValidationError("partition", "blocks must cover every atom exactly once")
        object.__setattr__(self, "blocks", tuple(sorted(blocks)))

    @classmethod
    def identity(cls, space: AtomicSpace) -> "CondExp":
        return cls(space, tuple((i,) for i in range(space.atom_count)))

    @classmethod
    def trivial(cls, space: AtomicSpace) -> "CondExp":
        return cls(space, (tuple(range(space.atom_count)),))

    @classmethod
    def from_labels(cls, space: AtomicSpace, labels: Sequence) -> "CondExp":
        groups: dict = {}
        for atom, label in enumerate(labels):
            groups.setdefault(label, []).append(atom)
        return cls(space, tuple(tuple(g) for g in groups.values()))

    @cached_property
    def block_index(self) -> tuple:
        index = [0] * self.space.atom_count
        for b, block in enumerate(self.blocks):
            for atom in block:
                index[atom] = b
        return tuple(index)

    def _average(self, coords, block):
        weights = self.space.weights
        mass = sum((weights[a] for a in block), zero(self.space.backend))
        return sum((weights[a] * coords[a] for a in block), zero(self.space.backend)) / mass

    def apply(self, x: LatVec) -> LatVec:
        self.space.require(x.space)
        x = x.as_lat()
        means = [self._average(x.coords, block) for block in self.blocks]
        return make_vector(self.space, (means[self.block_index[a]] for a in range(self.space.atom_count)))

    def extend(self, x: ExtVec) -> ExtVec:
        """T^s: ∞ on every block meeting the infinite band, averages elsewhere."""
        self.space.require(x.space)
        means = []
        for block in self.blocks:
            if any(x.coords[a] is INF for a in block):
                means.append(INF)
            else:
                means.append(self._average(x.coords, block))
        return make_vector(self.space, (means[self.block_index[a]] for a in range(self.space.atom_count)))

    def apply_ext(self, x: ExtVec) -> ExtVec:
        x.require_nonnegative("apply_ext argument")
        return self.extend(x)

    def __call__(self, x: ExtVec) -> ExtVec:
        if isinstance(x, LatVec):
            return self.apply(x)
        return self.apply_ext(x)

    def in_range(self, x: ExtVec) -> bool:
        self.space.require(x.space)
        return all(len({x.coords[a] for a in block}) == 1 for block in self.blocks)

    def is_union_of_blocks(self, band: Band) -> bool:
        self.space.require(band.space)
        return all(len({band.mask[a] for a in block}) == 1 for block in self.blocks)

    def commutes(self, band: Band) -> bool:
        return self.is_union_of_blocks(band)

    def commutation_witness(self, band: Band) -> Optional[LatVec]:
        """A basis vector x with T P x != P T x, or None when T and P commute."""
        for atom in range(self.space.atom_count):
            x = self.space.indicator([atom])
            if self.apply(band.project(x)) != band.project(self.apply(x)):
                return x
        return None

    def saturate(self, band: Band) -> Band:
        """The smallest union of blocks containing ``band``."""
        atoms = [a for block in self.blocks if any(band.mask[i] for i in block) for a in block]
        return Band.of_atoms(self.space, atoms)

    def is_coarsening_of(self, other: "CondExp") -> bool:
        """True when every block of self is a union of blocks of ``other``."""
        self.space.require(other.space)
        return all(
            len({self.block_index[a] for a in block}) == 1 for block in other.blocks
        )

    def __repr__(self):
        return f"CondExp({[list(b) for b in self.blocks]})"


def apply(t: CondExp, x: LatVec) -> LatVec:
    return t.apply(x)


def apply_ext(t: CondExp, x: ExtVec) -> ExtVec:
    return t.apply_ext(x)


def in_range(t: CondExp, x: ExtVec) -> bool:
    return t.in_range(x)


def commutes(t: CondExp, band: Band) -> bool:
    return t.commutes(band)


def exceedance_band(x: LatVec, target: LatVec, epsilon) -> Band:
    """The band of (|x - target| - ε e)^+."""
    eps = x.space.scalar(epsilon)
    return Band(x.space, tuple(abs(a - b) > eps for a, b in zip(x.coords, target.coords)))


# -- convergence in T-conditional probability ----------------------------------

def eventual_exceedance_bands(xs: VecSeq, target: LatVec, eps) -> List[Band]:
    """The bands of (|x_n - target| - ε e)^+ that recur for arbitrarily large n."""
    space = xs.space
    tail = xs.tail
    if isinstance(tail, Zero):
        return [exceedance_band(space.zero(), target, eps)]
    if isinstance(tail, Geometric):
        mask = []
        for v, t in zip(tail.value.coords, target.coords):
            size = abs(t)
            if size != eps:
                mask.append(size > eps)
            else:
                mask.append(t < 0 and v > 0)
        return [Band(space, tuple(mask))]
    return [exceedance_band(v, target, eps) for v in tail.vectors()]


def epsilon_grid(xs: VecSeq, target: LatVec, grid: Optional[Iterable]) -> list:
    space = xs.space
    points = [space.scalar(e) for e in (EPSILON_GRID if grid is None else grid)]
    deviations = [
        abs(a - b)
        for point in limit_points(xs)
        for a, b in zip(point.coords, target.coords)
        if a != b
    ]
    if deviations:
        points.append(min(deviations) / 2)
    return points


def tp_definitional(t: CondExp, xs: VecSeq, target: LatVec, grid: Optional[Iterable] = None) -> bool:
    """T P_{(|x_n - x| - ε e)^+} e order converges to 0 for every grid ε."""
    for eps in epsilon_grid(xs, target, grid):
        for band in eventual_exceedance_bands(xs, target, eps):
            if not t.apply(band.unit()).is_zero():
                return False
    return True


def tp_unit_form(t: CondExp, xs: VecSeq, target: LatVec) -> bool:
    """T(|x_n - x| ∧ e) order converges to 0.

    Read off the tail envelope: limsup |x_n - x| is the larger of
    limsup x_n - x and x - liminf x_n.
    """
    unit = xs.space.unit()
    upper = limsup_seq(xs).as_lat() - target
    lower = target - liminf_seq(xs)
    return t.apply((upper | lower) & unit).is_zero()


def tp_spanning_form(t: CondExp, xs: VecSeq, target: LatVec) -> bool:
    """T(|x_n - x| ∧ u) order converges to 0 for each atom indicator u."""
    space = xs.space
    units = [space.indicator([a]) for a in range(space.atom_count)]
    return all(
        t.apply(abs(point - target) & u).is_zero()
        for point in limit_points(xs)
        for u in units
    )


def tp_converges(t: CondExp, xs: VecSeq, target: LatVec, grid: Optional[Iterable] = None) -> bool:
    t.space.require(xs.space)
    t.space.require(target.space)
    target = target.as_lat()
    definitional = tp_definitional(t, xs, target, grid)
    spanning = tp_spanning_form(t, xs, target)
    unit = tp_unit_form(t, xs, target)
    if not definitional == spanning == unit:
        raise InvariantError(
            f"convergence forms disagree: definitional={definitional} spanning={spanning} unit={unit}"
        )
    return definitional


def chebyshev_holds(t: CondExp, x: LatVec, epsilon, r=1) -> bool:
    """T P_{(|x| - ε e)^+} e <= ε^{-r} T(|x|^r)."""
    eps = x.space.scalar(epsilon)
    band = exceedance_band(x, x.space.zero(), eps)
    left = t.apply(band.unit())
    right = t.apply(power(x, r).as_lat()).scale(1 / eps ** r)
    return left.dominated_by(right)


# -- independence ---------------------------------------------------------------

def _equal(a: LatVec, b: LatVec) -> bool:
    if a.space.backend is Backend.RATIONAL:
        return a == b
    return a.close_to(b)


def independence_violation(t: CondExp, bands: Sequence[Band]) -> Optional[Tuple[tuple, tuple]]:
    """The first subfamily (indices, choices) on which T fails to factor.

    ``choices[i]`` is True for P_i and False for its complement P_i^d.
    Returns None when the family is T-independent.
    """
    bands = list(bands)
    if len(bands) > independence_limit():
        raise SizeError(
            f"independence check over {len(bands)} bands exceeds the limit of {independence_limit()}"
        )
    space = t.space
    for band in bands:
        space.require(band.space)
    with_complements = len(bands) <= COMPLEMENT_ENUMERATION_LIMIT
    images = [t.apply(b.unit()) for b in bands]
    complement_images = [space.unit() - img for img in images]

    def explore(i, mask, product, chosen, choices):
        if i == len(bands):
            if chosen and not _equal(t.apply(mask.unit()), product):
                return tuple(chosen), tuple(choices)
            return None
        found = explore(i + 1, mask, product, chosen, choices)
        if found:
            return found
        found = explore(i + 1, mask & bands[i], product * images[i], chosen + [i], choices + [True])
        if found or not with_complements:
            return found
        return explore(i + 1, mask & ~bands[i], product * complement_images[i], chosen + [i], choices + [False])

    violation = explore(0, Band.full(space), space.unit(), [], [])
    if violation:
        logger.debug("independence fails on subfamily %s", violation)
    return violation


def check_independence(t: CondExp, bands: Sequence[Band]) -> bool:
    return independence_violation(t, bands) is None
