"""Seeded random generation of spaces, vectors, sequences and processes.

All finite values are dyadic (k / 4 for small integers k) and atom weights
are multiples of a power of two, so the float backend represents generated
data exactly. Degenerate shapes (one atom, one-block and identity
partitions, empty and full bands) each appear with probability of at least
5%.
"""
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from supcomp.errors import ModelValidationError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.monotone import Linear, MonotoneMap, Expectation, Projection, affine, clamp, identity, positive_part
from supcomp.kernel.scalars import INF, Backend
from supcomp.kernel.sequences import Constant, Geometric, Periodic, ProjSeq, VecSeq, Zero
from supcomp.kernel.stochastic import AdaptedProcess, Filtration, StoppingTime, doob_martingale
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec
from supcomp.models import ModelSpec, ProcessSpec
from supcomp.services.model_loader import (
    Materialized,
    space_summary,
    spec_of_filtration,
    spec_of_projections,
    spec_of_sequence,
)

DEGENERATE_RATE = 0.06
RATIOS = (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))


@dataclass(frozen=True)
class SizeBounds:
    max_atoms: int = 16
    max_chain: int = 6
    max_prefix: int = 8
    max_period: int = 4

    def __post_init__(self):
        for name in ("max_atoms", "max_chain", "max_prefix", "max_period"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ModelValidationError(name, f"size bounds must be positive integers, got {value!r}")


class Sampler:
    def __init__(self, rng: random.Random, backend: Backend = Backend.RATIONAL,
                 model: Optional[Materialized] = None, bounds: SizeBounds = SizeBounds()):
        self.rng = rng
        self.backend = backend
        self.model = model
        self.bounds = bounds
        self.last_space: Optional[AtomicSpace] = None

    def degenerate(self) -> bool:
        return self.rng.random() < DEGENERATE_RATE

    # -- scalars and spaces ---------------------------------------------------
    def value(self, nonneg: bool = False, limit: int = 12) -> Fraction:
        low = 0 if nonneg else -limit
        return Fraction(self.rng.randint(low, limit), self.rng.choice((1, 2, 4)))

    def positive(self, limit: int = 12) -> Fraction:
        return Fraction(self.rng.randint(1, limit), self.rng.choice((1, 2, 4)))

    def weights(self, atoms: int) -> tuple:
        total = 4 * (1 << max(0, math.ceil(math.log2(atoms))))
        counts = [1] * atoms
        for _ in range(total - atoms):
            counts[self.rng.randrange(atoms)] += 1
        return tuple(Fraction(c, total) for c in counts)

    def space(self, atoms: Optional[int] = None) -> AtomicSpace:
        if self.model is not None and atoms is None:
            space = self.model.space
        else:
            if atoms is None:
                top = self.bounds.max_atoms
                atoms = 1 if self.degenerate() else self.rng.randint(min(2, top), top)
            space = AtomicSpace(self.weights(atoms)).as_backend(self.backend)
        self.last_space = space
        return space

    # -- vectors and bands ----------------------------------------------------
    def vector(self, space: AtomicSpace, nonneg: bool = False, finite: bool = False,
               inf_rate: float = 0.2, zero_rate: float = 0.2) -> ExtVec:
        coords = []
        for _ in range(space.atom_count):
            roll = self.rng.random()
            if not finite and roll < inf_rate:
                coords.append(INF)
            elif roll < inf_rate + zero_rate:
                coords.append(0)
            else:
                coords.append(self.value(nonneg))
        return space.vector(coords)

    def lat(self, space: AtomicSpace, nonneg: bool = False) -> LatVec:
        return self.vector(space, nonneg=nonneg, finite=True)

    def band(self, space: AtomicSpace) -> Band:
        if self.degenerate():
            return Band.empty(space)
        if self.degenerate():
            return Band.full(space)
        return Band(space, tuple(self.rng.random() < 0.5 for _ in range(space.atom_count)))

    def disjoint_pair(self, space: AtomicSpace) -> tuple:
        """Two nonnegative vectors with disjoint supports."""
        band = self.band(space)
        x = band.project(self.vector(space, nonneg=True))
        y = (~band).project(self.vector(space, nonneg=True))
        return x, y

    # -- partitions and conditional expectations ------------------------------
    def partition(self, space: AtomicSpace) -> CondExp:
        if self.degenerate():
            return CondExp.identity(space)
        if self.degenerate():
            return CondExp.trivial(space)
        groups = self.rng.randint(1, space.atom_count)
        return CondExp.from_labels(space, [self.rng.randrange(groups) for _ in range(space.atom_count)])

    def coarsen(self, t: CondExp) -> CondExp:
        groups = self.rng.randint(1, len(t.blocks))
        labels = [self.rng.randrange(groups) for _ in t.blocks]
        return CondExp.from_labels(t.space, [labels[t.block_index[a]] for a in range(t.space.atom_count)])

    def condexp(self, space: AtomicSpace) -> CondExp:
        if self.model is not None and space is self.model.space:
            known = self.model.condexps()
            if known and self.rng.random() < 0.5:
                return self.rng.choice(known)
        return self.partition(space)

    def filtration(self, space: AtomicSpace) -> Filtration:
        if self.model is not None and space is self.model.space and self.model.filtrations:
            if self.rng.random() < 0.5:
                return self.model.filtrations[self.rng.choice(sorted(self.model.filtrations))]
        chain = [self.partition(space)]
        for _ in range(self.rng.randint(0, self.bounds.max_chain - 1)):
            chain.append(self.coarsen(chain[-1]))
        chain.reverse()
        base = self.coarsen(chain[0])
        return Filtration(space, tuple(chain[:-1]), chain[-1], base)

    def block_union(self, t: CondExp) -> Band:
        chosen = [b for b in range(len(t.blocks)) if self.rng.random() < 0.5]
        return Band.of_atoms(t.space, [a for b in chosen for a in t.blocks[b]])

    # -- sequences ------------------------------------------------------------
    def tail(self, space: AtomicSpace, nonneg: bool = False, kinds=("zero", "constant", "periodic", "geometric")):
        kind = self.rng.choice(kinds)
        if kind == "zero":
            return Zero()
        if kind == "constant":
            return Constant(self.lat(space, nonneg))
        if kind == "periodic":
            length = self.rng.randint(min(2, self.bounds.max_period), self.bounds.max_period)
            return Periodic(tuple(self.lat(space, nonneg) for _ in range(length)))
        return Geometric(self.lat(space, nonneg=True), self.rng.choice(RATIOS))

    def vecseq(self, space: AtomicSpace, nonneg: bool = False, **kwargs) -> VecSeq:
        if self.model is not None and space is self.model.space and self.model.sequences and not kwargs:
            candidates = [s for s in self.model.sequences.values() if s.is_nonnegative() or not nonneg]
            if candidates and self.rng.random() < 0.5:
                return self.rng.choice(candidates)
        prefix = tuple(self.lat(space, nonneg) for _ in range(self.rng.randint(0, self.bounds.max_prefix)))
        return VecSeq(space, prefix, self.tail(space, nonneg, **kwargs))

    def decreasing_vecseq(self, space: AtomicSpace) -> VecSeq:
        """A nonnegative decreasing sequence."""
        if self.rng.random() < 0.5:
            tail = Constant(self.lat(space, nonneg=True))
            top = tail.value
        else:
            tail = Geometric(self.lat(space, nonneg=True), self.rng.choice(RATIOS))
            top = tail.value
        prefix = []
        for _ in range(self.rng.randint(0, self.bounds.max_prefix)):
            top = top + self.lat(space, nonneg=True)
            prefix.append(top)
        prefix.reverse()
        return VecSeq(space, tuple(prefix), tail)

    def projseq(self, space: AtomicSpace) -> ProjSeq:
        prefix = tuple(self.band(space) for _ in range(self.rng.randint(0, self.bounds.max_prefix)))
        period = tuple(self.band(space) for _ in range(self.rng.randint(1, self.bounds.max_period)))
        return ProjSeq(space, prefix, period)

    def admissible_projseq(self, t: CondExp) -> ProjSeq:
        """Block unions everywhere except at most one band used once."""
        space = t.space
        prefix = [self.block_union(t) for _ in range(self.rng.randint(0, self.bounds.max_prefix))]
        if prefix and self.rng.random() < 0.5:
            loose = self.band(space)
            if loose not in prefix and not t.is_union_of_blocks(loose):
                prefix[self.rng.randrange(len(prefix))] = loose
        period = tuple(self.block_union(t) for _ in range(self.rng.randint(1, self.bounds.max_period)))
        return ProjSeq(space, tuple(prefix), period)

    def adapted_projseq(self, filtration: Filtration) -> ProjSeq:
        """P_n a union of blocks of T_n for every n."""
        length = self.rng.randint(0, max(self.bounds.max_prefix, filtration.prefix_length + 1))
        prefix = tuple(self.block_union(filtration.at(n)) for n in range(1, length + 1))
        period = tuple(self.block_union(filtration.tail) for _ in range(self.rng.randint(1, self.bounds.max_period)))
        if length <= filtration.prefix_length:
            # terms between the prefix and the constant part of the filtration
            extra = tuple(self.block_union(filtration.at(n)) for n in range(length + 1, filtration.prefix_length + 1))
            prefix = prefix + extra
        return ProjSeq(filtration.space, prefix, period)

    # -- processes ------------------------------------------------------------
    def martingale(self, filtration: Filtration) -> AdaptedProcess:
        return doob_martingale(filtration, self.lat(filtration.space))

    def submartingale(self, filtration: Filtration) -> AdaptedProcess:
        """x_n = T_n m_n for an increasing sequence m_n."""
        space = filtration.space
        steps = filtration.prefix_length + self.rng.randint(1, 3)
        m = self.lat(space)
        prefix = []
        for n in range(1, steps + 1):
            prefix.append(filtration.at(n).apply(m))
            m = m + self.lat(space, nonneg=True)
        tail = Constant(filtration.tail.apply(m))
        return AdaptedProcess(VecSeq(space, tuple(prefix), tail), filtration)

    def bounded_stopping_time(self, filtration: Filtration, horizon: Optional[int] = None) -> StoppingTime:
        space = filtration.space
        if horizon is None:
            horizon = self.rng.randint(1, filtration.prefix_length + 3)
        current = Band.empty(space)
        prefix = []
        for n in range(1, horizon):
            current = current | self.block_union(filtration.at(n))
            prefix.append(current)
        return StoppingTime(ProjSeq(space, tuple(prefix), (Band.full(space),)), filtration)

    # -- monotone maps --------------------------------------------------------
    def monotone_map(self, space: AtomicSpace, depth: int = 2) -> MonotoneMap:
        if depth <= 0 or self.rng.random() < 0.3:
            return self._leaf(space)
        left = self.monotone_map(space, depth - 1)
        right = self.monotone_map(space, depth - 1)
        return self.rng.choice((left + right, left & right, left | right, left @ right))

    def _leaf(self, space: AtomicSpace) -> MonotoneMap:
        kind = self.rng.choice(("linear", "projection", "expectation", "clamp", "affine", "pos", "id"))
        if kind == "linear":
            n = space.atom_count
            return Linear(tuple(
                tuple(self.rng.choice((0, 0, Fraction(1, 2), 1, 2)) for _ in range(n)) for _ in range(n)
            ))
        if kind == "projection":
            return Projection(self.band(space))
        if kind == "expectation":
            return Expectation(self.partition(space))
        if kind == "clamp":
            return clamp(self.value(limit=8))
        if kind == "affine":
            return affine(self.rng.choice((0, 1, 2)), self.value(limit=8))
        if kind == "pos":
            return positive_part()
        return identity()


def generate_model(seed: int, bounds: SizeBounds = SizeBounds()) -> ModelSpec:
    """A random model file: one filtration, a few sequences, a process."""
    sampler = Sampler(random.Random(seed), Backend.RATIONAL, bounds=bounds)
    space = sampler.space()
    summary = space_summary(space)
    filtration = sampler.filtration(space)
    sequences = {f"s{i}": spec_of_sequence(sampler.vecseq(space)) for i in range(sampler.rng.randint(1, 3))}
    martingale = sampler.martingale(filtration)
    sequences["m"] = spec_of_sequence(martingale.xs)
    projections = {f"p{i}": spec_of_projections(sampler.projseq(space)) for i in range(sampler.rng.randint(1, 2))}
    vectors = {
        name: [c for c in sampler.vector(space).to_strings()]
        for name in ("x", "y", "z")
    }
    return ModelSpec(
        atoms=summary["atoms"],
        weights=summary["weights"],
        partitions={"f": spec_of_filtration(filtration)},
        sequences=sequences,
        projections=projections,
        processes={"m": ProcessSpec(sequence="m", filtration="f")},
        vectors=vectors,
    )
