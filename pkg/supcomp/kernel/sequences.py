"""Sequences given by a finite prefix and a symbolic tail rule.

Terms are numbered from 1. For a prefix of length N, term ``N + 1 + k`` is
the k-th term of the tail rule (k = 0, 1, ...):

* ``Zero``: 0
* ``Constant(v)``: v
* ``Periodic(vs)``: vs[k mod len(vs)]
* ``Geometric(v, r)``: r^k v with v >= 0 and 0 < r < 1

These four rules make every limit, limsup, liminf and series exactly
computable. On a finite atomic space order convergence of a sequence is
coordinatewise convergence, which is what the oracles below decide.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Optional, Sequence, Union

from supcomp.errors import DimensionError, DomainError
from supcomp.kernel.bands import Band, split_parts
from supcomp.kernel.scalars import INF, is_finite, one, zero
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, inf_of, make_vector, sup_of

logger = logging.getLogger(__name__)


# -- tail rules ---------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    kind = "zero"

    def vectors(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Constant:
    value: LatVec
    kind = "constant"

    def vectors(self) -> tuple:
        return (self.value,)


@dataclass(frozen=True)
class Periodic:
    values: tuple
    kind = "periodic"

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise DomainError("a periodic tail needs at least one term")
        object.__setattr__(self, "values", values)

    def vectors(self) -> tuple:
        return self.values


@dataclass(frozen=True)
class Geometric:
    value: LatVec
    ratio: object
    kind = "geometric"

    def __post_init__(self):
        if not self.value.is_nonnegative():
            raise DomainError("a geometric tail needs a nonnegative vector")
        ratio = self.value.space.scalar(self.ratio)
        if not (is_finite(ratio) and 0 < ratio < 1):
            raise DomainError("a geometric ratio must lie strictly between 0 and 1")
        object.__setattr__(self, "ratio", ratio)

    def vectors(self) -> tuple:
        return (self.value,)


TailRule = Union[Zero, Constant, Periodic, Geometric]


def tail_term(rule: TailRule, k: int, space: AtomicSpace) -> LatVec:
    if isinstance(rule, Zero):
        return space.zero()
    if isinstance(rule, Constant):
        return rule.value
    if isinstance(rule, Periodic):
        return rule.values[k % len(rule.values)]
    return rule.value.scale(rule.ratio ** k)


def shift_rule(rule: TailRule, steps: int) -> TailRule:
    """The tail rule of the sequence with its first ``steps`` tail terms dropped."""
    if isinstance(rule, Periodic):
        s = steps % len(rule.values)
        return Periodic(rule.values[s:] + rule.values[:s])
    if isinstance(rule, Geometric):
        return Geometric(rule.value.scale(rule.ratio ** steps), rule.ratio)
    return rule


def rule_period(rule: TailRule) -> int:
    return len(rule.values) if isinstance(rule, Periodic) else 1


# -- vector sequences ---------------------------------------------------------

@dataclass(frozen=True)
class VecSeq:
    space: AtomicSpace
    prefix: tuple = ()
    tail: TailRule = field(default_factory=Zero)

    def __post_init__(self):
        prefix = tuple(self.prefix)
        object.__setattr__(self, "prefix", prefix)
        for term in prefix + self.tail.vectors():
            if not isinstance(term, LatVec):
                raise DomainError("sequence terms must be finite vectors")
            self.space.require(term.space)

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return rule_period(self.tail)

    @property
    def horizon(self) -> int:
        """Index after which one full period of the tail has been seen."""
        return self.prefix_length + self.period

    def term(self, n: int) -> LatVec:
        if n < 1:
            raise DomainError("sequence terms are numbered from 1")
        if n <= self.prefix_length:
            return self.prefix[n - 1]
        return tail_term(self.tail, n - self.prefix_length - 1, self.space)

    def terms(self, count: int) -> list:
        return [self.term(n) for n in range(1, count + 1)]

    def tail_from(self, n: int) -> "VecSeq":
        """The sequence (x_n, x_{n+1}, ...)."""
        if n <= self.prefix_length:
            return VecSeq(self.space, self.prefix[n - 1:], self.tail)
        return VecSeq(self.space, (), shift_rule(self.tail, n - self.prefix_length - 1))

    def map_linear(self, fn: Callable[[LatVec], LatVec]) -> "VecSeq":
        """Apply a positive linear map termwise; tail rules are preserved."""
        return VecSeq(self.space, tuple(fn(t) for t in self.prefix), _map_rule(self.tail, fn, linear=True))

    def map_terms(self, fn: Callable[[LatVec], LatVec]) -> "VecSeq":
        """Apply an arbitrary map termwise; geometric tails are rejected."""
        return VecSeq(self.space, tuple(fn(t) for t in self.prefix), _map_rule(self.tail, fn, linear=False))

    def is_nonnegative(self) -> bool:
        return all(t.is_nonnegative() for t in self.prefix + self.tail.vectors())

    def with_prefix(self, prefix: Sequence[LatVec]) -> "VecSeq":
        return VecSeq(self.space, tuple(prefix), self.tail)

    def __add__(self, other: "VecSeq") -> "VecSeq":
        return combine(self, other, lambda a, b: a + b)


def _map_rule(rule: TailRule, fn, linear: bool) -> TailRule:
    if isinstance(rule, Zero):
        return rule
    if isinstance(rule, Constant):
        return Constant(fn(rule.value))
    if isinstance(rule, Periodic):
        return Periodic(tuple(fn(v) for v in rule.values))
    if linear:
        return Geometric(fn(rule.value), rule.ratio)
    raise DomainError("a geometric tail is not preserved by a nonlinear map")


def combine(xs: VecSeq, ys: VecSeq, op: Callable[[LatVec, LatVec], LatVec]) -> VecSeq:
    """Termwise combination of two sequences without geometric tails."""
    xs.space.require(ys.space)
    if isinstance(xs.tail, Geometric) or isinstance(ys.tail, Geometric):
        raise DomainError("termwise combination needs constant or periodic tails")
    start = max(xs.prefix_length, ys.prefix_length)
    period = lcm(xs.period, ys.period)
    prefix = tuple(op(xs.term(n), ys.term(n)) for n in range(1, start + 1))
    tail_values = tuple(op(xs.term(n), ys.term(n)) for n in range(start + 1, start + period + 1))
    return VecSeq(xs.space, prefix, _rule_from_values(tail_values))


def _rule_from_values(values: tuple) -> TailRule:
    if len(values) == 1:
        return Constant(values[0])
    return Periodic(values)


# -- limits -------------------------------------------------------------------

def limit_points(xs: VecSeq) -> tuple:
    """The vectors the tail keeps returning to (or converges to)."""
    if isinstance(xs.tail, (Zero, Geometric)):
        return (xs.space.zero(),)
    return tuple(dict.fromkeys(xs.tail.vectors()))


def order_limit(xs: VecSeq) -> Optional[LatVec]:
    """The order limit of the sequence, or None when it does not converge."""
    tail = xs.tail
    if isinstance(tail, (Zero, Geometric)):
        return xs.space.zero()
    if isinstance(tail, Constant):
        return tail.value
    first = tail.values[0]
    if all(v == first for v in tail.values):
        return first
    return None


def uo_limit(xs: VecSeq, target: LatVec) -> bool:
    """True iff |x_n - target| ∧ e order converges to 0.

    In an atomic space this is coordinatewise convergence, so both tail
    envelopes must meet at the target.
    """
    xs.space.require(target.space)
    return limsup_seq(xs) == target == liminf_seq(xs)


def limsup_seq(xs: VecSeq) -> ExtVec:
    tail = xs.tail
    if isinstance(tail, (Zero, Geometric)):
        return xs.space.zero()
    return sup_of(tail.vectors())


def liminf_seq(xs: VecSeq) -> LatVec:
    tail = xs.tail
    if isinstance(tail, (Zero, Geometric)):
        return xs.space.zero()
    return inf_of(tail.vectors())


def _tail_sup(xs: VecSeq) -> LatVec:
    if isinstance(xs.tail, Zero):
        return xs.space.zero()
    return sup_of(xs.tail.vectors())


def _tail_inf(xs: VecSeq) -> LatVec:
    if isinstance(xs.tail, (Zero, Geometric)):
        return xs.space.zero()
    return inf_of(xs.tail.vectors())


def sup_seq(xs: VecSeq) -> LatVec:
    """sup_n x_n over the whole sequence."""
    return sup_of(xs.prefix + (_tail_sup(xs),))


def inf_seq(xs: VecSeq) -> LatVec:
    """inf_n x_n over the whole sequence."""
    return inf_of(xs.prefix + (_tail_inf(xs),))


def tail_oscillation(xs: VecSeq) -> VecSeq:
    """The sequence n -> sup_{p,q >= n} |x_p - x_q| in closed form."""
    tail = xs.tail
    if isinstance(tail, Periodic):
        rule = Constant(sup_of(tail.values) - inf_of(tail.values))
    elif isinstance(tail, Geometric):
        rule = Geometric(tail.value, tail.ratio)
    else:
        rule = Zero()
    prefix = []
    for n in range(1, xs.prefix_length + 1):
        rest = xs.tail_from(n)
        prefix.append(sup_seq(rest) - inf_seq(rest))
    return VecSeq(xs.space, tuple(prefix), rule)


def uo_cauchy(xs: VecSeq) -> bool:
    return all(point.is_zero() for point in limit_points(tail_oscillation(xs)))


def convergence_band(xs: VecSeq) -> Band:
    """Atoms whose coordinate sequence converges."""
    if not isinstance(xs.tail, Periodic):
        return Band.full(xs.space)
    values = xs.tail.values
    return Band(xs.space, tuple(all(v[i] == values[0][i] for v in values) for i in range(xs.space.atom_count)))


# -- series -------------------------------------------------------------------

def _require_summable(xs: VecSeq) -> None:
    if not xs.is_nonnegative():
        raise DomainError("series are summed for nonnegative sequences only")


def _tail_series(xs: VecSeq) -> ExtVec:
    tail = xs.tail
    space = xs.space
    if isinstance(tail, Zero):
        return space.zero()
    if isinstance(tail, Geometric):
        return tail.value.scale(one(space.backend) / (1 - tail.ratio))
    nil = zero(space.backend)
    reach = sup_of(tail.vectors())
    return make_vector(space, (INF if c > 0 else nil for c in reach.coords))


def series_sum(xs: VecSeq) -> ExtVec:
    """Σ_n x_n in the sup-completion."""
    _require_summable(xs)
    total = xs.space.zero()
    for term in xs.prefix:
        total = total + term
    return total + _tail_series(xs)


def remainder(xs: VecSeq, n: int) -> ExtVec:
    """R_n = Σ_{k > n} x_k."""
    _require_summable(xs)
    return series_sum(xs.tail_from(n + 1))


def band_residual_limit(xs: VecSeq, y: LatVec) -> LatVec:
    """lim_n (y ∧ R_n) for the remainders R_n of a nonnegative series."""
    _require_summable(xs)
    xs.space.require(y.space)
    y = y.as_lat()
    y.require_nonnegative("band_residual_limit argument")
    if isinstance(xs.tail, (Zero, Geometric)):
        # R_n -> 0 coordinatewise, so the meets do too
        return xs.space.zero()
    # for n past the prefix R_n is ∞ on the tail support and 0 elsewhere
    return (y & remainder(xs, xs.prefix_length)).as_lat()


def series_band(xs: VecSeq) -> Band:
    band, _ = split_parts(series_sum(xs))
    return band


# -- band sequences -----------------------------------------------------------

@dataclass(frozen=True)
class ProjSeq:
    space: AtomicSpace
    prefix: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        prefix = tuple(self.prefix)
        period = tuple(self.period) or (Band.empty(self.space),)
        for band in prefix + period:
            if not isinstance(band, Band):
                raise DimensionError("projection sequences hold bands")
            self.space.require(band.space)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def constant(cls, space: AtomicSpace, band: Band, prefix: Sequence[Band] = ()) -> "ProjSeq":
        return cls(space, tuple(prefix), (band,))

    @property
    def tail_kind(self) -> str:
        return "constant" if len(self.period) == 1 else "periodic"

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    @property
    def horizon(self) -> int:
        return self.prefix_length + len(self.period)

    def term(self, n: int) -> Band:
        if n < 1:
            raise DomainError("sequence terms are numbered from 1")
        if n <= self.prefix_length:
            return self.prefix[n - 1]
        return self.period[(n - self.prefix_length - 1) % len(self.period)]

    def bands(self) -> tuple:
        return tuple(dict.fromkeys(self.prefix + self.period))

    def units(self) -> VecSeq:
        """The sequence n -> P_n e."""
        return VecSeq(self.space, tuple(b.unit() for b in self.prefix),
                      _rule_from_values(tuple(b.unit() for b in self.period)))

    def is_increasing(self) -> bool:
        terms = [self.term(n) for n in range(1, self.horizon + 1)]
        if any(not a <= b for a, b in zip(terms, terms[1:])):
            return False
        # an increasing periodic tail is constant
        return all(b == self.period[0] for b in self.period)


def limsup_proj(ps: ProjSeq) -> Band:
    result = Band.empty(ps.space)
    for band in ps.period:
        result = result | band
    return result


def liminf_proj(ps: ProjSeq) -> Band:
    result = Band.full(ps.space)
    for band in ps.period:
        result = result & band
    return result


def complement_seq(ps: ProjSeq) -> ProjSeq:
    return ProjSeq(ps.space, tuple(~b for b in ps.prefix), tuple(~b for b in ps.period))
