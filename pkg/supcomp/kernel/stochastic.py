"""Filtrations, adapted processes and stopping times on a finite atomic space.

Refining partition chains stabilize, so every filtration here is a finite
prefix of conditional expectations followed by a constant one. Index 0 of a
filtration is the global conditional expectation T (T_0 = T).

The checks at the bottom (Borel–Cantelli, stopped-process bounds, band
equalities for martingales) return a ``Report`` rather than raising, so the
suites can collect witnesses.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from supcomp.config import harness_limit
from supcomp.errors import ContractError, DomainError, SizeError
from supcomp.kernel.arithmetic import power
from supcomp.kernel.bands import Band, split_parts, support
from supcomp.kernel.expectation import (
    CondExp,
    epsilon_grid,
    eventual_exceedance_bands,
    independence_violation,
)
from supcomp.kernel.scalars import Backend, format_scalar
from supcomp.kernel.sequences import (
    Constant,
    Geometric,
    Periodic,
    ProjSeq,
    VecSeq,
    Zero,
    convergence_band,
    limsup_proj,
    limsup_seq,
    order_limit,
    series_band,
    series_sum,
    shift_rule,
    sup_seq,
    uo_limit,
)
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, sum_of, sup_of

logger = logging.getLogger(__name__)


@dataclass
class Report:
    name: str
    holds: bool
    vacuous: bool = False
    bands: Dict[str, Band] = field(default_factory=dict)
    witness: Optional[int] = None
    details: Dict[str, object] = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "bands": {k: list(v.atoms) for k, v in sorted(self.bands.items())},
            "witness": self.witness,
            "details": self.details,
        }


def _first_difference(a: Band, b: Band) -> Optional[int]:
    for i, (x, y) in enumerate(zip(a.mask, b.mask)):
        if x != y:
            return i
    return None


def _first_excess(left: ExtVec, right: ExtVec) -> Optional[int]:
    for i, (a, b) in enumerate(zip(left.coords, right.coords)):
        if not a <= b:
            return i
    return None


def _same(a: ExtVec, b: ExtVec) -> bool:
    return a == b if a.space.backend is Backend.RATIONAL else a.close_to(b)


# -- filtrations and processes ------------------------------------------------

@dataclass(frozen=True)
class Filtration:
    space: AtomicSpace
    prefix: tuple
    tail: CondExp
    base: CondExp

    def __post_init__(self):
        prefix = tuple(self.prefix)
        object.__setattr__(self, "prefix", prefix)
        chain = prefix + (self.tail,)
        for t in chain + (self.base,):
            self.space.require(t.space)
        for coarse, fine in zip(chain, chain[1:]):
            if not coarse.is_coarsening_of(fine):
                raise ContractError("filtration partitions must refine")
        if not self.base.is_coarsening_of(chain[0]):
            raise ContractError("the global expectation must be coarser than every T_n")

    @classmethod
    def constant(cls, t: CondExp, base: Optional[CondExp] = None) -> "Filtration":
        return cls(t.space, (), t, base or t)

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    def at(self, n: int) -> CondExp:
        if n < 0:
            raise DomainError("filtration indices start at 0")
        if n == 0:
            return self.base
        if n <= self.prefix_length:
            return self.prefix[n - 1]
        return self.tail


@dataclass(frozen=True)
class AdaptedProcess:
    xs: VecSeq
    filtration: Filtration

    def __post_init__(self):
        self.filtration.space.require(self.xs.space)
        for n in range(1, self.horizon + 1):
            if not self.filtration.at(n).in_range(self.xs.term(n)):
                raise ContractError(f"process term {n} is not in the range of T_{n}")

    @property
    def space(self) -> AtomicSpace:
        return self.xs.space

    @property
    def horizon(self) -> int:
        """Indices past which both the process and the filtration repeat."""
        return max(self.xs.prefix_length, self.filtration.prefix_length) + self.xs.period + 2

    def term(self, n: int) -> LatVec:
        return self.xs.term(n)


def doob_martingale(filtration: Filtration, y: LatVec) -> AdaptedProcess:
    """The closed martingale x_n = T_n y."""
    prefix = tuple(t.apply(y) for t in filtration.prefix)
    xs = VecSeq(filtration.space, prefix, Constant(filtration.tail.apply(y)))
    return AdaptedProcess(xs, filtration)


def is_martingale(proc: AdaptedProcess) -> bool:
    h = proc.horizon
    for i in range(1, h + 1):
        t = proc.filtration.at(i)
        for j in range(i, h + 1):
            if not _same(t.apply(proc.term(j)), proc.term(i)):
                return False
    return True


def is_submartingale(proc: AdaptedProcess) -> bool:
    h = proc.horizon
    for i in range(1, h + 1):
        t = proc.filtration.at(i)
        for j in range(i, h + 1):
            if not proc.term(i).dominated_by(t.apply(proc.term(j))):
                return False
    return True


# -- stopping times -----------------------------------------------------------

@dataclass(frozen=True)
class StoppingTime:
    ps: ProjSeq
    filtration: Filtration

    def __post_init__(self):
        if not self.ps.is_increasing():
            raise ContractError("a stopping time is an increasing sequence of bands")
        last = max(self.ps.horizon, self.filtration.prefix_length + 1)
        for i in range(1, last + 1):
            if not self.filtration.at(i).commutes(self.ps.term(i)):
                raise ContractError(f"band P_{i} does not commute with T_{i}")

    def at(self, n: int) -> Band:
        if n == 0:
            return Band.empty(self.ps.space)
        return self.ps.term(n)

    @property
    def final(self) -> Band:
        return self.ps.period[0]

    def is_bounded(self) -> bool:
        return self.final.is_full()

    def truncated(self, n: int) -> "StoppingTime":
        """P ∧ n: stop at n at the latest."""
        if n < 1:
            raise DomainError("stopping times are truncated at n >= 1")
        prefix = tuple(self.at(i) for i in range(1, n))
        return StoppingTime(ProjSeq(self.ps.space, prefix, (Band.full(self.ps.space),)), self.filtration)


def stopping_time_from_sequence(proc: AdaptedProcess) -> StoppingTime:
    """P_k = P_{x_k} for an increasing positive adapted sequence."""
    xs = proc.xs
    if not xs.is_nonnegative():
        raise ContractError("the sequence must be positive")
    if isinstance(xs.tail, Geometric) or (isinstance(xs.tail, Periodic) and len(set(xs.tail.values)) > 1):
        raise ContractError("an increasing sequence has a constant tail")
    terms = [xs.term(n) for n in range(1, xs.prefix_length + 2)]
    if any(not a <= b for a, b in zip(terms, terms[1:])):
        raise ContractError("the sequence must be increasing")
    bands = [support(t) for t in terms]
    ps = ProjSeq(xs.space, tuple(bands[:-1]), (bands[-1],))
    return StoppingTime(ps, proc.filtration)


def _stopped_term(proc: AdaptedProcess, tau: StoppingTime, n: int) -> LatVec:
    total = sum_of(
        ((tau.at(j) & ~tau.at(j - 1)).project(proc.term(j)) for j in range(1, n)), proc.space
    )
    return total + (~tau.at(n - 1)).project(proc.term(n))


def stop_process(proc: AdaptedProcess, tau: StoppingTime) -> VecSeq:
    """z_n = Σ_{j<n} (P_j - P_{j-1}) x_j + P_{n-1}^d x_n with P_0 = 0."""
    proc.space.require(tau.ps.space)
    xs = proc.xs
    settled = tau.ps.prefix_length + 1
    start = max(settled + 1, xs.prefix_length + 1)
    prefix = tuple(_stopped_term(proc, tau, n) for n in range(1, start))
    final = tau.final
    stopped = proc.space.zero()
    for j in range(1, settled + 1):
        stopped = stopped + (tau.at(j) & ~tau.at(j - 1)).project(proc.term(j))
    running = ~final
    rule = shift_rule(xs.tail, start - xs.prefix_length - 1)
    if running.is_empty() or isinstance(rule, Zero):
        tail = Constant(stopped)
    elif isinstance(rule, Constant):
        tail = Constant(stopped + running.project(rule.value))
    elif isinstance(rule, Periodic):
        tail = Periodic(tuple(stopped + running.project(v) for v in rule.values))
    else:
        moving = running.project(rule.value)
        if moving.is_zero():
            tail = Constant(stopped)
        elif stopped.is_zero():
            tail = Geometric(moving, rule.ratio)
        else:
            raise DomainError("stopped geometric tail is neither constant nor geometric")
    return VecSeq(proc.space, prefix, tail)


def first_passage(proc: AdaptedProcess, level) -> Tuple[List[Band], Band]:
    """Bands B_{K,n} = {x_1 <= K, ..., x_{n-1} <= K, x_n > K} and B_{K,∞}.

    The search runs over the prefix and one tail period. Past that the tail
    repeats, and geometric tails only decrease, so later first passages
    cannot occur.
    """
    space = proc.space
    k = space.scalar(level)
    if not k > 0:
        raise DomainError("the passage level must be positive")
    last = proc.xs.horizon
    first = [None] * space.atom_count
    for n in range(1, last + 1):
        term = proc.term(n)
        for atom in range(space.atom_count):
            if first[atom] is None and term[atom] > k:
                first[atom] = n
    passages = [Band(space, tuple(f == n for f in first)) for n in range(1, last + 1)]
    never = Band(space, tuple(f is None for f in first))
    return passages, never


def tau_K(proc: AdaptedProcess, level) -> StoppingTime:
    passages, never = first_passage(proc, level)
    running = Band.empty(proc.space)
    cumulative = []
    for band in passages:
        running = running | band
        cumulative.append(running)
    ps = ProjSeq(proc.space, tuple(cumulative), (~never,))
    return StoppingTime(ps, proc.filtration)


# -- Borel–Cantelli -----------------------------------------------------------

def _check_bounded(xs: VecSeq, bound: LatVec) -> None:
    for term in xs.prefix + xs.tail.vectors():
        if not (term.is_nonnegative() and term <= bound):
            raise ContractError("bcl1 needs 0 <= x_n <= bound for every n")


def bcl1(t: CondExp, xs: VecSeq, bound: LatVec) -> Report:
    """If Σ T x_n is finite then limsup x_n = 0; off the divergence band the
    restricted sequence is checked the same way."""
    _check_bounded(xs, bound)
    total = series_sum(xs.map_linear(t.apply))
    infinite, _ = split_parts(total)
    report = Report("bcl1", True, bands={"infinite": infinite})
    if infinite.is_empty():
        top = limsup_seq(xs)
        report.holds = top.is_zero()
        report.witness = next((i for i, c in enumerate(top.coords) if c != 0), None)
        return report
    report.vacuous = True
    off = ~infinite
    restricted = xs.map_linear(off.project)
    restricted_total = series_sum(restricted.map_linear(t.apply))
    restricted_top = limsup_seq(restricted)
    report.details["restricted_finite"] = restricted_total.is_finite()
    report.details["restricted_limsup_zero"] = restricted_top.is_zero()
    report.holds = restricted_total.is_finite() and restricted_top.is_zero()
    if not report.holds:
        report.witness = next((i for i in off.atoms if restricted_top[i] != 0), None)
    return report


def _require_bcl2_independence(t: CondExp, ps: ProjSeq) -> None:
    counts: Dict[Band, int] = {}
    for band in ps.prefix:
        counts[band] = counts.get(band, 0) + 1
    for band in ps.period:
        counts[band] = counts.get(band, 0) + 2
    repeated = [b for b, c in counts.items() if c > 1 and not t.is_union_of_blocks(b)]
    if repeated:
        raise ContractError(f"band {list(repeated[0].atoms)} repeats but is not a union of blocks")
    violation = independence_violation(t, list(counts))
    if violation:
        indices, choices = violation
        family = [list(list(counts)[i].atoms) for i in indices]
        raise ContractError(f"bands {family} are not independent (choices {list(choices)})")


def bcl2(t: CondExp, ps: ProjSeq) -> Report:
    """P_B = limsup P_n where Σ T P_n e = ∞_B + u."""
    _require_bcl2_independence(t, ps)
    band = series_band(ps.units().map_linear(t.apply))
    upper = limsup_proj(ps)
    commuting = t.commutes(band)
    report = Report("bcl2", band == upper and commuting, bands={"series": band, "limsup": upper})
    report.details["commutes"] = commuting
    report.witness = _first_difference(band, upper)
    return report


def product_space(probs: Sequence) -> Tuple[AtomicSpace, List[Band]]:
    """{0,1}^m with independent coordinates; outcomes of weight 0 are dropped."""
    outcomes = []
    weights = []
    for bits in product((0, 1), repeat=len(probs)):
        w = Fraction(1)
        for bit, p in zip(bits, probs):
            w *= p if bit else 1 - p
        if w > 0:
            outcomes.append(bits)
            weights.append(w)
    space = AtomicSpace(tuple(weights))
    bands = [Band(space, tuple(bits[k] == 1 for bits in outcomes)) for k in range(len(probs))]
    return space, bands


def bcl2_product_harness(m: int, probs: Sequence) -> Report:
    """Factorization T P_n^d ... P_m^d e = ∏ (e - T P_k e) and its exp bound."""
    if m > harness_limit():
        raise SizeError(f"product harness with m={m} exceeds the limit of {harness_limit()}")
    probs = [Fraction(p) for p in probs]
    if len(probs) != m:
        raise ContractError(f"expected {m} probabilities, got {len(probs)}")
    if any(not 0 < p <= 1 for p in probs):
        raise ContractError("probabilities must lie in (0, 1]")
    space, bands = product_space(probs)
    t = CondExp.trivial(space)
    unit = space.unit()
    images = [t.apply(b.unit()) for b in bands]
    report = Report("bcl2_product_harness", True)
    margins = []
    mask = Band.full(space)
    expected = unit
    # walk n = m, m-1, ..., 1 extending the product one factor at a time
    for n in range(m, 0, -1):
        mask = mask & ~bands[n - 1]
        expected = expected * (unit - images[n - 1])
        left = t.apply(mask.unit())
        if left != expected:
            report.holds = False
            report.details["factorization_fails_from"] = n
            break
        margins.append(float(left[0]) - math.exp(-float(sum(probs[n - 1:]))))
        if margins[-1] > 1e-12:
            report.holds = False
            report.details["exp_bound_fails_from"] = n
            break
    whole = t.apply(mask.unit())
    report.details["product"] = format_scalar(whole[0])
    report.details["exp_bound"] = math.exp(-float(sum(probs)))
    report.details["worst_margin"] = max(margins) if margins else None
    if report.holds and sum(probs) >= 5 and not whole[0] < Fraction(1, 100):
        report.holds = False
    return report


# -- martingale convergence ---------------------------------------------------

def increment_sup(xs: VecSeq, positive: bool = False) -> LatVec:
    """sup_n |x_{n+1} - x_n| (or sup_{j>=0} (x_{j+1} - x_j)^+ with x_0 = 0).

    Periodic tails repeat and geometric increments shrink, so the supremum
    is attained within one period past the prefix.
    """
    last = xs.horizon + 1
    values = []
    if positive:
        values.append(xs.term(1).pos_part())
    for n in range(1, last + 1):
        step = xs.term(n + 1) - xs.term(n)
        values.append(step.pos_part() if positive else abs(step))
    return sup_of(values)


def theorem_T2_check(proc: AdaptedProcess, t: CondExp) -> Report:
    if not is_martingale(proc):
        raise ContractError("the convergence band check needs a martingale")
    if not t.apply(increment_sup(proc.xs)).is_finite():
        raise ContractError("T sup |x_{n+1} - x_n| must be finite")
    converging = convergence_band(proc.xs)
    infinite, _ = split_parts(sup_seq(proc.xs).pos_part())
    report = Report("theorem_T2", ~converging == infinite, bands={"converging": converging, "infinite": infinite})
    report.witness = _first_difference(~converging, infinite)
    return report


def band_family_convergence_check(xs: VecSeq, bands: Sequence[Band]) -> Report:
    """If P_γ x_n converges for each γ then P x_n converges for P = sup P_γ."""
    members = [b for b in bands if order_limit(xs.map_linear(b.project)) is not None]
    union = Band.empty(xs.space)
    for b in members:
        union = union | b
    holds = order_limit(xs.map_linear(union.project)) is not None
    report = Report("band_family_convergence", holds, bands={"union": union, "converging": convergence_band(xs)})
    report.details["members"] = len(members)
    return report


def theorem_T3_check(filtration: Filtration, ps: ProjSeq) -> Report:
    """Σ P_n e and Σ T_{n-1} P_n e have the same infinite part."""
    horizon = max(ps.horizon, filtration.prefix_length + 1)
    for n in range(1, horizon + 1):
        if not filtration.at(n).commutes(ps.term(n)):
            raise ContractError(f"band P_{n} does not commute with T_{n}")
    start = max(ps.prefix_length, filtration.prefix_length + 1)
    period = len(ps.period)
    predictable = [filtration.at(n - 1).apply(ps.term(n).unit()) for n in range(1, start + period + 1)]
    tail_values = tuple(predictable[start:])
    rule = Constant(tail_values[0]) if period == 1 else Periodic(tail_values)
    compensator = VecSeq(filtration.space, tuple(predictable[:start]), rule)
    direct = series_band(ps.units())
    compensated = series_band(compensator)
    report = Report("theorem_T3", direct == compensated, bands={"direct": direct, "compensated": compensated})
    report.witness = _first_difference(direct, compensated)
    return report


def levy_martingale(filtration: Filtration, ps: ProjSeq) -> AdaptedProcess:
    """x_n = Σ_{k<=n} (P_k e - T_{k-1} P_k e); increments are bounded by e."""
    last = filtration.prefix_length + 1
    for n in range(1, max(last, ps.horizon) + 1):
        if not filtration.at(n).commutes(ps.term(n)):
            raise ContractError(f"band P_{n} does not commute with T_{n}")
    space = filtration.space
    running = space.zero()
    prefix = []
    for k in range(1, last + 1):
        unit = ps.term(k).unit()
        running = running + (unit - filtration.at(k - 1).apply(unit))
        prefix.append(running)
    return AdaptedProcess(VecSeq(space, tuple(prefix), Constant(running)), filtration)


def stopped_bound_check(proc: AdaptedProcess, level) -> Report:
    """T|z_n| <= 2K e + 2 T V - T x_1 for the process stopped at τ^K.

    V = sup_{j>=0} (x_{j+1} - x_j)^+ with x_0 = 0.
    """
    if not is_submartingale(proc):
        raise ContractError("the stage bound needs a submartingale")
    t = proc.filtration.base
    k = proc.space.scalar(level)
    tau = tau_K(proc, k)
    stopped = stop_process(proc, tau)
    jump = increment_sup(proc.xs, positive=True)
    bound = proc.space.constant(2 * k) + t.apply(jump).scale(2) - t.apply(proc.term(1))
    report = Report("stopped_bound", True, bands={"never_passes": first_passage(proc, k)[1]})
    for n in range(1, stopped.horizon + 2):
        left = t.apply(abs(stopped.term(n)))
        if not left.dominated_by(bound):
            report.holds = False
            report.witness = _first_excess(left, bound)
            report.details["stage"] = n
            break
    return report


def _deviation_series_band(t: CondExp, xs: VecSeq, target: LatVec, r) -> Band:
    """Infinite band of Σ_n T|x_n - x|^r."""
    if isinstance(xs.tail, Geometric):
        if not target.is_zero():
            return t.saturate(support(target))
        ratio = xs.tail.ratio ** r
        head = tuple(t.apply(power(v - target, r).as_lat()) for v in xs.prefix)
        terms = VecSeq(xs.space, head, Geometric(t.apply(power(xs.tail.value, r).as_lat()), ratio))
        return series_band(terms)
    return series_band(xs.map_terms(lambda v: t.apply(power(v - target, r).as_lat())))


def proposition_P2_check(t: CondExp, xs: VecSeq, target: LatVec, r=2) -> Report:
    """Summable conditional tail probabilities, or summable T|x_n - x|^r,
    imply uo-convergence to ``target``."""
    summable_probabilities = all(
        band.is_empty()
        for eps in epsilon_grid(xs, target, None)
        for band in eventual_exceedance_bands(xs, target, eps)
    )
    summable_moments = _deviation_series_band(t, xs, target, r).is_empty()
    converges = uo_limit(xs, target)
    holds = (not summable_probabilities or converges) and (not summable_moments or converges)
    report = Report("proposition_P2", holds, vacuous=not (summable_probabilities or summable_moments))
    report.details.update(
        summable_probabilities=summable_probabilities,
        summable_moments=summable_moments,
        converges=converges,
    )
    return report
