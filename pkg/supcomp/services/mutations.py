"""Deliberately corrupted operations for the self-test.

Each mutation replaces one entry of ``Operations`` with a plausible wrong
version. Running a suite with ``--mutate <id>`` must produce at least one
counterexample; otherwise the suite cannot tell the right identity from
the wrong one.
"""
import dataclasses
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from supcomp.errors import UsageError
from supcomp.kernel import bands, sequences
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF, is_finite, zero
from supcomp.kernel.sequences import Constant, Periodic
from supcomp.kernel.vectors import make_vector, sum_of
from supcomp.services.operations import KERNEL, Operations


@dataclass(frozen=True)
class Mutation:
    id: str
    suite: str
    description: str
    patch: Dict[str, Callable]


def _add_drops_infinity(x, y):
    def plus(a, b):
        if a is INF and b is INF:
            return INF
        if a is INF:
            return b
        if b is INF:
            return a
        return a + b

    return make_vector(x.space, (plus(a, b) for a, b in zip(x.coords, y.coords)))


def _scale_zero_keeps_infinity(factor, x):
    lam = x.space.scalar(factor)
    if lam == 0:
        nil = zero(x.space.backend)
        return make_vector(x.space, (INF if c is INF else nil for c in x.coords))
    return x.scale(lam)


def _multiply_zero_times_inf(x, y):
    def times(a, b):
        if a is INF or b is INF:
            return INF
        return a * b

    x.require_nonnegative("multiply argument")
    y.require_nonnegative("multiply argument")
    return make_vector(x.space, (times(a, b) for a, b in zip(x.coords, y.coords)))


def _split_parts_empty_band(x):
    x.require_nonnegative("split_parts argument")
    nil = zero(x.space.backend)
    return Band.empty(x.space), make_vector(x.space, (c if is_finite(c) else nil for c in x.coords))


def _truncation_band_is_support(x, u=None):
    return bands.support(x)


def _series_sum_periodic_finite(xs):
    if isinstance(xs.tail, (Constant, Periodic)):
        return sum_of(xs.prefix + xs.tail.vectors(), xs.space)
    return sequences.series_sum(xs)


def _unweighted_average(t, coords, block):
    return sum((coords[a] for a in block), zero(t.space.backend)) / len(block)


def _cond_exp_unweighted(t, x):
    x = x.as_lat()
    means = [_unweighted_average(t, x.coords, block) for block in t.blocks]
    return make_vector(t.space, (means[t.block_index[a]] for a in range(t.space.atom_count)))


def _cond_exp_ext_unweighted(t, x):
    x.require_nonnegative("apply_ext argument")
    means = [INF if any(x.coords[a] is INF for a in block) else _unweighted_average(t, x.coords, block)
             for block in t.blocks]
    return make_vector(t.space, (means[t.block_index[a]] for a in range(t.space.atom_count)))


def _stop_process_ignores_stop(proc, tau):
    return proc.xs


MUTATIONS: Dict[str, Mutation] = {
    m.id: m
    for m in (
        Mutation("meet-as-join", "cone-axioms", "x ∧ y computed as x ∨ y", {"meet": lambda x, y: x | y}),
        Mutation("join-as-meet", "cone-axioms", "x ∨ y computed as x ∧ y", {"join": lambda x, y: x & y}),
        Mutation("add-drops-infinity", "cone-axioms", "∞ + a computed as a", {"add": _add_drops_infinity}),
        Mutation("scale-zero-keeps-infinity", "cone-axioms", "0 · ∞ computed as ∞ when scaling",
                 {"scale": _scale_zero_keeps_infinity}),
        Mutation("pos-part-keeps-negative", "cone-axioms", "x^+ computed as x", {"pos_part": lambda x: x}),
        Mutation("split-parts-empty-band", "bands-decomposition", "infinite part always empty",
                 {"split_parts": _split_parts_empty_band}),
        Mutation("truncation-band-is-support", "bands-decomposition",
                 "infinite band by truncation returns the support",
                 {"infinite_band_by_truncation": _truncation_band_is_support}),
        Mutation("multiply-zero-times-inf", "multiplication", "0 · ∞ computed as ∞ in products",
                 {"multiply": _multiply_zero_times_inf}),
        Mutation("series-sum-periodic-finite", "convergence", "periodic series summed over one period only",
                 {"series_sum": _series_sum_periodic_finite}),
        Mutation("limsup-proj-intersection", "convergence", "limsup of bands computed as the liminf",
                 {"limsup_proj": sequences.liminf_proj}),
        Mutation("cond-exp-unweighted", "expectation", "block averages ignore atom weights",
                 {"apply": _cond_exp_unweighted, "apply_ext": _cond_exp_ext_unweighted}),
        Mutation("stop-process-ignores-stop", "martingales", "stopped process equals the original process",
                 {"stop_process": _stop_process_ignores_stop}),
    )
}


def get_mutation(mutation_id: str) -> Mutation:
    if mutation_id not in MUTATIONS:
        raise UsageError(f"unknown mutation {mutation_id!r}; known: {', '.join(sorted(MUTATIONS))}")
    return MUTATIONS[mutation_id]


def operations_for(mutation_id: Optional[str] = None) -> Operations:
    if mutation_id is None:
        return KERNEL
    return dataclasses.replace(KERNEL, **get_mutation(mutation_id).patch)
