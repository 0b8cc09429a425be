"""Both Borel–Cantelli lemmas and the finite product-space harness."""
from fractions import Fraction
from functools import partial

from supcomp.config import harness_limit
from supcomp.errors import ContractError
from supcomp.kernel.scalars import format_scalar
from supcomp.kernel.sequences import ProjSeq, sup_seq
from supcomp.kernel.stochastic import bcl1, bcl2, bcl2_product_harness
from supcomp.services.suites.registry import RATIONAL_ONLY, check, compare, prop, vacuous

SUITE = "borel-cantelli"

PROBABILITIES = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1))

# the suite keeps products small; the full range is exercised by the unit tests
HARNESS_CAP = 12


@prop(SUITE, "first-lemma")
def first_lemma(sample, ops):
    """Σ T x_n finite forces limsup x_n = 0 for 0 <= x_n <= u."""
    space = sample.space()
    t = sample.condexp(space)
    xs = sample.vecseq(space, nonneg=True)
    bound = sup_seq(xs)
    report = bcl1(t, xs, bound)
    total = ops.series_sum(xs.map_linear(partial(ops.apply, t)))
    holds = report.holds and (not total.is_finite() or ops.limsup_seq(xs).is_zero())
    return check(holds, partition=t, xs=xs, bound=bound, report=report)


@prop(SUITE, "second-lemma")
def second_lemma(sample, ops):
    """For independent P_n, Σ T P_n e = ∞_B + u with P_B = limsup P_n, and T P_B = P_B T."""
    space = sample.space()
    t = sample.condexp(space)
    ps = sample.admissible_projseq(t)
    report = bcl2(t, ps)
    band, _ = ops.split_parts(ops.series_sum(ps.units().map_linear(partial(ops.apply, t))))
    outcome = compare(band, ops.limsup_proj(ps), partition=t, ps=ps, report=report)
    outcome.holds = outcome.holds and report.holds and ops.commutes(t, band)
    return outcome


@prop(SUITE, "second-lemma-needs-independence")
def second_lemma_needs_independence(sample, ops):
    """A band that repeats without commuting with T is rejected."""
    space = sample.space()
    t = sample.condexp(space)
    loose = sample.band(space)
    if t.is_union_of_blocks(loose):
        return vacuous(partition=t, band=loose)
    ps = ProjSeq(space, (), (loose,))
    try:
        bcl2(t, ps)
    except ContractError:
        return check(True, partition=t, ps=ps)
    return check(False, detail="dependent family accepted", partition=t, ps=ps)


@prop(SUITE, "product-harness", RATIONAL_ONLY)
def product_harness(sample, ops):
    """T P_n^d ⋯ P_m^d e = ∏ (1 - p_k) e <= exp(-Σ p_k) e on {0,1}^m."""
    m = sample.rng.randint(2, min(harness_limit(), HARNESS_CAP))
    probs = [sample.rng.choice(PROBABILITIES) for _ in range(m)]
    report = bcl2_product_harness(m, probs)
    expected = Fraction(1)
    for p in probs:
        expected *= 1 - p
    holds = report.holds and report.details["product"] == format_scalar(expected)
    return check(holds, probabilities=[str(p) for p in probs], report=report)


@prop(SUITE, "limsup-of-block-unions")
def limsup_of_block_unions(sample, ops):
    """Bands commuting with T have a limsup commuting with T, and Σ T P_n e
    and Σ P_n e diverge on the same band."""
    space = sample.space()
    t = sample.condexp(space)
    ps = ProjSeq(space, (), tuple(sample.block_union(t) for _ in range(sample.rng.randint(1, 4))))
    upper = ops.limsup_proj(ps)
    direct, _ = ops.split_parts(ops.series_sum(ps.units()))
    conditional, _ = ops.split_parts(ops.series_sum(ps.units().map_linear(partial(ops.apply, t))))
    outcome = compare((direct, conditional), (upper, upper), partition=t, ps=ps)
    outcome.holds = outcome.holds and ops.commutes(t, upper)
    return outcome
