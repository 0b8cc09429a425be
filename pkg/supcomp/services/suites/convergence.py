"""Limits, limsup/liminf, Cauchy tails and series of eventually periodic sequences.

The oracles here work coordinate by coordinate on the raw terms of a
sequence, independently of the closed forms in the kernel.
"""
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF, Backend
from supcomp.kernel.sequences import Constant, Geometric, Periodic, VecSeq, Zero, complement_seq, convergence_band
from supcomp.kernel.vectors import make_vector
from supcomp.services.suites.registry import check, compare, prop, vacuous

SUITE = "convergence"

# terms summed by the brute-force series oracle
BRUTE_FORCE_TERMS = 10 ** 4


def _limit_values(xs: VecSeq) -> list:
    """Values each coordinate keeps returning to."""
    if isinstance(xs.tail, (Zero, Geometric)):
        return [xs.space.zero()]
    return list(xs.tail.vectors())


def _oracle_limit(xs: VecSeq):
    values = _limit_values(xs)
    return values[0] if all(v == values[0] for v in values) else None


def _coordinatewise(space, values, reduce):
    return make_vector(space, (reduce(column) for column in zip(*(v.coords for v in values))))


def _brute_series(xs: VecSeq) -> list:
    """Partial sums to BRUTE_FORCE_TERMS, coordinate by coordinate."""
    space = xs.space
    tail = xs.tail
    totals = []
    for atom in range(space.atom_count):
        total = sum((t.coords[atom] for t in xs.prefix), space.scalar(0))
        if isinstance(tail, Geometric):
            term, ratio = tail.value.coords[atom], tail.ratio
            for _ in range(BRUTE_FORCE_TERMS - xs.prefix_length):
                total += term
                term *= ratio
        elif any(v.coords[atom] > 0 for v in tail.vectors()):
            total = INF
        totals.append(total)
    return totals


def _series_oracle(xs: VecSeq):
    space = xs.space
    if isinstance(xs.tail, Geometric) and space.backend is Backend.RATIONAL:
        closed = [
            sum((t.coords[atom] for t in xs.prefix), space.scalar(0)) + xs.tail.value.coords[atom] / (1 - xs.tail.ratio)
            for atom in range(space.atom_count)
        ]
        return make_vector(space, closed)
    return make_vector(space, _brute_series(xs))


def _dominating(sample, xs: VecSeq) -> VecSeq:
    """A sequence that is termwise at least ``xs``."""
    space = xs.space
    w = sample.lat(space, nonneg=True)
    prefix = tuple(t + sample.lat(space, nonneg=True) for t in xs.prefix)
    tail = xs.tail
    if isinstance(tail, Zero):
        tail = Constant(w) if sample.rng.random() < 0.5 else tail
    elif isinstance(tail, Constant):
        tail = Constant(tail.value + w)
    elif isinstance(tail, Periodic):
        tail = Periodic(tuple(v + w for v in tail.values))
    else:
        tail = Geometric(tail.value + w, tail.ratio)
    return VecSeq(space, prefix, tail)


@prop(SUITE, "series-closed-forms")
def series_closed_forms(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space, nonneg=True)
    return compare(ops.series_sum(xs), _series_oracle(xs), xs=xs)


@prop(SUITE, "series-monotone")
def series_monotone(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space, nonneg=True)
    ys = _dominating(sample, xs)
    left, right = ops.series_sum(xs), ops.series_sum(ys)
    return check(left.dominated_by(right), xs=xs, ys=ys, left=left, right=right)


@prop(SUITE, "series-divergence-ignores-prefix")
def series_divergence_ignores_prefix(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space, nonneg=True)
    other = tuple(sample.lat(space, nonneg=True) for _ in range(sample.rng.randint(0, 4)))
    left, _ = ops.split_parts(ops.series_sum(xs))
    right, _ = ops.split_parts(ops.series_sum(xs.with_prefix(other)))
    return compare(left, right, xs=xs, prefix=list(other))


@prop(SUITE, "series-of-bands-diverges-on-limsup")
def series_of_bands(sample, ops):
    """Σ P_n e is infinite exactly on limsup P_n."""
    space = sample.space()
    ps = sample.projseq(space)
    band, _ = ops.split_parts(ops.series_sum(ps.units()))
    return compare(band, ops.limsup_proj(ps), ps=ps)


@prop(SUITE, "order-uo-cauchy-agreement")
def order_uo_cauchy_agreement(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space)
    expected = _oracle_limit(xs)
    limit = ops.order_limit(xs)
    if expected is not None and sample.rng.random() < 0.5:
        target = expected
    else:
        target = sample.lat(space)
    left = (limit, ops.uo_cauchy(xs), ops.uo_limit(xs, target))
    right = (expected, expected is not None, expected is not None and expected == target)
    return compare(left, right, xs=xs, target=target)


@prop(SUITE, "limsup-liminf")
def limsup_liminf(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space)
    values = _limit_values(xs)
    upper, lower = ops.limsup_seq(xs), ops.liminf_seq(xs)
    outcome = compare(
        (upper, lower),
        (_coordinatewise(space, values, max), _coordinatewise(space, values, min)),
        xs=xs,
    )
    outcome.holds = outcome.holds and lower <= upper
    return outcome


@prop(SUITE, "convergence-band")
def convergence_band_property(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space)
    values = _limit_values(xs)
    expected = Band(space, tuple(len(set(column)) == 1 for column in zip(*(v.coords for v in values))))
    return compare(convergence_band(xs), expected, xs=xs)


@prop(SUITE, "tail-oscillation")
def tail_oscillation(sample, ops):
    """δ_n = sup_{p,q >= n} |x_p - x_q| against a direct scan of the terms."""
    space = sample.space()
    xs = sample.vecseq(space)
    oscillation = ops.tail_oscillation(xs)
    last = xs.horizon + 1
    left, right = [], []
    for n in range(1, last + 1):
        window = xs.terms(max(n, xs.prefix_length) + 2 * xs.period)[n - 1:]
        if isinstance(xs.tail, Geometric):
            window = window + [space.zero()]
        top = _coordinatewise(space, window, max)
        bottom = _coordinatewise(space, window, min)
        left.append(oscillation.term(n))
        right.append(top - bottom)
    return compare(left, right, xs=xs)


@prop(SUITE, "conditional-probability-convergence-forms")
def conditional_probability_convergence_forms(sample, ops):
    """Definitional, unit and spanning forms agree, and with a strictly
    positive T they coincide with uo-convergence."""
    space = sample.space()
    t = sample.condexp(space)
    xs = sample.vecseq(space)
    expected = _oracle_limit(xs)
    target = expected if expected is not None and sample.rng.random() < 0.5 else sample.lat(space)
    converges = ops.tp_converges(t, xs, target)
    return compare(converges, expected is not None and expected == target, partition=t, xs=xs, target=target)


@prop(SUITE, "decreasing-null-in-probability-is-null")
def decreasing_null_in_probability(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    xs = sample.decreasing_vecseq(space)
    zero = space.zero()
    if not ops.tp_converges(t, xs, zero):
        return vacuous(partition=t, xs=xs)
    return compare(ops.order_limit(xs), zero, partition=t, xs=xs)


@prop(SUITE, "limsup-of-bands")
def limsup_of_bands(sample, ops):
    space = sample.space()
    ps = sample.projseq(space)
    union, meet = Band.empty(space), Band.full(space)
    for band in ps.period:
        union, meet = union | band, meet & band
    left = (ops.limsup_proj(ps), ops.liminf_proj(ps), ~ops.limsup_proj(ps))
    right = (union, meet, ops.liminf_proj(complement_seq(ps)))
    return compare(left, right, ps=ps)
