"""Conditional expectations: block averages, ranges, commutation, independence."""
from fractions import Fraction
from itertools import product

from supcomp.kernel.arithmetic import power
from supcomp.kernel.bands import Band, support
from supcomp.kernel.expectation import CondExp, chebyshev_holds, exceedance_band
from supcomp.kernel.scalars import INF
from supcomp.kernel.stochastic import product_space
from supcomp.kernel.vectors import make_vector
from supcomp.services.suites.registry import RATIONAL_ONLY, check, compare, prop

SUITE = "expectation"


def _weighted_averages(t: CondExp, x):
    """Block averages computed straight from the weights."""
    space = t.space
    nil = space.scalar(0)
    coords = [nil] * space.atom_count
    for block in t.blocks:
        if any(x.coords[a] is INF for a in block):
            mean = INF
        else:
            mass = sum((space.weights[a] for a in block), nil)
            mean = sum((space.weights[a] * x.coords[a] for a in block), nil) / mass
        for a in block:
            coords[a] = mean
    return make_vector(space, coords)


def _is_block_union(t: CondExp, band: Band) -> bool:
    return all(all(band.mask[a] == band.mask[block[0]] for a in block) for block in t.blocks)


@prop(SUITE, "weighted-block-averages")
def weighted_block_averages(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    x, y = sample.lat(space), sample.vector(space, nonneg=True)
    left = (ops.apply(t, x), ops.apply_ext(t, y))
    right = (_weighted_averages(t, x), _weighted_averages(t, y))
    return compare(left, right, partition=t, x=x, y=y)


@prop(SUITE, "expectation-preserves-integral")
def expectation_preserves_integral(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    x = sample.lat(space)
    return compare(ops.apply(t, x).total(), x.total(), partition=t, x=x)


@prop(SUITE, "expectation-is-averaging-projection")
def averaging_projection(sample, ops):
    """T e = e, T T x = T x and every block average lies between the block extremes."""
    space = sample.space()
    t = sample.condexp(space)
    x = sample.lat(space)
    image = ops.apply(t, x)
    holds = compare(ops.apply(t, space.unit()), space.unit()).holds
    holds = holds and compare(ops.apply(t, image), image).holds
    for block in t.blocks:
        values = [x.coords[a] for a in block]
        holds = holds and all(min(values) - 1e-9 <= image.coords[a] <= max(values) + 1e-9 for a in block)
    return check(holds, partition=t, x=x, image=image)


@prop(SUITE, "strict-positivity")
def strict_positivity(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    x = sample.vector(space, nonneg=True, finite=True, zero_rate=0.8)
    return check(ops.apply(t, x).is_zero() == x.is_zero(), partition=t, x=x)


@prop(SUITE, "tower-property")
def tower_property(sample, ops):
    """S T = T S = S for S coarser than T."""
    space = sample.space()
    t = sample.partition(space)
    s = sample.coarsen(t)
    x = sample.lat(space)
    coarse = ops.apply(s, x)
    left = (ops.apply(s, ops.apply(t, x)), ops.apply(t, coarse))
    return compare(left, (coarse, coarse), fine=t, coarse=s, x=x)


@prop(SUITE, "range-of-extension")
def range_of_extension(sample, ops):
    """T^s x lies in R(T)^s, T^s fixes R(T)^s and x ∈ R(T)^s iff T^s x = x."""
    space = sample.space()
    t = sample.condexp(space)
    x = sample.vector(space, nonneg=True)
    image = ops.apply_ext(t, x)
    holds = ops.in_range(t, image) and compare(ops.apply_ext(t, image), image).holds
    holds = holds and ops.in_range(t, x) == compare(ops.apply_ext(t, x), x).holds
    return check(holds, partition=t, x=x, image=image)


@prop(SUITE, "infinite-band-of-extension")
def infinite_band_of_extension(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    x = sample.vector(space, nonneg=True)
    band, _ = ops.split_parts(ops.apply_ext(t, x))
    inner, _ = ops.split_parts(x)
    return compare(band, t.saturate(inner), partition=t, x=x)


@prop(SUITE, "commuting-bands")
def commuting_bands(sample, ops):
    """T commutes with P_B exactly for unions of blocks, and then T^s P_B = P_B T^s."""
    space = sample.space()
    t = sample.condexp(space)
    band = sample.band(space) if sample.rng.random() < 0.5 else sample.block_union(t)
    commuting = ops.commutes(t, band)
    holds = commuting == _is_block_union(t, band) == (t.commutation_witness(band) is None)
    x = sample.vector(space, nonneg=True)
    if commuting:
        holds = holds and compare(ops.apply_ext(t, ops.project(band, x)), ops.project(band, ops.apply_ext(t, x))).holds
    g = ops.apply_ext(t, x)
    holds = holds and ops.commutes(t, support(g))
    return check(holds, partition=t, band=band, x=x)


@prop(SUITE, "saturation")
def saturation(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    band = sample.band(space)
    closure = t.saturate(band)
    holds = ops.commutes(t, closure) and band <= closure
    holds = holds and all(any(band.mask[a] for a in block) for block in t.blocks if closure.mask[block[0]])
    return check(holds, partition=t, band=band, closure=closure)


def _independent_by_enumeration(ops, t: CondExp, bands) -> bool:
    space = t.space
    unit = space.unit()
    images = [ops.apply(t, b.unit()) for b in bands]
    for choice in product((None, True, False), repeat=len(bands)):
        mask = Band.full(space)
        expected = unit
        for band, image, pick in zip(bands, images, choice):
            if pick is None:
                continue
            mask = mask & (band if pick else ~band)
            expected = expected * (image if pick else unit - image)
        if not compare(ops.apply(t, mask.unit()), expected).holds:
            return False
    return True


@prop(SUITE, "independence-by-enumeration")
def independence_by_enumeration(sample, ops):
    space = sample.space()
    t = sample.condexp(space)
    bands = [sample.band(space) for _ in range(sample.rng.randint(1, 4))]
    return compare(ops.check_independence(t, bands), _independent_by_enumeration(ops, t, bands),
                   partition=t, bands=bands)


@prop(SUITE, "product-space-independence", RATIONAL_ONLY)
def product_space_independence(sample, ops):
    """Coordinate events of {0,1}^m are independent under the trivial T;
    with the identity T every family is."""
    probs = [sample.rng.choice((Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1, 3)))
             for _ in range(sample.rng.randint(1, 4))]
    space, bands = product_space(probs)
    holds = ops.check_independence(CondExp.trivial(space), bands)
    holds = holds and ops.check_independence(CondExp.identity(space), bands + [~bands[0]])
    return check(holds, probabilities=[str(p) for p in probs])


@prop(SUITE, "chebyshev-inequality")
def chebyshev_inequality(sample, ops):
    """T P_{(|x| - ε e)^+} e <= ε^{-r} T|x|^r."""
    space = sample.space()
    t = sample.condexp(space)
    x = sample.lat(space)
    eps = space.scalar(sample.rng.choice((Fraction(1, 4), Fraction(1, 2), 1, 2)))
    r = sample.rng.choice((1, 2))
    left = ops.apply(t, exceedance_band(x, space.zero(), eps).unit())
    right = ops.apply(t, power(x, r).as_lat()).scale(1 / eps ** r)
    return check(left.dominated_by(right) and chebyshev_holds(t, x, eps, r),
                 partition=t, x=x, epsilon=eps, r=r, left=left, right=right)


@prop(SUITE, "identity-expectation-is-uo")
def identity_expectation_is_uo(sample, ops):
    space = sample.space()
    xs = sample.vecseq(space)
    target = sample.lat(space) if sample.rng.random() < 0.5 else space.zero()
    left = ops.tp_converges(CondExp.identity(space), xs, target)
    return compare(left, ops.uo_limit(xs, target), xs=xs, target=target)
