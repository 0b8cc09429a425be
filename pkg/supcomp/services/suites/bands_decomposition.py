"""Band projections, the finite/infinite decomposition and extended maps."""
from supcomp.kernel.bands import Band
from supcomp.kernel.monotone import Expectation, Linear, Projection, truncation_limit
from supcomp.kernel.scalars import INF
from supcomp.kernel.sequences import remainder
from supcomp.kernel.vectors import make_vector
from supcomp.services.suites.registry import RATIONAL_ONLY, check, compare, prop, vacuous

SUITE = "bands-decomposition"

# far past every crossing of the generated piecewise affine maps
ORACLE_START = 2 ** 64


def _infinite_mask(x) -> Band:
    return Band(x.space, tuple(c is INF for c in x.coords))


def _band_of(ops, x) -> Band:
    band, _ = ops.split_parts(x)
    return band


@prop(SUITE, "projection-coordinatewise")
def projection_coordinatewise(sample, ops):
    space = sample.space()
    band, x = sample.band(space), sample.vector(space)
    nil = space.scalar(0)
    expected = make_vector(space, (c if m else nil for c, m in zip(x.coords, band.mask)))
    left = (ops.project(band, x), ops.add(ops.project(band, x), ops.project(~band, x)))
    return compare(left, (expected, x), band=band, x=x)


@prop(SUITE, "infinity-of-bands")
def infinity_of_bands(sample, ops):
    """∞_B ∧ ∞_C = ∞_{B∩C}, ∞_B + ∞_C = ∞_{B∪C} and ∞_B = P_B(∞ e)."""
    space = sample.space()
    b, c = sample.band(space), sample.band(space)
    inf_b, inf_c = ops.infinity_of(b), ops.infinity_of(c)
    nil = space.scalar(0)
    left = (ops.meet(inf_b, inf_c), ops.add(inf_b, inf_c), ops.project(b, space.top()), inf_b)
    right = (
        ops.infinity_of(b & c),
        ops.infinity_of(b | c),
        inf_b,
        make_vector(space, (INF if m else nil for m in b.mask)),
    )
    return compare(left, right, B=b, C=c)


@prop(SUITE, "band-boolean-algebra")
def band_boolean_algebra(sample, ops):
    space = sample.space()
    b, c = sample.band(space), sample.band(space)
    holds = (b | ~b).is_full() and (b & ~b).is_empty() and ~~b == b
    holds = holds and ~(b | c) == (~b & ~c) and ~(b & c) == (~b | ~c)
    holds = holds and (b & c) <= b <= (b | c)
    return check(holds, B=b, C=c)


@prop(SUITE, "split-parts")
def split_parts_property(sample, ops):
    """x = ∞_B + u with u ⊥ B, B the atoms where x is infinite."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    band, u = ops.split_parts(x)
    holds = band == _infinite_mask(x) and u.is_finite() and ops.project(band, u).is_zero()
    holds = holds and compare(ops.add(ops.infinity_of(band), u), x).holds
    return check(holds, x=x, band=band, finite_part=u)


@prop(SUITE, "split-parts-uniqueness")
def split_parts_uniqueness(sample, ops):
    """Any decomposition x = ∞_C + v with v ⊥ C is the one split_parts finds."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    band, u = ops.split_parts(x)
    candidate = band if sample.rng.random() < 0.5 else sample.band(space)
    v = ops.project(~candidate, x)
    if not v.is_finite() or not compare(ops.add(ops.infinity_of(candidate), v), x).holds:
        return vacuous(x=x, candidate=candidate)
    return compare((candidate, v), (band, u), x=x, candidate=candidate)


@prop(SUITE, "infinite-band-by-truncation")
def infinite_band_by_truncation(sample, ops):
    """inf_k P_{(x - k e)^+} = P_{x^∞}, and for u >= 0 the general form
    P_u P_{x^∞} + P_u^d P_x."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    u = sample.lat(space, nonneg=True)
    left = (ops.infinite_band_by_truncation(x), ops.infinite_band_by_truncation(x, u))
    general = Band(space, tuple(
        (w > 0 and c is INF) or (w == 0 and c != 0) for c, w in zip(x.coords, u.coords)
    ))
    return compare(left, (_infinite_mask(x), general), x=x, u=u)


@prop(SUITE, "infinite-parts-of-combinations")
def infinite_parts_of_combinations(sample, ops):
    """(x+y)^∞ = x^∞ + y^∞, (λx)^∞ = λ x^∞, (x∨y)^∞ = x^∞ ∨ y^∞,
    (x∧y)^∞ = x^∞ ∧ y^∞ and x <= y implies x^∞ <= y^∞."""
    space = sample.space()
    x, y, z = (sample.vector(space, nonneg=True) for _ in range(3))
    lam = sample.positive()
    inf_x, inf_y = ops.infinity_of(_band_of(ops, x)), ops.infinity_of(_band_of(ops, y))
    left = (
        ops.infinity_of(_band_of(ops, ops.add(x, y))),
        ops.infinity_of(_band_of(ops, ops.scale(lam, x))),
        ops.infinity_of(_band_of(ops, ops.join(x, y))),
        ops.infinity_of(_band_of(ops, ops.meet(x, y))),
    )
    right = (ops.add(inf_x, inf_y), ops.scale(lam, inf_x), ops.join(inf_x, inf_y), ops.meet(inf_x, inf_y))
    outcome = compare(left, right, x=x, y=y, z=z, factor=lam)
    outcome.holds = outcome.holds and _band_of(ops, x) <= _band_of(ops, ops.add(x, z))
    return outcome


@prop(SUITE, "finite-projection-criterion")
def finite_projection_criterion(sample, ops):
    """P ⊥ P_{x^∞} exactly when P x is finite."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    band = sample.band(space)
    disjoint = (band & _band_of(ops, x)).is_empty()
    return check(disjoint == ops.project(band, x).is_finite(), x=x, band=band)


@prop(SUITE, "extend-map-matches-truncation-limit", RATIONAL_ONLY)
def extend_map_matches_truncation_limit(sample, ops):
    space = sample.space()
    f = sample.monotone_map(space)
    x = sample.vector(space)
    left = ops.extend_map(f, x)
    right = truncation_limit(f, x, start=ORACLE_START)
    return compare(left, right, map=f, x=x)


@prop(SUITE, "extend-map-equivalent-trees")
def extend_map_equivalent_trees(sample, ops):
    """P∘P and P, E∘E and E, f ∧ f and f extend to the same values."""
    space = sample.space()
    p = Projection(sample.band(space))
    e = Expectation(sample.partition(space))
    f = sample.monotone_map(space, depth=1)
    x = sample.vector(space, nonneg=True)
    left = (ops.extend_map(p @ p, x), ops.extend_map(e @ e, x), ops.extend_map(f & f, x))
    right = (ops.extend_map(p, x), ops.extend_map(e, x), ops.extend_map(f, x))
    return compare(left, right, projection=p.band, expectation=e.condexp, map=f, x=x)


@prop(SUITE, "extend-map-additive")
def extend_map_additive(sample, ops):
    """Extensions of positive linear maps stay additive and positively homogeneous."""
    space = sample.space()
    kind = sample.rng.choice(("linear", "projection", "expectation"))
    if kind == "projection":
        f = Projection(sample.band(space))
    elif kind == "expectation":
        f = Expectation(sample.partition(space))
    else:
        f = Linear(tuple(
            tuple(sample.rng.choice((0, 1, 2)) for _ in range(space.atom_count)) for _ in range(space.atom_count)
        ))
    x, y = sample.vector(space, nonneg=True), sample.vector(space, nonneg=True)
    lam = sample.positive()
    left = (ops.extend_map(f, ops.add(x, y)), ops.extend_map(f, ops.scale(lam, x)))
    right = (ops.add(ops.extend_map(f, x), ops.extend_map(f, y)), ops.scale(lam, ops.extend_map(f, x)))
    return compare(left, right, map=f, x=x, y=y, factor=lam)


@prop(SUITE, "extend-map-monotone")
def extend_map_monotone(sample, ops):
    space = sample.space()
    f, g = sample.monotone_map(space, depth=1), sample.monotone_map(space, depth=1)
    x = sample.vector(space)
    y = ops.add(x, sample.vector(space, nonneg=True))
    holds = ops.extend_map(f, x) <= ops.extend_map(f, y)
    holds = holds and ops.extend_map(f, x) <= ops.extend_map(f | g, x)
    return check(holds, f=f, g=g, x=x, y=y)


@prop(SUITE, "expectation-extension-range")
def expectation_extension_range(sample, ops):
    """T^s maps into the range of T^s and fixes it."""
    space = sample.space()
    t = sample.partition(space)
    x = sample.vector(space, nonneg=True)
    image = ops.extend_map(Expectation(t), x)
    holds = ops.in_range(t, image) and compare(ops.extend_map(Expectation(t), image), image).holds
    return check(holds, partition=t, x=x, image=image)


@prop(SUITE, "band-residual-limit")
def band_residual_limit(sample, ops):
    """lim_n (y ∧ R_n) = P y for P the infinite band of Σ x_n."""
    space = sample.space()
    xs = sample.vecseq(space, nonneg=True)
    y = sample.lat(space, nonneg=True)
    band = _band_of(ops, ops.series_sum(xs))
    left = ops.band_residual_limit(xs, y)
    right = ops.project(band, y)
    late = ops.meet(y, remainder(xs, xs.horizon + 1))
    if xs.tail.kind != "geometric":
        left, right = (left, late), (right, right)
    return compare(left, right, xs=xs, y=y)