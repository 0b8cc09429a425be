"""Lattice and cone laws of X^s on random atomic spaces."""
from supcomp.kernel.scalars import INF, is_finite
from supcomp.kernel.vectors import sup_of
from supcomp.services.suites.registry import check, compare, pointwise, prop, vacuous

SUITE = "cone-axioms"


def _smaller(a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return min(a, b)


def _larger(a, b):
    if a is INF or b is INF:
        return INF
    return max(a, b)


def _plus(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


@prop(SUITE, "meet-join-coordinatewise")
def meet_join_coordinatewise(sample, ops):
    space = sample.space()
    x, y = sample.vector(space), sample.vector(space)
    left = (ops.meet(x, y), ops.join(x, y))
    right = (pointwise(space, _smaller, x, y), pointwise(space, _larger, x, y))
    return compare(left, right, x=x, y=y)


@prop(SUITE, "add-scale-coordinatewise")
def add_scale_coordinatewise(sample, ops):
    space = sample.space()
    x, y = sample.vector(space), sample.vector(space)
    lam = space.scalar(0 if sample.rng.random() < 0.25 else sample.positive())
    nil = space.scalar(0)
    left = (ops.add(x, y), ops.scale(lam, x))
    right = (
        pointwise(space, _plus, x, y),
        pointwise(space, lambda c: nil if lam == 0 else (INF if c is INF else lam * c), x),
    )
    return compare(left, right, x=x, y=y, factor=lam)


@prop(SUITE, "negative-scaling-of-finite-vectors")
def negative_scaling(sample, ops):
    space = sample.space()
    a = sample.lat(space)
    lam = -space.scalar(sample.positive())
    return compare(ops.scale(lam, a), pointwise(space, lambda c: lam * c, a), a=a, factor=lam)


@prop(SUITE, "positive-negative-parts")
def positive_negative_parts(sample, ops):
    space = sample.space()
    x = sample.vector(space)
    nil = space.scalar(0)
    left = (ops.pos_part(x), ops.neg_part(x))
    right = (
        pointwise(space, lambda c: c if c > 0 else nil, x),
        pointwise(space, lambda c: -c if c < 0 else nil, x),
    )
    return compare(left, right, x=x)


@prop(SUITE, "parts-are-disjoint")
def parts_are_disjoint(sample, ops):
    space = sample.space()
    x = sample.vector(space)
    p, n = ops.pos_part(x), ops.neg_part(x)
    holds = ops.meet(p, n).is_zero() and n.is_finite()
    if x.is_finite():
        holds = holds and ops.add(x, n) == p
    return check(holds, x=x, positive=p, negative=n)


@prop(SUITE, "translation-of-meets")
def translation_of_meets(sample, ops):
    """x + (a ∧ y) = (x + a) ∧ (x + y) for finite a."""
    space = sample.space()
    x, y, a = sample.vector(space), sample.vector(space), sample.lat(space)
    left = ops.add(x, ops.meet(a, y))
    right = ops.meet(ops.add(x, a), ops.add(x, y))
    return compare(left, right, x=x, y=y, a=a)


@prop(SUITE, "positive-translation-of-meets-and-joins")
def positive_translation(sample, ops):
    space = sample.space()
    a, x, y = (sample.vector(space, nonneg=True) for _ in range(3))
    left = (ops.add(a, ops.meet(x, y)), ops.add(a, ops.join(x, y)))
    right = (ops.meet(ops.add(a, x), ops.add(a, y)), ops.join(ops.add(a, x), ops.add(a, y)))
    return compare(left, right, a=a, x=x, y=y)


@prop(SUITE, "below-finite-is-finite")
def below_finite_is_finite(sample, ops):
    space = sample.space()
    x, z = sample.lat(space), sample.vector(space)
    y = ops.meet(x, z)
    return check(y <= x and y.is_finite(), x=x, y=y)


@prop(SUITE, "all-infinite-is-greatest")
def all_infinite_is_greatest(sample, ops):
    space = sample.space()
    x = sample.vector(space)
    top = space.top()
    return check(x <= top and ops.join(x, top) == top and ops.meet(x, top) == x, x=x)


@prop(SUITE, "truncations-recover-vector")
def truncations_recover_vector(sample, ops):
    """x = sup_k (k e ∧ x): truncations increase, agree with x on finite
    coordinates once k passes them and grow without bound elsewhere."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    finite = [c for c in x.coords if is_finite(c)]
    k = 1 + int(max(finite, default=0))
    low, high = ops.truncate(x, k), ops.truncate(x, 2 * k)
    expected_low = pointwise(space, lambda c: space.scalar(k) if c is INF else c, x)
    expected_high = pointwise(space, lambda c: space.scalar(2 * k) if c is INF else c, x)
    holds = low <= high and low.is_finite() and compare(low, expected_low).holds
    holds = holds and compare(high, expected_high).holds
    return check(holds, x=x, k=k, low=low, high=high)


@prop(SUITE, "birkhoff-inequality")
def birkhoff_inequality(sample, ops):
    space = sample.space()
    a, b, c = sample.lat(space), sample.lat(space), sample.vector(space)
    left = abs(ops.meet(a, c).as_lat() - ops.meet(b, c).as_lat())
    right = abs(a - b)
    return check(left <= right, a=a, b=b, c=c, left=left, right=right)


@prop(SUITE, "lattice-distributivity")
def lattice_distributivity(sample, ops):
    space = sample.space()
    x, y, z = (sample.vector(space) for _ in range(3))
    left = (ops.meet(x, ops.join(y, z)), ops.join(x, ops.meet(y, z)))
    right = (ops.join(ops.meet(x, y), ops.meet(x, z)), ops.meet(ops.join(x, y), ops.join(x, z)))
    return compare(left, right, x=x, y=y, z=z)


@prop(SUITE, "suprema-of-families")
def suprema_of_families(sample, ops):
    """sup A ∨ sup B = sup(a ∨ b) and sup A ∧ sup B = sup(a ∧ b)."""
    space = sample.space()
    family_a = [sample.vector(space) for _ in range(sample.rng.randint(1, 4))]
    family_b = [sample.vector(space) for _ in range(sample.rng.randint(1, 4))]
    sup_a, sup_b = sup_of(family_a), sup_of(family_b)
    left = (ops.join(sup_a, sup_b), ops.meet(sup_a, sup_b))
    right = (
        sup_of([ops.join(a, b) for a in family_a for b in family_b]),
        sup_of([ops.meet(a, b) for a in family_a for b in family_b]),
    )
    return compare(left, right, A=family_a, B=family_b)


@prop(SUITE, "sum-and-join-of-meet")
def sum_and_join_of_meet(sample, ops):
    """x + y = (x ∨ y) + (x ∧ y), and x + y = x ∨ y when x ∧ y = 0."""
    space = sample.space()
    x, y = sample.vector(space), sample.vector(space)
    holds = compare(ops.add(x, y), ops.add(ops.join(x, y), ops.meet(x, y))).holds
    u, v = sample.disjoint_pair(space)
    holds = holds and ops.meet(u, v).is_zero() and ops.add(u, v) == ops.join(u, v)
    return check(holds, x=x, y=y, u=u, v=v)


@prop(SUITE, "meet-with-sums")
def meet_with_sums(sample, ops):
    """x ∧ (y + z) <= x ∧ y + x ∧ z, with equality for disjoint y, z."""
    space = sample.space()
    x, y, z = (sample.vector(space, nonneg=True) for _ in range(3))
    holds = ops.meet(x, ops.add(y, z)) <= ops.add(ops.meet(x, y), ops.meet(x, z))
    u, v = sample.disjoint_pair(space)
    left = ops.meet(x, ops.add(u, v))
    right = ops.add(ops.meet(x, u), ops.meet(x, v))
    return check(holds and compare(left, right).holds, x=x, y=y, z=z, u=u, v=v, left=left, right=right)


@prop(SUITE, "meet-ignores-disjoint-summand")
def meet_ignores_disjoint_summand(sample, ops):
    space = sample.space()
    x, z = sample.disjoint_pair(space)
    y = sample.vector(space, nonneg=True)
    if not ops.meet(x, z).is_zero():
        return vacuous(x=x, z=z)
    return compare(ops.meet(x, ops.add(y, z)), ops.meet(x, y), x=x, y=y, z=z)


@prop(SUITE, "disjoint-cross-meets")
def disjoint_cross_meets(sample, ops):
    """x ⊥ y and v ⊥ w imply (x + v) ∧ (y + w) = x ∧ w + y ∧ v."""
    space = sample.space()
    x, y = sample.disjoint_pair(space)
    v, w = sample.disjoint_pair(space)
    left = ops.meet(ops.add(x, v), ops.add(y, w))
    right = ops.add(ops.meet(x, w), ops.meet(y, v))
    return compare(left, right, x=x, y=y, v=v, w=w)


@prop(SUITE, "suprema-of-sums")
def suprema_of_sums(sample, ops):
    """sup(A + B) = sup A + sup B and sup_A (a ∧ x) = (sup A) ∧ x."""
    space = sample.space()
    family_a = [sample.vector(space) for _ in range(sample.rng.randint(1, 4))]
    family_b = [sample.vector(space) for _ in range(sample.rng.randint(1, 4))]
    x = sample.vector(space)
    left = (sup_of([ops.add(a, b) for a in family_a for b in family_b]), sup_of([ops.meet(a, x) for a in family_a]))
    right = (ops.add(sup_of(family_a), sup_of(family_b)), ops.meet(sup_of(family_a), x))
    return compare(left, right, A=family_a, B=family_b, x=x)


@prop(SUITE, "unit-is-weak-unit")
def unit_is_weak_unit(sample, ops):
    """x ∧ e = 0 only for x = 0 in the positive cone."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    return check(ops.meet(x, space.unit()).is_zero() == x.is_zero(), x=x)


@prop(SUITE, "riesz-decomposition")
def riesz_decomposition(sample, ops):
    space = sample.space()
    y, z = sample.vector(space, nonneg=True), sample.vector(space, nonneg=True)
    x = ops.meet(ops.add(y, z), sample.vector(space))
    y1, z1 = ops.riesz_decompose(x, y, z)
    holds = y1 <= y and z1 <= z and compare(ops.add(y1, z1), x).holds
    if x.is_finite():
        holds = holds and y1.is_finite() and z1.is_finite()
    return check(holds, x=x, y=y, z=z, y1=y1, z1=z1)
