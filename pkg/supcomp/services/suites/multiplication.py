"""Products on the positive cone of X^s and the exp functional calculus."""
import math

from supcomp.kernel.arithmetic import power
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF
from supcomp.services.suites.registry import FLOAT_ONLY, check, compare, pointwise, prop

SUITE = "multiplication"


def _times(a, b):
    if a == 0 or b == 0:
        return 0 * (b if a is INF else a)
    if a is INF or b is INF:
        return INF
    return a * b


def _parts(ops, x):
    band, finite = ops.split_parts(x)
    return ops.infinity_of(band), finite


def _positive(sample, space):
    # zeros and infinities together often enough to meet in one coordinate
    return sample.vector(space, nonneg=True, inf_rate=0.3, zero_rate=0.3)


@prop(SUITE, "product-coordinatewise")
def product_coordinatewise(sample, ops):
    space = sample.space()
    x, y = _positive(sample, space), _positive(sample, space)
    return compare(ops.multiply(x, y), pointwise(space, _times, x, y), x=x, y=y)


@prop(SUITE, "product-unit-and-commutativity")
def product_unit_and_commutativity(sample, ops):
    space = sample.space()
    x, y = _positive(sample, space), _positive(sample, space)
    left = (ops.multiply(x, space.unit()), ops.multiply(x, y), ops.multiply(x, space.zero()))
    right = (x, ops.multiply(y, x), space.zero())
    return compare(left, right, x=x, y=y)


@prop(SUITE, "product-distributes")
def product_distributes(sample, ops):
    """x(y + z) = xy + xz, x(y ∧ z) = xy ∧ xz and x(y ∨ z) = xy ∨ xz."""
    space = sample.space()
    x, y, z = (_positive(sample, space) for _ in range(3))
    xy, xz = ops.multiply(x, y), ops.multiply(x, z)
    left = (ops.multiply(x, ops.add(y, z)), ops.multiply(x, ops.meet(y, z)), ops.multiply(x, ops.join(y, z)))
    right = (ops.add(xy, xz), ops.meet(xy, xz), ops.join(xy, xz))
    return compare(left, right, x=x, y=y, z=z)


@prop(SUITE, "product-with-infinity-band")
def product_with_infinity_band(sample, ops):
    """x · ∞_B = ∞_{P_B x}."""
    space = sample.space()
    x = _positive(sample, space)
    band = sample.band(space)
    support = Band(space, tuple(m and c > 0 for m, c in zip(band.mask, x.coords)))
    left = (ops.mul_infinity_band(x, band), ops.multiply(x, ops.infinity_of(band)))
    right = (ops.infinity_of(support), ops.infinity_of(support))
    return compare(left, right, x=x, band=band)


@prop(SUITE, "products-of-infinity-bands")
def products_of_infinity_bands(sample, ops):
    """∞_B · ∞_C = ∞_B ∧ ∞_C = ∞_{B∩C}."""
    space = sample.space()
    b, c = sample.band(space), sample.band(space)
    product = ops.multiply(ops.infinity_of(b), ops.infinity_of(c))
    left = (product, ops.meet(ops.infinity_of(b), ops.infinity_of(c)))
    right = (ops.infinity_of(b & c), ops.infinity_of(b & c))
    return compare(left, right, B=b, C=c)


@prop(SUITE, "parts-of-products")
def parts_of_products(sample, ops):
    """(xy)^f = x^f y^f and (xy)^∞ = x^∞y^∞ + x^∞y^f + x^f y^∞."""
    space = sample.space()
    x, y = _positive(sample, space), _positive(sample, space)
    inf_x, fin_x = _parts(ops, x)
    inf_y, fin_y = _parts(ops, y)
    inf_xy, fin_xy = _parts(ops, ops.multiply(x, y))
    expansion = ops.add(
        ops.add(ops.multiply(inf_x, inf_y), ops.multiply(inf_x, fin_y)),
        ops.multiply(fin_x, inf_y),
    )
    return compare((fin_xy, inf_xy), (ops.multiply(fin_x, fin_y), expansion), x=x, y=y)


@prop(SUITE, "square-of-modulus")
def square_of_modulus(sample, ops):
    space = sample.space()
    a = sample.lat(space)
    modulus = abs(a)
    return compare(power(a, 2), ops.multiply(modulus, modulus), a=a)


@prop(SUITE, "exp-bounds", FLOAT_ONLY)
def exp_bounds(sample, ops):
    """e - x <= exp(-x) <= e on x >= 0, with exp(-∞) = 0."""
    space = sample.space()
    x = sample.vector(space, nonneg=True)
    value = ops.exp_neg(x)
    holds = value.dominated_by(space.unit())
    for c, v in zip(x.coords, value.coords):
        if c is INF:
            holds = holds and v == 0
        else:
            holds = holds and 1 - c <= v + 1e-12 and math.isclose(v, math.exp(-c), abs_tol=1e-12)
    return check(holds, x=x, exp_neg=value)


@prop(SUITE, "exp-inverse", FLOAT_ONLY)
def exp_inverse(sample, ops):
    """exp(x) exp(-x) = e on finite x >= 0."""
    space = sample.space()
    x = sample.lat(space, nonneg=True)
    product = ops.exp_pos(x) * ops.exp_neg(x)
    return compare(product, space.unit(), x=x)
