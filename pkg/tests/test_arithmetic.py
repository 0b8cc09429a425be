from fractions import Fraction

import pytest
from hypothesis import given

from supcomp.errors import BackendError, ContractError, DomainError
from supcomp.kernel.arithmetic import (
    cap,
    exp_neg,
    exp_pos,
    multiply,
    mul_infinity_band,
    power,
    riesz_decompose,
    truncate,
)
from supcomp.kernel.bands import Band
from supcomp.kernel.scalars import INF
from supcomp.kernel.vectors import AtomicSpace
from tests.strategies import coords, ext_nonneg

SPACE = AtomicSpace.uniform(3)


class TestRieszDecomposition:
    def test_mixed_coordinates(self):
        x = SPACE.vector([5, INF, 1])
        y = SPACE.vector([3, INF, 0])
        z = SPACE.vector([4, 2, 1])
        y1, z1 = riesz_decompose(x, y, z)
        assert y1 == SPACE.vector([3, INF, 0])
        assert z1 == SPACE.vector([2, 0, 1])

    def test_infinite_remainder(self):
        space = AtomicSpace.uniform(1)
        y1, z1 = riesz_decompose(space.vector([INF]), space.vector([2]), space.vector([INF]))
        assert y1 == space.vector([2])
        assert z1 == space.vector([INF])

    def test_requires_domination(self):
        with pytest.raises(ContractError):
            riesz_decompose(SPACE.vector([3, 0, 0]), SPACE.vector([1, 0, 0]), SPACE.vector([1, 0, 0]))

    @given(coords(ext_nonneg), coords(ext_nonneg), coords(ext_nonneg))
    def test_parts_add_up(self, a, b, c):
        y, z = SPACE.vector(b), SPACE.vector(c)
        x = (SPACE.vector(a) & (y + z))
        y1, z1 = riesz_decompose(x, y, z)
        assert y1 + z1 == x
        assert y1 <= y and z1 <= z
        assert y1.is_nonnegative() and z1.is_nonnegative()
        if x.is_finite():
            assert y1.is_finite() and z1.is_finite()


class TestMultiplication:
    def test_zero_times_infinity(self):
        product = multiply(SPACE.vector([INF, 2, 0]), SPACE.vector([0, 3, INF]))
        assert product == SPACE.vector([0, 6, 0])

    def test_positive_cone_only(self):
        with pytest.raises(DomainError):
            multiply(SPACE.vector([-1, 0, 0]), SPACE.unit())

    def test_infinity_band(self):
        band = Band.of_atoms(SPACE, [0, 1])
        assert mul_infinity_band(SPACE.vector([2, 0, 1]), band) == SPACE.vector([INF, 0, 0])

    @given(coords(ext_nonneg), coords(ext_nonneg))
    def test_commutative(self, a, b):
        x, y = SPACE.vector(a), SPACE.vector(b)
        assert multiply(x, y) == multiply(y, x)

    @given(coords(ext_nonneg))
    def test_unit_is_neutral(self, a):
        x = SPACE.vector(a)
        assert multiply(x, SPACE.unit()) == x


class TestTruncation:
    def test_truncate(self):
        space = AtomicSpace.uniform(2)
        assert truncate(space.vector([INF, 3]), 5) == space.vector([5, 3])

    def test_level_must_be_positive(self):
        with pytest.raises(DomainError):
            truncate(SPACE.unit(), 0)

    def test_cap_allows_negative_vectors(self):
        assert cap(SPACE.vector([-1, INF, 4]), 2) == SPACE.vector([-1, 2, 2])


class TestExponentials:
    def test_exp_neg(self, float_space2, float_space1):
        assert exp_neg(float_space2.vector([0, INF])) == float_space2.vector([1.0, 0.0])
        assert exp_neg(float_space1.vector([0.5]))[0] == pytest.approx(0.60653, abs=1e-5)

    def test_exp_needs_float_backend(self):
        with pytest.raises(BackendError):
            exp_neg(SPACE.unit())
        with pytest.raises(BackendError):
            exp_pos(SPACE.unit())

    def test_exp_pos(self, float_space2):
        values = exp_pos(float_space2.vector([0, 1]))
        assert values[0] == 1.0
        assert values[1] == pytest.approx(2.718281828)


class TestPower:
    def test_integer_power_is_exact(self):
        assert power(SPACE.vector([-2, Fraction(1, 2), INF]), 2) == SPACE.vector([4, Fraction(1, 4), INF])

    def test_fractional_power_needs_float(self):
        with pytest.raises(BackendError):
            power(SPACE.unit(), Fraction(1, 2))

    def test_exponent_must_be_positive(self):
        with pytest.raises(DomainError):
            power(SPACE.unit(), 0)
