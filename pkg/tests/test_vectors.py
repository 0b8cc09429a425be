from fractions import Fraction

import pytest
from hypothesis import given

from supcomp.errors import DimensionError, DomainError, ModelValidationError
from supcomp.kernel.scalars import INF, Backend, coerce, format_scalar
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, sum_of, sup_of
from tests.strategies import coords, ext_nonneg, fractions

SPACE = AtomicSpace.uniform(3)


class TestScalars:
    def test_zero_times_infinity_is_zero(self):
        assert INF * Fraction(0) == 0
        assert Fraction(0) * INF == 0

    def test_positive_times_infinity(self):
        assert INF * Fraction(1, 3) is INF

    def test_infinity_absorbs_addition(self):
        assert INF + Fraction(-5) is INF
        assert Fraction(2) + INF is INF

    def test_infinity_minus_infinity_is_undefined(self):
        with pytest.raises(DomainError):
            INF - INF

    def test_negative_infinity_is_not_representable(self):
        with pytest.raises(DomainError):
            -INF
        with pytest.raises(DomainError):
            Fraction(1) - INF

    def test_coerce_strings(self):
        assert coerce("3/4", Backend.RATIONAL) == Fraction(3, 4)
        assert coerce("inf", Backend.RATIONAL) is INF
        assert coerce("1/2", Backend.FLOAT) == 0.5

    def test_coerce_rejects_nan(self):
        with pytest.raises(DomainError):
            coerce(float("nan"), Backend.FLOAT)

    def test_format(self):
        assert format_scalar(Fraction(3, 4)) == "3/4"
        assert format_scalar(Fraction(-2)) == "-2"
        assert format_scalar(INF) == "inf"
        assert format_scalar(0.5) == "0.5"


class TestAtomicSpace:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ModelValidationError) as err:
            AtomicSpace((Fraction(1, 2), Fraction(2, 5)))
        assert err.value.field == "weights"

    def test_weights_must_be_positive(self):
        with pytest.raises(ModelValidationError):
            AtomicSpace((Fraction(1), Fraction(0)))

    def test_vector_length_is_checked(self):
        with pytest.raises(DimensionError):
            SPACE.vector([1, 2])

    def test_finite_vectors_are_lattice_vectors(self):
        assert isinstance(SPACE.vector([1, 2, 3]), LatVec)
        assert type(SPACE.vector([1, INF, 3])) is ExtVec

    def test_operands_from_other_spaces_are_rejected(self):
        with pytest.raises(DimensionError):
            SPACE.unit() + AtomicSpace.uniform(2).unit()


class TestLatticeOperations:
    def test_meet_and_join(self):
        x = SPACE.vector([INF, 2, 0])
        y = SPACE.vector([1, INF, 0])
        assert x & y == SPACE.vector([1, 2, 0])
        assert x | y == SPACE.vector([INF, INF, 0])

    def test_addition(self):
        assert SPACE.vector([INF, 1, 0]) + SPACE.vector([2, 3, 0]) == SPACE.vector([INF, 4, 0])

    def test_scaling(self):
        space = AtomicSpace.uniform(2)
        assert space.vector([INF, 5]).scale(0) == space.vector([0, 0])
        assert space.vector([INF, 1]).scale(2) == space.vector([INF, 2])

    def test_negative_scaling_needs_a_finite_vector(self):
        assert SPACE.vector([1, -2, 0]).scale(-1) == SPACE.vector([-1, 2, 0])
        with pytest.raises(DomainError):
            SPACE.vector([INF, 1, 0]).scale(-1)

    def test_positive_and_negative_parts(self):
        x = SPACE.vector([INF, -2, 3])
        assert x.pos_part() == SPACE.vector([INF, 0, 3])
        assert x.neg_part() == SPACE.vector([0, 2, 0])

    def test_only_finite_vectors_are_subtracted(self):
        assert SPACE.vector([INF, 3, 1]) - SPACE.vector([1, 1, 1]) == SPACE.vector([INF, 2, 0])
        with pytest.raises(DomainError):
            SPACE.vector([1, 1, 1]) - SPACE.vector([INF, 0, 0])

    def test_order(self):
        assert SPACE.vector([1, 2, 3]) <= SPACE.vector([1, INF, 3])
        assert not SPACE.top() <= SPACE.unit()

    def test_total_uses_the_weights(self):
        space = AtomicSpace((Fraction(1, 4), Fraction(3, 4)))
        assert space.vector([4, 8]).total() == 7

    def test_sup_of_empty_family(self):
        with pytest.raises(DomainError):
            sup_of([])

    def test_sum_of(self):
        assert sum_of([], SPACE) == SPACE.zero()
        total = sum_of([SPACE.vector([1, INF, 0]), SPACE.vector([2, 3, Fraction(1, 2)])], SPACE)
        assert total == SPACE.vector([3, INF, Fraction(1, 2)])

    def test_float_comparison_uses_tolerance(self, float_space2):
        x = float_space2.vector([0.1 + 0.2, 1.0])
        assert x.close_to(float_space2.vector([0.3, 1.0]))
        assert not x.close_to(float_space2.vector([0.3, INF]))


class TestLaws:
    @given(coords(fractions), coords(fractions))
    def test_meet_join_commute(self, a, b):
        x, y = SPACE.vector(a), SPACE.vector(b)
        assert x & y == y & x
        assert x | y == y | x

    @given(coords(ext_nonneg), coords(ext_nonneg), coords(ext_nonneg))
    def test_distributive(self, a, b, c):
        x, y, z = SPACE.vector(a), SPACE.vector(b), SPACE.vector(c)
        assert x & (y | z) == (x & y) | (x & z)
        assert x | (y & z) == (x | y) & (x | z)

    @given(coords(ext_nonneg), coords(ext_nonneg), coords(ext_nonneg))
    def test_addition_distributes_over_meet(self, a, b, c):
        x, y, z = SPACE.vector(a), SPACE.vector(b), SPACE.vector(c)
        assert x + (y & z) == (x + y) & (x + z)
        assert x + (y | z) == (x + y) | (x + z)

    @given(coords(fractions), coords(fractions))
    def test_birkhoff_identity(self, a, b):
        x, y = SPACE.vector(a), SPACE.vector(b)
        assert (x | y) + (x & y) == x + y

    @given(coords(fractions))
    def test_parts_recombine(self, a):
        x = SPACE.vector(a)
        assert x.pos_part() - x.neg_part() == x
        assert abs(x) == x.pos_part() + x.neg_part()

    @given(coords(ext_nonneg), coords(ext_nonneg))
    def test_scaling_is_additive(self, a, b):
        x, y = SPACE.vector(a), SPACE.vector(b)
        assert (x + y).scale(3) == x.scale(3) + y.scale(3)
