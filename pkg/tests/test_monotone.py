from fractions import Fraction

import pytest
from hypothesis import given, settings

from supcomp.errors import DomainError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.monotone import (
    Expectation,
    Linear,
    Projection,
    ScalarFunction,
    affine,
    clamp,
    extend_map,
    identity,
    positive_part,
    truncation_limit,
)
from supcomp.kernel.scalars import INF
from supcomp.kernel.vectors import AtomicSpace
from tests.strategies import coords, ext_nonneg

SPACE = AtomicSpace.uniform(2)
SPACE3 = AtomicSpace.uniform(3)


class TestLeaves:
    def test_linear_extension(self):
        f = Linear(((1, 1), (0, 1)))
        assert extend_map(f, SPACE.vector([INF, 2])) == SPACE.vector([INF, 2])

    def test_linear_needs_nonnegative_coefficients(self):
        with pytest.raises(DomainError):
            Linear(((1, -1), (0, 1)))

    def test_clamp_has_a_finite_limit(self):
        assert clamp(3)(SPACE.vector([INF, 5])) == SPACE.vector([3, 3])

    def test_affine_with_zero_slope_is_constant(self):
        assert affine(0, 2)(SPACE.vector([INF, -7])) == SPACE.vector([2, 2])

    def test_function_without_limit_cannot_be_extended(self):
        square = ScalarFunction(lambda c: c * c, None, "square")
        assert square(SPACE.vector([2, 3])) == SPACE.vector([4, 9])
        with pytest.raises(DomainError):
            square(SPACE.vector([INF, 3]))

    def test_expectation_leaf(self):
        t = CondExp.trivial(SPACE)
        assert Expectation(t)(SPACE.vector([INF, 0])) == SPACE.top()


class TestComposites:
    def test_sum_of_projection_and_identity(self):
        f = Projection(Band.of_atoms(SPACE, [0])) + identity()
        assert f(SPACE.vector([INF, 1])) == SPACE.vector([INF, 1])
        assert f(SPACE.vector([2, 1])) == SPACE.vector([4, 1])

    def test_meet_with_clamp(self):
        f = identity() & clamp(4)
        assert f(SPACE.vector([INF, 1])) == SPACE.vector([4, 1])

    def test_compose(self):
        f = affine(2, 1) @ positive_part()
        assert f(SPACE.vector([-3, 1])) == SPACE.vector([1, 3])
        assert f(SPACE.vector([INF, 1])) == SPACE.vector([INF, 3])


class TestTruncationOracle:
    @pytest.mark.parametrize(
        "f",
        [
            identity(),
            clamp(Fraction(5, 2)),
            affine(Fraction(1, 2), -3) | clamp(1),
            Linear(((1, 0, 2), (0, 0, 1), (1, 1, 1))) & affine(3, 0),
            Projection(Band.of_atoms(SPACE3, [1])) + positive_part(),
        ],
    )
    def test_structural_extension_matches_truncation(self, f):
        for values in ([INF, 0, 2], [INF, INF, -1], [1, 2, 3], [0, INF, Fraction(1, 2)]):
            x = SPACE3.vector(values)
            assert extend_map(f, x) == truncation_limit(f, x)

    @settings(max_examples=50)
    @given(coords(ext_nonneg))
    def test_clamped_sum(self, values):
        f = (identity() + Expectation(CondExp(SPACE3, ((0, 1), (2,))))) & affine(2, 7)
        x = SPACE3.vector(values)
        assert extend_map(f, x) == truncation_limit(f, x)
