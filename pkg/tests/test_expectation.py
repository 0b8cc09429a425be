from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supcomp.errors import ModelValidationError, SizeError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import (
    CondExp,
    chebyshev_holds,
    check_independence,
    exceedance_band,
    independence_violation,
    tp_converges,
    tp_definitional,
    tp_spanning_form,
    tp_unit_form,
)
from supcomp.kernel.scalars import INF
from supcomp.kernel.sequences import Constant, Geometric, Periodic, VecSeq
from supcomp.kernel.stochastic import product_space
from supcomp.kernel.vectors import AtomicSpace
from tests.strategies import coords, ext_nonneg, fractions

SPACE = AtomicSpace.uniform(4)
PAIRS = CondExp(SPACE, ((0, 1), (2, 3)))


class TestCondExp:
    def test_block_averages(self):
        assert PAIRS.apply(SPACE.vector([1, 3, 2, 6])) == SPACE.vector([2, 2, 4, 4])

    def test_weighted_averages(self):
        space = AtomicSpace((Fraction(1, 4), Fraction(3, 4)))
        t = CondExp.trivial(space)
        assert t.apply(space.vector([4, 8])) == space.vector([7, 7])

    def test_extension_spreads_infinity_over_its_block(self):
        assert PAIRS.apply_ext(SPACE.vector([INF, 3, 2, 6])) == SPACE.vector([INF, INF, 4, 4])

    def test_blocks_must_partition_the_atoms(self):
        with pytest.raises(ModelValidationError):
            CondExp(SPACE, ((0, 1), (1, 2, 3)))
        with pytest.raises(ModelValidationError):
            CondExp(SPACE, ((0, 1), (2,)))

    def test_from_labels(self):
        assert CondExp.from_labels(SPACE, ["a", "b", "a", "b"]).blocks == ((0, 2), (1, 3))

    def test_range(self):
        assert PAIRS.in_range(SPACE.vector([INF, INF, 1, 1]))
        assert not PAIRS.in_range(SPACE.vector([INF, 0, 1, 1]))

    def test_commuting_bands_are_block_unions(self):
        assert PAIRS.commutes(Band.of_atoms(SPACE, [2, 3]))
        loose = Band.of_atoms(SPACE, [0])
        assert not PAIRS.commutes(loose)
        assert PAIRS.commutation_witness(loose) is not None
        assert PAIRS.saturate(loose) == Band.of_atoms(SPACE, [0, 1])

    def test_coarsening(self):
        assert CondExp.trivial(SPACE).is_coarsening_of(PAIRS)
        assert PAIRS.is_coarsening_of(CondExp.identity(SPACE))
        assert not PAIRS.is_coarsening_of(CondExp(SPACE, ((0, 2), (1, 3))))

    @given(coords(fractions, size=4))
    def test_averaging_projection(self, values):
        x = SPACE.vector(values)
        image = PAIRS.apply(x)
        assert PAIRS.apply(image) == image
        assert image.total() == x.total()

    @given(coords(ext_nonneg, size=4))
    def test_extension_lands_in_the_range(self, values):
        image = PAIRS.apply_ext(SPACE.vector(values))
        assert PAIRS.in_range(image)
        assert PAIRS.apply_ext(image) == image


class TestConditionalConvergence:
    def test_convergent_sequence(self):
        xs = VecSeq(SPACE, (), Geometric(SPACE.unit(), Fraction(1, 2)))
        assert tp_converges(PAIRS, xs, SPACE.zero())
        assert not tp_converges(PAIRS, xs, SPACE.unit())

    def test_oscillation_is_seen_through_the_blocks(self):
        xs = VecSeq(SPACE, (), Periodic((SPACE.indicator([0]), SPACE.zero())))
        assert not tp_converges(PAIRS, xs, SPACE.zero())
        assert tp_converges(PAIRS, VecSeq(SPACE, (), Constant(SPACE.zero())), SPACE.zero())

    @given(st.lists(coords(fractions, size=4), min_size=1, max_size=3), coords(fractions, size=4))
    def test_forms_agree_on_periodic_tails(self, values, other):
        xs = VecSeq(SPACE, (SPACE.unit(),), Periodic(tuple(SPACE.vector(v) for v in values)))
        for target in (SPACE.vector(values[0]), SPACE.vector(other)):
            for t in (PAIRS, CondExp.identity(SPACE)):
                envelope = tp_unit_form(t, xs, target)
                assert envelope == tp_spanning_form(t, xs, target) == tp_definitional(t, xs, target)

    def test_envelope_form_sees_a_geometric_tail(self):
        xs = VecSeq(SPACE, (), Geometric(SPACE.vector([1, 0, 2, 0]), Fraction(1, 4)))
        assert tp_unit_form(PAIRS, xs, SPACE.zero())
        assert not tp_unit_form(PAIRS, xs, SPACE.indicator([3]))

    def test_identity_expectation_matches_uo(self):
        xs = VecSeq(SPACE, (), Periodic((SPACE.indicator([2]), SPACE.indicator([2]))))
        assert tp_converges(CondExp.identity(SPACE), xs, SPACE.indicator([2]))

    def test_exceedance_band(self):
        x = SPACE.vector([3, Fraction(1, 2), -2, 0])
        assert exceedance_band(x, SPACE.zero(), 1) == Band.of_atoms(SPACE, [0, 2])

    @pytest.mark.parametrize("r", [1, 2])
    def test_chebyshev(self, r):
        x = SPACE.vector([3, Fraction(1, 2), -2, 0])
        for eps in (Fraction(1, 4), 1, 2):
            assert chebyshev_holds(PAIRS, x, eps, r)


class TestIndependence:
    def test_overlapping_bands_are_dependent(self):
        space = AtomicSpace.uniform(3)
        bands = [Band.of_atoms(space, [0, 1]), Band.of_atoms(space, [1, 2])]
        assert not check_independence(CondExp.trivial(space), bands)
        assert independence_violation(CondExp.trivial(space), bands) is not None

    def test_coordinate_bands_are_independent(self):
        space, bands = product_space([Fraction(1, 2), Fraction(1, 2)])
        assert check_independence(CondExp.trivial(space), bands)

    def test_identity_makes_every_family_independent(self):
        bands = [Band.of_atoms(SPACE, [0, 1]), Band.of_atoms(SPACE, [1, 2]), Band.of_atoms(SPACE, [3])]
        assert check_independence(CondExp.identity(SPACE), bands)

    def test_size_limit(self, monkeypatch):
        monkeypatch.setenv("SUPCOMP_INDEPENDENCE_LIMIT", "2")
        with pytest.raises(SizeError):
            check_independence(PAIRS, [Band.full(SPACE)] * 3)
