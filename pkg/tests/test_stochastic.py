from fractions import Fraction

import pytest

from supcomp.errors import ContractError, SizeError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.scalars import format_scalar
from supcomp.kernel.sequences import Constant, Geometric, Periodic, ProjSeq, VecSeq, Zero
from supcomp.kernel.stochastic import (
    AdaptedProcess,
    Filtration,
    StoppingTime,
    bcl1,
    bcl2,
    bcl2_product_harness,
    doob_martingale,
    first_passage,
    increment_sup,
    is_martingale,
    is_submartingale,
    levy_martingale,
    proposition_P2_check,
    stop_process,
    stopped_bound_check,
    stopping_time_from_sequence,
    tau_K,
    theorem_T2_check,
    theorem_T3_check,
)
from supcomp.kernel.vectors import AtomicSpace

HALF = Fraction(1, 2)
SPACE = AtomicSpace.uniform(2)
SPACE4 = AtomicSpace.uniform(4)
PAIRS = CondExp(SPACE4, ((0, 1), (2, 3)))


def vec(*values):
    return SPACE.vector(values)


def band(*atoms):
    return Band.of_atoms(SPACE, atoms)


@pytest.fixture
def identity():
    return Filtration.constant(CondExp.identity(SPACE))


@pytest.fixture
def refining():
    """T_0 trivial, T_1 pairs, T_n the identity from n = 2 on."""
    return Filtration(SPACE4, (PAIRS,), CondExp.identity(SPACE4), CondExp.trivial(SPACE4))


@pytest.fixture
def passing(identity):
    return AdaptedProcess(VecSeq(SPACE, (vec(1, 5), vec(3, 1)), Constant(vec(3, 1))), identity)


class TestFiltrations:
    def test_index_zero_is_the_global_expectation(self, refining):
        assert refining.at(0) == CondExp.trivial(SPACE4)
        assert refining.at(1) == PAIRS
        assert refining.at(7) == CondExp.identity(SPACE4)

    def test_partitions_must_refine(self):
        with pytest.raises(ContractError):
            Filtration(SPACE4, (CondExp.identity(SPACE4),), PAIRS, CondExp.trivial(SPACE4))

    def test_processes_must_be_adapted(self):
        trivial = Filtration.constant(CondExp.trivial(SPACE))
        with pytest.raises(ContractError):
            AdaptedProcess(VecSeq(SPACE, (), Constant(vec(1, 2))), trivial)


class TestMartingales:
    def test_doob_martingale(self, refining):
        proc = doob_martingale(refining, SPACE4.vector([1, 3, 2, 6]))
        assert proc.term(1) == SPACE4.vector([2, 2, 4, 4])
        assert proc.term(5) == SPACE4.vector([1, 3, 2, 6])
        assert is_martingale(proc)

    def test_increasing_process_is_a_submartingale(self, identity):
        proc = AdaptedProcess(VecSeq(SPACE, (vec(0, 0),), Constant(vec(1, 1))), identity)
        assert is_submartingale(proc)
        assert not is_martingale(proc)

    def test_levy_martingale(self, refining):
        ps = ProjSeq(SPACE4, (Band.of_atoms(SPACE4, [0, 1]),), (Band.of_atoms(SPACE4, [0]),))
        proc = levy_martingale(refining, ps)
        assert proc.term(1) == SPACE4.vector([HALF, HALF, -HALF, -HALF])
        assert proc.term(2) == SPACE4.vector([1, 0, -HALF, -HALF])
        assert is_martingale(proc)
        assert increment_sup(proc.xs) <= SPACE4.unit()

    def test_increment_sup(self):
        xs = VecSeq(SPACE, (vec(0, 0), vec(0, 0)), Constant(vec(2, -1)))
        assert increment_sup(xs) == vec(2, 1)
        assert increment_sup(xs, positive=True) == vec(2, 0)


class TestStoppingTimes:
    def test_first_passage(self, passing):
        passages, never = first_passage(passing, 2)
        assert passages[0] == band(1)
        assert passages[1] == band(0)
        assert never.is_empty()

    def test_tau_k(self, passing):
        tau = tau_K(passing, 2)
        assert tau.at(0).is_empty()
        assert tau.at(1) == band(1)
        assert tau.at(2) == Band.full(SPACE)
        assert tau.is_bounded()

    def test_must_increase(self, identity):
        with pytest.raises(ContractError):
            StoppingTime(ProjSeq(SPACE, (Band.full(SPACE),), (Band.empty(SPACE),)), identity)

    def test_must_be_adapted(self):
        trivial = Filtration.constant(CondExp.trivial(SPACE))
        with pytest.raises(ContractError):
            StoppingTime(ProjSeq(SPACE, (), (band(0),)), trivial)

    def test_from_increasing_sequence(self, identity):
        proc = AdaptedProcess(VecSeq(SPACE, (vec(1, 0),), Constant(vec(1, 1))), identity)
        tau = stopping_time_from_sequence(proc)
        assert tau.at(1) == band(0)
        assert tau.final.is_full()

    def test_truncation(self, passing, identity):
        tau = StoppingTime(ProjSeq(SPACE, (band(1),), (band(1),)), identity)
        assert not tau.is_bounded()
        assert tau.truncated(2).at(2).is_full()


class TestStoppedProcess:
    def test_stopping_at_once_freezes_the_first_term(self, passing, identity):
        tau = StoppingTime(ProjSeq(SPACE, (), (Band.full(SPACE),)), identity)
        assert stop_process(passing, tau).terms(4) == [vec(1, 5)] * 4

    def test_stopping_at_two(self, passing, identity):
        tau = StoppingTime(ProjSeq(SPACE, (Band.empty(SPACE),), (Band.full(SPACE),)), identity)
        assert stop_process(passing, tau).terms(4) == [vec(1, 5), vec(3, 1), vec(3, 1), vec(3, 1)]

    def test_stopped_at_first_passage(self, passing):
        stopped = stop_process(passing, tau_K(passing, 2))
        assert stopped.terms(3) == [vec(1, 5), vec(3, 5), vec(3, 5)]

    def test_stage_bound(self, identity):
        proc = AdaptedProcess(VecSeq(SPACE, (vec(0, 0),), Constant(vec(1, 1))), identity)
        assert stopped_bound_check(proc, HALF).holds

    def test_stage_bound_needs_a_submartingale(self, identity):
        proc = AdaptedProcess(VecSeq(SPACE, (vec(1, 1),), Constant(vec(0, 0))), identity)
        with pytest.raises(ContractError):
            stopped_bound_check(proc, 1)


class TestBorelCantelli:
    def test_first_lemma_with_a_finite_series(self):
        t = CondExp.identity(SPACE)
        xs = VecSeq(SPACE, (vec(1, 1),), Geometric(vec(1, 1), HALF))
        report = bcl1(t, xs, vec(1, 1))
        assert report.holds and not report.vacuous

    def test_first_lemma_off_the_divergence_band(self):
        t = CondExp.identity(SPACE)
        report = bcl1(t, VecSeq(SPACE, (), Constant(vec(0, 1))), vec(1, 1))
        assert report.vacuous and report.holds
        assert report.bands["infinite"] == band(1)

    def test_first_lemma_needs_a_bound(self):
        with pytest.raises(ContractError):
            bcl1(CondExp.identity(SPACE), VecSeq(SPACE, (vec(2, 0),), Zero()), vec(1, 1))

    def test_second_lemma(self):
        ps = ProjSeq(SPACE, (band(0),), (band(1),))
        report = bcl2(CondExp.identity(SPACE), ps)
        assert report.holds
        assert report.bands["series"] == band(1)

    def test_repeated_band_must_be_a_block_union(self):
        with pytest.raises(ContractError):
            bcl2(CondExp.trivial(SPACE), ProjSeq(SPACE, (), (band(0),)))

    def test_once_used_bands_must_be_independent(self):
        space = AtomicSpace.uniform(3)
        ps = ProjSeq(space, (Band.of_atoms(space, [0, 1]), Band.of_atoms(space, [1, 2])))
        with pytest.raises(ContractError):
            bcl2(CondExp.trivial(space), ps)

    def test_product_harness(self):
        report = bcl2_product_harness(16, [HALF] * 16)
        assert report.holds
        assert report.details["product"] == "1/65536"

    @pytest.mark.parametrize("m", range(2, 17))
    def test_harness_for_every_size(self, m):
        probs = [(Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))[k % 3] for k in range(m)]
        expected = Fraction(1)
        for p in probs:
            expected *= 1 - p
        report = bcl2_product_harness(m, probs)
        assert report.holds
        assert report.details["product"] == format_scalar(expected)
        assert report.details["worst_margin"] <= 1e-12

    def test_certain_events(self):
        report = bcl2_product_harness(3, [1, 1, 1])
        assert report.holds
        assert report.details["product"] == "0"

    def test_harness_size_limit(self, monkeypatch):
        monkeypatch.setenv("SUPCOMP_HARNESS_LIMIT", "4")
        with pytest.raises(SizeError):
            bcl2_product_harness(5, [HALF] * 5)


class TestConvergenceChecks:
    def test_martingale_convergence_band(self, refining):
        proc = doob_martingale(refining, SPACE4.vector([1, 3, 2, 6]))
        report = theorem_T2_check(proc, refining.base)
        assert report.holds
        assert report.bands["converging"].is_full()

    def test_convergence_band_needs_a_martingale(self, identity):
        proc = AdaptedProcess(VecSeq(SPACE, (vec(0, 0),), Constant(vec(1, 1))), identity)
        with pytest.raises(ContractError):
            theorem_T2_check(proc, identity.base)

    def test_compensated_divergence(self):
        chain = Filtration.constant(CondExp.identity(SPACE), CondExp.trivial(SPACE))
        report = theorem_T3_check(chain, ProjSeq(SPACE, (), (band(0),)))
        assert report.holds
        assert report.bands["direct"] == report.bands["compensated"] == band(0)

    def test_summable_deviations(self):
        t = CondExp.identity(SPACE)
        xs = VecSeq(SPACE, (vec(4, 4),), Geometric(vec(1, 1), HALF))
        report = proposition_P2_check(t, xs, SPACE.zero())
        assert report.holds and not report.vacuous

    def test_oscillating_sequence_is_vacuous(self):
        t = CondExp.identity(SPACE)
        xs = VecSeq(SPACE, (), Periodic((vec(1, 0), vec(0, 1))))
        report = proposition_P2_check(t, xs, SPACE.zero(), r=1)
        assert report.vacuous and report.holds
