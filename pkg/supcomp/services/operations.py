"""The kernel operations the property suites exercise, gathered in one place.

Suites call kernel operations only through an ``Operations`` instance so the
mutation harness can swap single entries for corrupted versions and check
that some property notices.
"""
from dataclasses import dataclass
from typing import Callable

from supcomp.kernel import arithmetic, bands, expectation, monotone, sequences, stochastic, vectors


@dataclass(frozen=True)
class Operations:
    meet: Callable = vectors.meet
    join: Callable = vectors.join
    add: Callable = vectors.add
    scale: Callable = vectors.scale
    pos_part: Callable = vectors.pos_part
    neg_part: Callable = vectors.neg_part
    riesz_decompose: Callable = arithmetic.riesz_decompose
    truncate: Callable = arithmetic.truncate
    multiply: Callable = arithmetic.multiply
    mul_infinity_band: Callable = arithmetic.mul_infinity_band
    exp_neg: Callable = arithmetic.exp_neg
    exp_pos: Callable = arithmetic.exp_pos
    project: Callable = bands.project
    infinity_of: Callable = bands.infinity_of
    split_parts: Callable = bands.split_parts
    infinite_band_by_truncation: Callable = bands.infinite_band_by_truncation
    extend_map: Callable = monotone.extend_map
    series_sum: Callable = sequences.series_sum
    band_residual_limit: Callable = sequences.band_residual_limit
    order_limit: Callable = sequences.order_limit
    uo_limit: Callable = sequences.uo_limit
    uo_cauchy: Callable = sequences.uo_cauchy
    limsup_seq: Callable = sequences.limsup_seq
    liminf_seq: Callable = sequences.liminf_seq
    tail_oscillation: Callable = sequences.tail_oscillation
    limsup_proj: Callable = sequences.limsup_proj
    liminf_proj: Callable = sequences.liminf_proj
    apply: Callable = expectation.apply
    apply_ext: Callable = expectation.apply_ext
    in_range: Callable = expectation.in_range
    commutes: Callable = expectation.commutes
    tp_converges: Callable = expectation.tp_converges
    check_independence: Callable = expectation.check_independence
    stop_process: Callable = stochastic.stop_process
    tau_K: Callable = stochastic.tau_K


KERNEL = Operations()
