"""Exact finite-model kernel for the sup-completion of a vector lattice."""
from supcomp.kernel.arithmetic import (
    exp_neg,
    exp_pos,
    mul_infinity_band,
    multiply,
    power,
    riesz_decompose,
    truncate,
)
from supcomp.kernel.bands import (
    Band,
    infinite_band_by_truncation,
    infinity_of,
    project,
    split_parts,
    support,
    truncation_band_closed_form,
)
from supcomp.kernel.expectation import CondExp, check_independence, tp_converges
from supcomp.kernel.monotone import MonotoneMap, extend_map, truncation_limit
from supcomp.kernel.scalars import INF, Backend, PlusInfinity
from supcomp.kernel.sequences import (
    Constant,
    Geometric,
    Periodic,
    ProjSeq,
    VecSeq,
    Zero,
    band_residual_limit,
    limsup_proj,
    limsup_seq,
    liminf_proj,
    liminf_seq,
    order_limit,
    series_sum,
    tail_oscillation,
    uo_cauchy,
    uo_limit,
)
from supcomp.kernel.vectors import AtomicSpace, ExtVec, LatVec, add, join, meet, neg_part, pos_part, scale
