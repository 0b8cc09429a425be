"""Martingales, stopping times and the convergence checks built on them."""
from supcomp.errors import ContractError
from supcomp.kernel.bands import Band
from supcomp.kernel.stochastic import (
    AdaptedProcess,
    band_family_convergence_check,
    increment_sup,
    is_martingale,
    is_submartingale,
    levy_martingale,
    proposition_P2_check,
    stopped_bound_check,
    theorem_T2_check,
    theorem_T3_check,
)
from supcomp.services.suites.registry import check, compare, prop, vacuous

SUITE = "martingales"


def _last(proc: AdaptedProcess) -> int:
    return proc.horizon + proc.xs.period + 2


def _stopped_terms(proc, tau, last):
    """z_n = Σ_{j<n} (P_j - P_{j-1}) x_j + P_{n-1}^d x_n, term by term."""
    terms = []
    for n in range(1, last + 1):
        z = proc.space.zero()
        for j in range(1, n):
            z = z + (tau.at(j) & ~tau.at(j - 1)).project(proc.term(j))
        terms.append(z + (~tau.at(n - 1)).project(proc.term(n)))
    return terms


def _process(sample, filtration):
    if sample.rng.random() < 0.5:
        return sample.martingale(filtration)
    return sample.submartingale(filtration)


@prop(SUITE, "doob-martingale")
def doob_martingale_property(sample, ops):
    """x_n = T_n y satisfies T_n x_{n+1} = x_n."""
    space = sample.space()
    f = sample.filtration(space)
    proc = sample.martingale(f)
    last = _last(proc)
    left = [ops.apply(f.at(n), proc.term(n + 1)) for n in range(1, last)]
    right = [proc.term(n) for n in range(1, last)]
    outcome = compare(left, right, filtration=f, process=proc)
    outcome.holds = outcome.holds and is_martingale(proc)
    return outcome


@prop(SUITE, "submartingale")
def submartingale_property(sample, ops):
    space = sample.space()
    f = sample.filtration(space)
    proc = sample.submartingale(f)
    last = _last(proc)
    holds = is_submartingale(proc)
    for n in range(1, last):
        holds = holds and proc.term(n).dominated_by(ops.apply(f.at(n), proc.term(n + 1)))
    return check(holds, filtration=f, process=proc)


@prop(SUITE, "filtration-tower")
def filtration_tower(sample, ops):
    """T_i T_j = T_j T_i = T_i for i <= j, with T_0 the global expectation."""
    space = sample.space()
    f = sample.filtration(space)
    x = sample.lat(space)
    top = f.prefix_length + 1
    left, right = [], []
    for i in range(0, top + 1):
        coarse = ops.apply(f.at(i), x)
        for j in range(i, top + 1):
            left.append((ops.apply(f.at(i), ops.apply(f.at(j), x)), ops.apply(f.at(j), coarse)))
            right.append((coarse, coarse))
    return compare(left, right, filtration=f, x=x)


@prop(SUITE, "optional-stopping")
def optional_stopping(sample, ops):
    """Stopping a (sub)martingale at a bounded stopping time keeps the property."""
    space = sample.space()
    f = sample.filtration(space)
    proc = _process(sample, f)
    tau = sample.bounded_stopping_time(f)
    stopped = ops.stop_process(proc, tau)
    last = max(_last(proc), stopped.horizon + 2)
    outcome = compare(stopped.terms(last), _stopped_terms(proc, tau, last), process=proc, tau=tau)
    if outcome.holds:
        z = AdaptedProcess(stopped, f)
        outcome.holds = is_martingale(z) if is_martingale(proc) else is_submartingale(z)
    return outcome


@prop(SUITE, "stopped-at-first-passage")
def stopped_at_first_passage(sample, ops):
    """z_n for τ^K matches the direct sum and stays adapted."""
    space = sample.space()
    f = sample.filtration(space)
    proc = _process(sample, f)
    level = sample.positive(limit=8)
    tau = ops.tau_K(proc, level)
    stopped = ops.stop_process(proc, tau)
    last = max(_last(proc), stopped.horizon + 2)
    outcome = compare(stopped.terms(last), _stopped_terms(proc, tau, last), process=proc, level=level)
    if outcome.holds:
        outcome.holds = is_submartingale(AdaptedProcess(stopped, f))
    return outcome


@prop(SUITE, "first-passage-bands")
def first_passage_bands(sample, ops):
    """τ^K is the first n with x_n > K, atom by atom."""
    space = sample.space()
    f = sample.filtration(space)
    proc = _process(sample, f)
    level = space.scalar(sample.positive(limit=8))
    tau = ops.tau_K(proc, level)
    last = _last(proc)
    first = [None] * space.atom_count
    left, right = [], []
    for n in range(1, last + 1):
        term = proc.term(n)
        for atom in range(space.atom_count):
            if first[atom] is None and term[atom] > level:
                first[atom] = n
        left.append(tau.at(n))
        right.append(Band(space, tuple(k is not None and k <= n for k in first)))
    return check(left == right, process=proc, level=level, tau=tau)


@prop(SUITE, "stopped-submartingale-bound")
def stopped_submartingale_bound(sample, ops):
    """T|z_n| <= 2K e + 2 T V - T x_1 at every stage."""
    space = sample.space()
    f = sample.filtration(space)
    proc = _process(sample, f)
    level = sample.positive(limit=8)
    report = stopped_bound_check(proc, level)
    return check(report.holds, process=proc, level=level, report=report)


@prop(SUITE, "martingale-convergence-band")
def martingale_convergence_band(sample, ops):
    """The band where x_n fails to converge is the infinite band of sup x_n^+."""
    space = sample.space()
    f = sample.filtration(space)
    if sample.rng.random() < 0.5:
        proc = sample.martingale(f)
    else:
        proc = levy_martingale(f, sample.adapted_projseq(f))
    report = theorem_T2_check(proc, f.base)
    return check(report.holds, process=proc, report=report)


@prop(SUITE, "convergence-band-needs-martingale")
def convergence_band_needs_martingale(sample, ops):
    space = sample.space()
    f = sample.filtration(space)
    proc = sample.submartingale(f)
    if is_martingale(proc):
        return vacuous(process=proc)
    try:
        theorem_T2_check(proc, f.base)
    except ContractError:
        return check(True, process=proc)
    return check(False, detail="non-martingale accepted", process=proc)


@prop(SUITE, "levy-martingale")
def levy_martingale_property(sample, ops):
    """Σ_{k<=n} (P_k e - T_{k-1} P_k e) is a martingale with increments at most e."""
    space = sample.space()
    f = sample.filtration(space)
    ps = sample.adapted_projseq(f)
    proc = levy_martingale(f, ps)
    holds = is_martingale(proc) and increment_sup(proc.xs).dominated_by(space.unit())
    return check(holds, filtration=f, ps=ps, process=proc)


@prop(SUITE, "compensated-divergence")
def compensated_divergence(sample, ops):
    """Σ P_n e and Σ T_{n-1} P_n e diverge on the same band."""
    space = sample.space()
    f = sample.filtration(space)
    ps = sample.adapted_projseq(f)
    report = theorem_T3_check(f, ps)
    return check(report.holds, filtration=f, ps=ps, report=report)


@prop(SUITE, "summable-deviations-converge")
def summable_deviations_converge(sample, ops):
    """Summable conditional tail probabilities or moments force uo-convergence."""
    space = sample.space()
    t = sample.condexp(space)
    xs = sample.vecseq(space)
    limit = ops.order_limit(xs)
    target = limit if limit is not None and sample.rng.random() < 0.7 else sample.lat(space)
    report = proposition_P2_check(t, xs, target, r=sample.rng.choice((1, 2)))
    if report.vacuous:
        return vacuous(partition=t, xs=xs, target=target)
    return check(report.holds, partition=t, xs=xs, target=target, report=report)


@prop(SUITE, "band-family-convergence")
def band_family_convergence(sample, ops):
    """If every P_γ x_n converges, so does P x_n for P = sup P_γ."""
    space = sample.space()
    xs = sample.vecseq(space)
    bands = [sample.band(space) for _ in range(sample.rng.randint(1, 5))]
    report = band_family_convergence_check(xs, bands)
    holds = report.holds and report.bands["union"] <= report.bands["converging"]
    return check(holds, xs=xs, bands=bands, report=report)
