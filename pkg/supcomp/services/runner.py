"""Running property suites.

Every trial draws its inputs from its own seed, derived from the master seed
and the (suite, property, trial) triple, so a report does not depend on how
properties are scheduled across workers and any counterexample can be
replayed on its own.
"""
import hashlib
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from supcomp.errors import UsageError, describe
from supcomp.kernel.scalars import Backend
from supcomp.models import Counterexample, ModelSpec, PropertyTally, SuiteReport
from supcomp.services.generator import Sampler
from supcomp.services.model_loader import materialize, space_summary
from supcomp.services.mutations import get_mutation, operations_for
from supcomp.services.suites import SUITES, Outcome, encode, find, properties

logger = logging.getLogger(__name__)

MAX_COUNTEREXAMPLES = 3


def trial_seed(seed: int, suite: str, name: str, trial: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{suite}:{name}:{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def parse_backend(name: str) -> Backend:
    try:
        return Backend(name)
    except ValueError:
        raise UsageError(f"unknown backend {name!r}; expected 'rational' or 'float'")


def _split(property_id: str) -> Tuple[str, str]:
    suite, sep, name = property_id.partition("/")
    if not sep:
        raise UsageError(f"property {property_id!r} must be written as suite/name")
    return suite, name


def _evaluate(prop, sampler: Sampler, ops) -> Outcome:
    try:
        return prop.check(sampler, ops)
    except Exception as e:
        # an identity that raises counts as a failed trial
        return Outcome(False, detail=f"{type(e).__name__}: {describe(e)}")


def run_trial(suite: str, name: str, seed: int, backend: Backend, mutation: Optional[str] = None,
              model: Optional[ModelSpec] = None) -> Tuple[Outcome, dict]:
    """One trial; returns the outcome and the space it ran on."""
    prop = find(suite, name)
    ops = operations_for(mutation)
    sampler = Sampler(random.Random(seed), backend, model=materialize(model, backend) if model else None)
    outcome = _evaluate(prop, sampler, ops)
    space = space_summary(sampler.last_space) if sampler.last_space is not None else {}
    return outcome, space


def run_property(suite: str, name: str, trials: int, seed: int, backend: Backend,
                 mutation: Optional[str] = None,
                 model: Optional[ModelSpec] = None) -> Tuple[PropertyTally, List[Counterexample]]:
    prop = find(suite, name)
    ops = operations_for(mutation)
    materialized = materialize(model, backend) if model else None
    tally = PropertyTally(name=f"{suite}/{name}")
    found: List[Counterexample] = []
    for trial in range(trials):
        tseed = trial_seed(seed, suite, name, trial)
        sampler = Sampler(random.Random(tseed), backend, model=materialized)
        outcome = _evaluate(prop, sampler, ops)
        if not outcome.holds:
            tally.failed += 1
            if len(found) < MAX_COUNTEREXAMPLES:
                logger.warning("%s/%s failed on trial %d (seed %d)", suite, name, trial, tseed)
                found.append(Counterexample(
                    property=tally.name,
                    trial=trial,
                    trial_seed=tseed,
                    model=space_summary(sampler.last_space) if sampler.last_space is not None else {},
                    inputs=encode(outcome.inputs),
                    left=encode(outcome.left),
                    right=encode(outcome.right),
                    detail=outcome.detail,
                ))
        elif outcome.vacuous:
            tally.vacuous += 1
        else:
            tally.passed += 1
    logger.info("%s: %d passed, %d vacuous, %d failed", tally.name, tally.passed, tally.vacuous, tally.failed)
    return tally, found


def _run_job(args):
    return run_property(*args)


def run_suite(name: str, trials: int, seed: int, backend: str = "rational", mutation: Optional[str] = None,
              model: Optional[ModelSpec] = None, model_name: Optional[str] = None,
              workers: int = 1) -> SuiteReport:
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    if trials < 0:
        raise UsageError("trials must be nonnegative")
    if workers < 1:
        raise UsageError("workers must be at least 1")
    chosen = parse_backend(backend)
    if mutation is not None:
        get_mutation(mutation)
    report = SuiteReport(
        suite=name, trials=trials, seed=seed, backend=chosen.value, mutation=mutation, model=model_name,
    )
    if trials == 0:
        return report

    suites = SUITES if name == "all" else (name,)
    jobs = [
        (suite, prop.name, trials, seed, chosen, mutation, model)
        for suite in suites
        for prop in properties(suite)
        if chosen in prop.backends
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(job) for job in jobs]

    for tally, found in results:
        report.properties.append(tally)
        report.counterexamples.extend(found)
    report.passed = report.failures == 0
    logger.info("suite %s: %d properties, %d failures", name, len(report.properties), report.failures)
    return report


def replay(property_id: str, seed: int, backend: str = "rational", mutation: Optional[str] = None,
           model: Optional[ModelSpec] = None) -> Tuple[Outcome, dict]:
    """Rerun one trial from the trial seed stored in a counterexample."""
    suite, name = _split(property_id)
    chosen = parse_backend(backend)
    if mutation is not None:
        get_mutation(mutation)
    return run_trial(suite, name, seed, chosen, mutation, model)
