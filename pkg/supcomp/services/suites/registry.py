"""Property registration and the small helpers every suite uses."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

from supcomp.config import float_tolerance
from supcomp.errors import UsageError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.scalars import INF, Backend, format_scalar
from supcomp.kernel.sequences import ProjSeq, VecSeq
from supcomp.kernel.stochastic import AdaptedProcess, Filtration, Report, StoppingTime
from supcomp.kernel.vectors import AtomicSpace, ExtVec, make_vector
from supcomp.services.model_loader import spec_of_filtration, spec_of_projections, spec_of_sequence

SUITES = (
    "cone-axioms",
    "bands-decomposition",
    "multiplication",
    "convergence",
    "expectation",
    "borel-cantelli",
    "martingales",
)
BOTH = (Backend.RATIONAL, Backend.FLOAT)
RATIONAL_ONLY = (Backend.RATIONAL,)
FLOAT_ONLY = (Backend.FLOAT,)


@dataclass
class Outcome:
    holds: bool
    vacuous: bool = False
    inputs: Dict[str, Any] = field(default_factory=dict)
    left: Any = None
    right: Any = None
    detail: str = ""


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    check: Callable
    backends: tuple = BOTH


_REGISTRY: Dict[str, Dict[str, Property]] = {name: {} for name in SUITES}


def prop(suite: str, name: str, backends: tuple = BOTH):
    """Register ``check(sampler, ops) -> Outcome`` as a property of ``suite``."""
    def register(check):
        _REGISTRY[suite][name] = Property(suite, name, check, backends)
        return check
    return register


def properties(suite: str) -> List[Property]:
    if suite not in _REGISTRY:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES + ('all',))}")
    return list(_REGISTRY[suite].values())


def find(suite: str, name: str) -> Property:
    for p in properties(suite):
        if p.name == name:
            return p
    raise UsageError(f"suite {suite!r} has no property {name!r}")


# -- outcomes -------------------------------------------------------------------

def same(a, b) -> bool:
    if isinstance(a, ExtVec) and isinstance(b, ExtVec):
        return a.space == b.space and a.close_to(b)
    if isinstance(a, (tuple, list)) and isinstance(b, (tuple, list)):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        if a is INF or b is INF:
            return a is b
        return math.isclose(a, b, rel_tol=0.0, abs_tol=float_tolerance())
    return a == b


def compare(left, right, **inputs) -> Outcome:
    return Outcome(same(left, right), inputs=inputs, left=left, right=right)


def check(holds: bool, detail: str = "", **inputs) -> Outcome:
    return Outcome(bool(holds), inputs=inputs, detail=detail)


def vacuous(**inputs) -> Outcome:
    return Outcome(True, vacuous=True, inputs=inputs)


def pointwise(space: AtomicSpace, fn, *vectors) -> ExtVec:
    """Coordinatewise oracle: apply a scalar function atom by atom."""
    return make_vector(space, (fn(*cs) for cs in zip(*(v.coords for v in vectors))))


# -- report encoding ------------------------------------------------------------

def encode(value) -> Any:
    """Kernel objects to JSON-ready values ("p/q" strings, atom lists)."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if value is INF or isinstance(value, (Fraction, float)):
        return format_scalar(value)
    if isinstance(value, ExtVec):
        return value.to_strings()
    if isinstance(value, Band):
        return list(value.atoms)
    if isinstance(value, CondExp):
        return [list(b) for b in value.blocks]
    if isinstance(value, VecSeq):
        return spec_of_sequence(value).model_dump(mode="json")
    if isinstance(value, ProjSeq):
        return spec_of_projections(value).model_dump(mode="json")
    if isinstance(value, Filtration):
        return spec_of_filtration(value).model_dump(mode="json")
    if isinstance(value, AdaptedProcess):
        return {"sequence": encode(value.xs), "filtration": encode(value.filtration)}
    if isinstance(value, StoppingTime):
        return encode(value.ps)
    if isinstance(value, Report):
        summary = value.summary()
        summary["details"] = encode(summary["details"])
        return summary
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return repr(value)
