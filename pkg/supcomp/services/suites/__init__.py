"""Property suites. Importing this package registers every property."""
from supcomp.services.suites import (  # noqa: F401
    bands_decomposition,
    borel_cantelli,
    cone_axioms,
    convergence,
    expectation,
    martingales,
    multiplication,
)
from supcomp.services.suites.registry import SUITES, Outcome, Property, encode, find, properties

__all__ = ["SUITES", "Outcome", "Property", "encode", "find", "properties"]
