from typing import Any, Dict, List, Optional
from sqlmodel import SQLModel, Field
from pydantic import field_validator
from datetime import datetime
from fractions import Fraction

TAIL_KINDS = ("zero", "constant", "periodic", "geometric")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{text!r} is not a rational number written as 'p/q'")


def _parse_extended(text: str) -> str:
    if str(text).strip().lower() == "inf":
        return "inf"
    _parse_rational(text)
    return str(text).strip()


class TailSpec(SQLModel):
    kind: str = "zero"  # 'zero' | 'constant' | 'periodic' | 'geometric'
    vectors: List[List[str]] = Field(default_factory=list)
    ratio: Optional[str] = None

    @field_validator("kind")
    @classmethod
    def known_kind(cls, value: str) -> str:
        if value not in TAIL_KINDS:
            raise ValueError(f"unknown tail kind {value!r}; expected one of {', '.join(TAIL_KINDS)}")
        return value

    @field_validator("vectors")
    @classmethod
    def rational_entries(cls, value: List[List[str]]) -> List[List[str]]:
        for row in value:
            for entry in row:
                _parse_rational(entry)
        return value

    @field_validator("ratio")
    @classmethod
    def ratio_in_unit_interval(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not 0 < _parse_rational(value) < 1:
            raise ValueError("a geometric ratio must lie strictly between 0 and 1")
        return value


class VecSeqSpec(SQLModel):
    prefix: List[List[str]] = Field(default_factory=list)
    tail: TailSpec = Field(default_factory=TailSpec)

    @field_validator("prefix")
    @classmethod
    def rational_entries(cls, value: List[List[str]]) -> List[List[str]]:
        for row in value:
            for entry in row:
                _parse_rational(entry)
        return value


class ProjSeqSpec(SQLModel):
    """Bands are written as lists of atom indices."""

    prefix: List[List[int]] = Field(default_factory=list)
    period: List[List[int]] = Field(default_factory=lambda: [[]])


class ChainSpec(SQLModel):
    """A filtration: partitions T_1, ..., T_N, the constant tail and T = T_0."""

    base: List[List[int]]
    prefix: List[List[List[int]]] = Field(default_factory=list)
    tail: List[List[int]]


class ProcessSpec(SQLModel):
    sequence: str
    filtration: str


class ModelSpec(SQLModel):
    atoms: List[str]
    weights: List[str]
    partitions: Dict[str, ChainSpec] = Field(default_factory=dict)
    sequences: Dict[str, VecSeqSpec] = Field(default_factory=dict)
    projections: Dict[str, ProjSeqSpec] = Field(default_factory=dict)
    processes: Dict[str, ProcessSpec] = Field(default_factory=dict)
    vectors: Dict[str, List[str]] = Field(default_factory=dict)

    @field_validator("atoms")
    @classmethod
    def named_atoms(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("a model needs at least one atom")
        if len(set(value)) != len(value):
            raise ValueError("atom names must be unique")
        return value

    @field_validator("weights")
    @classmethod
    def probability_weights(cls, value: List[str]) -> List[str]:
        parsed = [_parse_rational(w) for w in value]
        if any(w <= 0 for w in parsed):
            raise ValueError("every weight must be strictly positive")
        if sum(parsed) != 1:
            raise ValueError(f"weights sum to {sum(parsed)}, not 1")
        return value

    @field_validator("vectors")
    @classmethod
    def extended_entries(cls, value: Dict[str, List[str]]) -> Dict[str, List[str]]:
        for entries in value.values():
            for entry in entries:
                _parse_extended(entry)
        return value


class Counterexample(SQLModel):
    property: str
    trial: int
    trial_seed: int
    model: Dict[str, Any] = Field(default_factory=dict)
    inputs: Dict[str, Any] = Field(default_factory=dict)
    left: Any = None
    right: Any = None
    detail: str = ""


class PropertyTally(SQLModel):
    name: str
    passed: int = 0
    failed: int = 0
    vacuous: int = 0


class SuiteReport(SQLModel):
    suite: str
    trials: int
    seed: int
    backend: str
    mutation: Optional[str] = None
    model: Optional[str] = None
    passed: bool = True
    properties: List[PropertyTally] = Field(default_factory=list)
    counterexamples: List[Counterexample] = Field(default_factory=list)
    timestamp: str = Field(default_factory=lambda: datetime.utcnow().isoformat(timespec="seconds"))

    @property
    def failures(self) -> int:
        return sum(p.failed for p in self.properties)


class SuiteRun(SQLModel, table=True):
    id: Optional[int] = Field(default=None, primary_key=True)
    suite: str = Field(index=True)
    trials: int
    seed: int
    backend: str
    mutation: Optional[str] = None
    passed: bool
    failures: int = Field(default=0)
    report_path: Optional[str] = None
    created_at: datetime = Field(default_factory=datetime.utcnow)
