"""Reading, writing and materializing model files.

A model file is UTF-8 JSON matching ``ModelSpec``. Rationals are "p/q"
strings and +inf is "inf". ``materialize`` turns a validated spec into kernel
objects for a chosen backend.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from supcomp.errors import ModelValidationError, SupCompError, UsageError
from supcomp.kernel.bands import Band
from supcomp.kernel.expectation import CondExp
from supcomp.kernel.scalars import Backend, format_scalar
from supcomp.kernel.sequences import Constant, Geometric, Periodic, ProjSeq, VecSeq, Zero
from supcomp.kernel.stochastic import AdaptedProcess, Filtration
from supcomp.kernel.vectors import AtomicSpace, ExtVec
from supcomp.models import ChainSpec, ModelSpec, ProjSeqSpec, TailSpec, VecSeqSpec

logger = logging.getLogger(__name__)


def _field_of(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "model"


def parse_model(data: dict) -> ModelSpec:
    try:
        return ModelSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ModelValidationError(_field_of(e), first["msg"])


def load_model(path: Union[str, Path]) -> ModelSpec:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"model file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ModelValidationError("file", f"invalid JSON at line {e.lineno}: {e.msg}")
    except UnicodeDecodeError:
        raise ModelValidationError("file", f"{path} is not UTF-8 text")
    except OSError as e:
        raise UsageError(f"cannot read model file {path}: {e.strerror or e}")
    spec = parse_model(data)
    materialize(spec)
    logger.info("loaded model %s with %d atoms", path, len(spec.atoms))
    return spec


def dump_model(spec: ModelSpec) -> str:
    return json.dumps(spec.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_model(spec: ModelSpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dump_model(spec))
    except OSError as e:
        raise UsageError(f"cannot write model file {path}: {e.strerror or e}")
    return path


# -- materialization ----------------------------------------------------------

@dataclass
class Materialized:
    space: AtomicSpace
    filtrations: Dict[str, Filtration] = field(default_factory=dict)
    sequences: Dict[str, VecSeq] = field(default_factory=dict)
    projections: Dict[str, ProjSeq] = field(default_factory=dict)
    processes: Dict[str, AdaptedProcess] = field(default_factory=dict)
    vectors: Dict[str, ExtVec] = field(default_factory=dict)

    def condexps(self) -> list:
        """Every conditional expectation the model mentions, deduplicated."""
        found = []
        for chain in self.filtrations.values():
            for t in (chain.base,) + chain.prefix + (chain.tail,):
                if t not in found:
                    found.append(t)
        return found


def _tail(space: AtomicSpace, spec: TailSpec, where: str):
    vectors = [space.vector(v) for v in spec.vectors]
    if spec.kind == "zero":
        return Zero()
    if spec.kind == "geometric":
        if len(vectors) != 1 or spec.ratio is None:
            raise ModelValidationError(where, "a geometric tail needs one vector and a ratio")
        return Geometric(vectors[0], spec.ratio)
    if not vectors:
        raise ModelValidationError(where, f"a {spec.kind} tail needs at least one vector")
    if spec.kind == "constant":
        if len(vectors) != 1:
            raise ModelValidationError(where, "a constant tail has exactly one vector")
        return Constant(vectors[0])
    return Periodic(tuple(vectors))


def _sequence(space: AtomicSpace, spec: VecSeqSpec, where: str) -> VecSeq:
    prefix = tuple(space.vector(v) for v in spec.prefix)
    return VecSeq(space, prefix, _tail(space, spec.tail, f"{where}.tail"))


def _bands(space: AtomicSpace, spec: ProjSeqSpec) -> ProjSeq:
    return ProjSeq(
        space,
        tuple(Band.of_atoms(space, atoms) for atoms in spec.prefix),
        tuple(Band.of_atoms(space, atoms) for atoms in spec.period),
    )


def _filtration(space: AtomicSpace, spec: ChainSpec) -> Filtration:
    return Filtration(
        space,
        tuple(CondExp(space, blocks) for blocks in spec.prefix),
        CondExp(space, spec.tail),
        CondExp(space, spec.base),
    )


def _build(where: str, factory):
    try:
        return factory()
    except ModelValidationError:
        raise
    except SupCompError as e:
        raise ModelValidationError(where, e.detail)


def materialize(spec: ModelSpec, backend: Backend = Backend.RATIONAL) -> Materialized:
    if len(spec.weights) != len(spec.atoms):
        raise ModelValidationError("weights", "one weight per atom is required")
    space = AtomicSpace(tuple(spec.weights), Backend.RATIONAL, tuple(spec.atoms)).as_backend(backend)
    model = Materialized(space)
    for name, chain in spec.partitions.items():
        model.filtrations[name] = _build(f"partitions.{name}", lambda: _filtration(space, chain))
    for name, seq in spec.sequences.items():
        model.sequences[name] = _build(f"sequences.{name}", lambda: _sequence(space, seq, f"sequences.{name}"))
    for name, proj in spec.projections.items():
        model.projections[name] = _build(f"projections.{name}", lambda: _bands(space, proj))
    for name, proc in spec.processes.items():
        where = f"processes.{name}"
        if proc.sequence not in model.sequences:
            raise ModelValidationError(f"{where}.sequence", f"unknown sequence {proc.sequence!r}")
        if proc.filtration not in model.filtrations:
            raise ModelValidationError(f"{where}.filtration", f"unknown filtration {proc.filtration!r}")
        model.processes[name] = _build(
            where, lambda: AdaptedProcess(model.sequences[proc.sequence], model.filtrations[proc.filtration])
        )
    for name, values in spec.vectors.items():
        model.vectors[name] = _build(f"vectors.{name}", lambda: space.vector(values))
    return model


# -- kernel objects back to specs ---------------------------------------------

def _strings(vector) -> list:
    return [format_scalar(c) for c in vector.coords]


def space_summary(space: AtomicSpace) -> dict:
    return {
        "atoms": list(space.names) if space.names else [f"w{i}" for i in range(space.atom_count)],
        "weights": [format_scalar(w) for w in space.weights],
    }


def spec_of_sequence(xs: VecSeq) -> VecSeqSpec:
    tail = xs.tail
    if isinstance(tail, Zero):
        tail_spec = TailSpec(kind="zero")
    elif isinstance(tail, Geometric):
        tail_spec = TailSpec(kind="geometric", vectors=[_strings(tail.value)], ratio=format_scalar(tail.ratio))
    else:
        tail_spec = TailSpec(kind=tail.kind, vectors=[_strings(v) for v in tail.vectors()])
    return VecSeqSpec(prefix=[_strings(v) for v in xs.prefix], tail=tail_spec)


def spec_of_projections(ps: ProjSeq) -> ProjSeqSpec:
    return ProjSeqSpec(prefix=[list(b.atoms) for b in ps.prefix], period=[list(b.atoms) for b in ps.period])


def spec_of_filtration(chain: Filtration) -> ChainSpec:
    return ChainSpec(
        base=[list(b) for b in chain.base.blocks],
        prefix=[[list(b) for b in t.blocks] for t in chain.prefix],
        tail=[list(b) for b in chain.tail.blocks],
    )
