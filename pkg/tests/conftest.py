from pathlib import Path

import pytest

from supcomp.kernel.scalars import Backend
from supcomp.kernel.vectors import AtomicSpace

MODELS = Path(__file__).resolve().parent.parent / "seed" / "models"


@pytest.fixture
def space2():
    return AtomicSpace.uniform(2)


@pytest.fixture
def space3():
    return AtomicSpace.uniform(3)


@pytest.fixture
def space4():
    return AtomicSpace.uniform(4)


@pytest.fixture
def float_space1():
    return AtomicSpace.uniform(1, Backend.FLOAT)


@pytest.fixture
def float_space2():
    return AtomicSpace.uniform(2, Backend.FLOAT)


@pytest.fixture
def coin_flips_path():
    return MODELS / "coin_flips.json"


@pytest.fixture
def minimal_path():
    return MODELS / "minimal.json"


@pytest.fixture
def ledger_url(tmp_path, monkeypatch):
    url = f"sqlite:///{tmp_path / 'runs.db'}"
    monkeypatch.setenv("SUPCOMP_DATABASE_URL", url)
    return url
