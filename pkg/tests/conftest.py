from __future__ import annotations

import sys
from pathlib import Path

import pytest

from prioes.cli.parser import parse
from prioes.core import EventStructure, validate

ROOT = Path(__file__).resolve().parent.parent
FIGURES = ROOT / "corpus" / "figures"
GOLDEN = ROOT / "corpus" / "golden"

sys.path.insert(0, str(Path(__file__).resolve().parent))


def load(name: str) -> EventStructure:
    return validate(parse((FIGURES / f"{name}.es").read_text()).raw)


@pytest.fixture
def fig():
    return load
