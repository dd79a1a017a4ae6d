from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from braids import braid_pd, random_braid_pds  # noqa: E402

from bnsplit import parse_pd  # noqa: E402

DATA = HERE / "data"
NAMED = ("unknot", "kink", "hopf", "trefoil", "figure8")


def load(name: str):
    return parse_pd((DATA / f"{name}.pd").read_text(), name=name)


@lru_cache(maxsize=None)
def suite() -> tuple:
    """The five named diagrams plus 25 random braid closures with n <= 6."""
    return tuple(load(n) for n in NAMED) + tuple(random_braid_pds(25, max_crossings=6))


def wide_diagram():
    """Granny knot as a 6-crossing braid; one resolution has 5 circles."""
    return braid_pd([1, 1, 1, 2, 2, 2], 3, name="granny")


@pytest.fixture(params=NAMED)
def named(request):
    return load(request.param)


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
