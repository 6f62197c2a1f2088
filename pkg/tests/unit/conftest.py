from __future__ import annotations

from pathlib import Path

import pytest

from qualtime_tools.order import PartialOrder, make_partial_order

GOLDEN = Path(__file__).parent.parent / "golden"


@pytest.fixture
def golden() -> Path:
    """Directory holding the sample instance files."""
    return GOLDEN


@pytest.fixture
def chain3() -> PartialOrder:
    return make_partial_order("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def antichain3() -> PartialOrder:
    return make_partial_order("abc")
