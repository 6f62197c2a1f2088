from __future__ import annotations

import typing as t

import pytest

from qualtime_tools.interval import IAInstance
from qualtime_tools.rng import SplitMix64
from qualtime_tools.types import BASIC_RELATIONS
from qualtime_tools.utils import pairs


def random_ia_instance(rng: SplitMix64, n: int) -> IAInstance:
    """Constrain each pair with probability 1/2 by a random nonempty set of basic relations."""
    constraints = {}
    for pair in pairs(n):
        if rng.chance(0.5):
            chosen = [rel for rel in BASIC_RELATIONS if rng.chance(0.3)] or [rng.choice(BASIC_RELATIONS)]
            constraints[pair] = frozenset(chosen)
    return IAInstance(n, constraints)


@pytest.fixture
def ia_corpus() -> t.List[IAInstance]:
    """Two hundred seeded instances over at most three intervals."""
    corpus = []
    for seed in range(200):
        rng = SplitMix64(seed)
        corpus.append(random_ia_instance(rng, rng.randint(1, 3)))
    return corpus
